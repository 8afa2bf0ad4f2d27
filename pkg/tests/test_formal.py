import random

import pytest

from verlinde.affine import StarContext
from verlinde.chain import ChainElement, Truncation, translate_chain, verify_witness
from verlinde.errors import AntiInvarianceError, InsufficientWindowError, NotACycleError
from verlinde.formal import (
    ANTI_INVARIANT,
    WindowVector,
    alcove_distance,
    anti_invariant_delta,
    cluster_boundary,
    default_separation,
    formal_reduce,
    invariant_extension,
    module_action,
    multiply_characters,
    reduce_clusters,
    support_radius,
    top_degree_cycle_check,
    window_vector,
)
from verlinde.fusion import fusion_product, wall_weights


def ctx(name, k):
    return StarContext.of(name, k)


def test_invariant_extension_examples():
    c = ctx("A1", 1)
    v = invariant_extension(c, (0,), Truncation(3))
    assert set(v.entries) == {(0,), (-2,), (4,), (6,), (-6,), (-8,), (10,)}
    assert set(v.entries.values()) == {1}
    assert v.complete and v.tag == "invariant"
    assert set(invariant_extension(c, (0,), Truncation(0)).entries) == {(0,)}
    with pytest.raises(ValueError):
        invariant_extension(c, (2,), Truncation(3))


def test_window_vector_validation():
    c = ctx("A1", 1)
    with pytest.raises(ValueError):
        window_vector(c, Truncation(1), {(10,): 1})
    with pytest.raises(ValueError):
        WindowVector(Truncation(1), {}, tag="sideways")
    assert not window_vector(c, Truncation(1), {(0,): 0})


def test_top_degree_cycle_examples():
    c = ctx("A1", 1)
    W = Truncation(3)
    assert top_degree_cycle_check(c, invariant_extension(c, (1,), W))
    assert not top_degree_cycle_check(c, window_vector(c, W, {(0,): 1}, "invariant"))
    assert top_degree_cycle_check(c, window_vector(c, W, {}, "invariant"))
    with pytest.raises(ValueError):
        top_degree_cycle_check(c, window_vector(c, W, {}, None))


def test_formal_reduce_examples():
    c = ctx("A1", 2)
    W = Truncation(8)
    for lam in [(0,), (1,), (2,)]:
        cls, w = formal_reduce(c, anti_invariant_delta(c, lam, W))
        assert cls == {lam: 1} and verify_witness(c, w)
    cls, _ = formal_reduce(c, window_vector(c, W, {}, ANTI_INVARIANT))
    assert cls == {}


def test_formal_reduce_rejects_bad_input():
    c = ctx("A1", 1)
    W = Truncation(4)
    with pytest.raises(AntiInvarianceError):
        formal_reduce(c, window_vector(c, W, {(0,): 1, (-2,): 1}, ANTI_INVARIANT))
    with pytest.raises(AntiInvarianceError):
        formal_reduce(c, window_vector(c, W, {(-1,): 1}, ANTI_INVARIANT))
    with pytest.raises(AntiInvarianceError):
        formal_reduce(c, invariant_extension(c, (0,), W))
    with pytest.raises(InsufficientWindowError):
        formal_reduce(c, anti_invariant_delta(c, (0,), W), Truncation(6))


def test_module_action_examples():
    c = ctx("A1", 1)
    W = Truncation(6)
    v = window_vector(c, W, {(0,): 1}, None)
    assert module_action(c, {(0,): 1}, v).entries == {(0,): 1}
    moved = module_action(c, {(1,): 1}, v)
    assert moved.entries == {(1,): 1, (-1,): 1}
    assert moved.window.L == W.L - support_radius(c, {(1,): 1})
    with pytest.raises(InsufficientWindowError):
        module_action(c, {(9,): 1}, window_vector(c, Truncation(1), {}, None))


def test_ideal_generator_acts_as_zero():
    c = ctx("A1", 1)
    v = anti_invariant_delta(c, (1,), Truncation(10))
    acted = module_action(c, {(2,): 1}, v)
    cls, w = formal_reduce(c, acted)
    assert cls == {}
    assert w.z and verify_witness(c, w)


@pytest.mark.parametrize("name,k", [("A1", 2), ("A2", 1)])
def test_action_matches_fusion(name, k):
    c = ctx(name, k)
    W = Truncation(12 if c.rank == 1 else 7)
    labels = sorted({lam for lam in _alcove(c)})
    for lam in labels:
        v = anti_invariant_delta(c, lam, W)
        for mu in labels:
            cls, w = formal_reduce(c, module_action(c, {mu: 1}, v))
            assert cls == fusion_product(c, lam, mu)
            assert verify_witness(c, w)


def _alcove(c):
    from verlinde.weights import alcove_weights

    return alcove_weights(c.rs, c.k)


def test_congruent_characters_act_identically():
    c = ctx("A1", 2)
    wall = {wall_weights(c)[0]: 1}
    chi = {(1,): 1, (0,): 2}
    chi2 = dict(chi)
    for nu, n in multiply_characters(c, wall, {(1,): 1, (2,): -1}).items():
        chi2[nu] = chi2.get(nu, 0) + n
    rng = random.Random(0)
    for _ in range(5):
        entries = {}
        for lam in rng.sample([(0,), (1,), (2,), (5,), (6,)], 2):
            for mu, v in anti_invariant_delta(c, lam, Truncation(20), rng.choice([1, -2])).entries.items():
                entries[mu] = entries.get(mu, 0) + v
        v = window_vector(c, Truncation(20), entries, ANTI_INVARIANT)
        a, _ = formal_reduce(c, module_action(c, chi, v))
        b, _ = formal_reduce(c, module_action(c, chi2, v))
        assert a == b


def test_clusters_reduce_locally():
    c = ctx("A1", 1)
    C = default_separation(c)
    assert C == 3
    targets = [(), (0, 1, 0, 1)]
    assert alcove_distance(c, *targets) >= C
    x, ys = cluster_boundary(c, targets, 1, random.Random(3), terms=2)
    assert all(ys)
    results = reduce_clusters(c, x, targets)
    assert len(results) == 2
    for r in results:
        assert not r.canonical and verify_witness(c, r.witness)


def test_clusters_reject_overlap_and_non_cycles():
    c = ctx("A1", 1)
    with pytest.raises(ValueError):
        reduce_clusters(c, ChainElement(), [(), (0,)])
    x = ChainElement({((0,), (0,)): 1})
    moved = translate_chain(c, x, (0, 1, 0, 1))
    # each singleton is a cycle, so this is fine
    reduce_clusters(c, x + moved, [(), (0, 1, 0, 1)])
    c2 = ctx("A2", 1)
    y = ChainElement({((0, 1), (0, 0)): 1})
    with pytest.raises(NotACycleError):
        reduce_clusters(c2, y, [()])
