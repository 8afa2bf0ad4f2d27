import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from verlinde.affine import (
    INFINITE,
    LengthUndetermined,
    StarContext,
    apply_word,
    enumerate_subgroup,
    length_between,
    length_of_weight,
    longest_length,
    reduce_to_alcove,
    skew_symmetrize,
    star_reflect,
)
from verlinde.rootdata import inner_product
from verlinde.weights import alcove_weights


def ctx(name, k):
    return StarContext.of(name, k)


def test_context_level_shift():
    assert ctx("A1", 1).m == 3
    assert ctx("G2", 2).m == 6
    with pytest.raises(ValueError):
        ctx("A1", -1)


def test_star_reflect_examples():
    assert star_reflect(ctx("A1", 1), 0, (3,)) == (1,)
    for k in range(4):
        assert star_reflect(ctx("A1", k), 1, (-1,)) == (-1,)
    assert star_reflect(ctx("A2", 0), 1, (0, 0)) == (-2, 1)


def test_reduce_examples():
    c = ctx("A1", 1)
    assert tuple(reduce_to_alcove(c, (1,))) == (1, (1,), (), 0)
    r = reduce_to_alcove(c, (2,))
    assert r.sign == 0 and r.rep == (2,)
    assert tuple(reduce_to_alcove(c, (3,))) == (-1, (1,), (0,), 1)


def test_length_examples():
    c = ctx("A1", 1)
    assert length_of_weight(c, (0,)) == 0
    assert length_of_weight(c, (3,)) == 1
    # lam + rho = -3 reflects once onto 3, the affine wall of the closed alcove
    assert length_of_weight(c, (-4,)) == 1
    assert length_between(c, (-4,), (2,), cap=3) == 1


def test_length_between_examples():
    c = ctx("A1", 1)
    assert length_between(c, (5,), (5,), cap=0) == 0
    assert length_between(c, (3,), (1,), cap=4) == 1
    assert length_between(c, (0,), (1,), cap=4) is INFINITE
    assert length_between(c, (0,), (6,), cap=1) == LengthUndetermined(1)
    assert length_between(c, (0,), (6,), cap=2) == 2
    with pytest.raises(ValueError):
        length_between(c, (0,), (1,), cap=-1)


def test_enumerate_subgroup_examples():
    assert enumerate_subgroup(ctx("A1", 1), {0, 1}) == [((), 1)]
    assert sorted(enumerate_subgroup(ctx("A1", 1), {0})) == [((), 1), ((1,), -1)]
    assert len(enumerate_subgroup(ctx("A2", 0), {0})) == 6
    with pytest.raises(ValueError):
        enumerate_subgroup(ctx("A1", 1), set())


@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24)])
def test_finite_parabolic_is_weyl_group(name, order):
    c = ctx(name, 1)
    elems = enumerate_subgroup(c, {0})
    assert len(elems) == order
    assert longest_length(c, {0}) == len(c.rs.positive_root_labels)


def test_skew_symmetrize_examples():
    c = ctx("A1", 1)
    assert skew_symmetrize(c, {0, 1}, (5,)) == {(5,): 1}
    assert skew_symmetrize(c, {0}, (0,)) == {(0,): 1, (-2,): -1}
    assert skew_symmetrize(c, {1}, (2,)) == {}


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_involution(name):
    c = ctx(name, 1)
    for lam in itertools.product(range(-4, 5), repeat=c.rank):
        for i in c.generators:
            assert star_reflect(c, i, star_reflect(c, i, lam)) == lam


@pytest.mark.parametrize("name", ["A1", "A2"])
@pytest.mark.parametrize("k", range(4))
def test_rho_shift_consistency(name, k):
    c = ctx(name, k)
    alcove = set(alcove_weights(c.rs, k))
    for lam in itertools.product(range(-3, k + 4), repeat=c.rank):
        red = reduce_to_alcove(c, lam)
        assert (lam in alcove) == (red.sign == 1 and red.word == ())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2", "G2"]), st.integers(0, 3), st.data())
def test_reduction_word_reproduces_rep(name, k, data):
    c = ctx(name, k)
    lam = tuple(data.draw(st.lists(st.integers(-15, 15), min_size=c.rank, max_size=c.rank)))
    red = reduce_to_alcove(c, lam)
    assert apply_word(c, red.word, lam) == red.rep
    x = tuple(v + 1 for v in red.rep)
    assert all(v >= 0 for v in x) and sum(a * v for a, v in zip(c.rs.comarks, x)) <= c.m
    if red.sign:
        assert red.sign == (-1) ** len(red.word)


@pytest.mark.parametrize("name", ["A1", "A2"])
@pytest.mark.parametrize("k", range(3))
def test_length_is_minimal(name, k):
    c = ctx(name, k)
    for lam in itertools.product(range(-6, 7), repeat=c.rank):
        ell = length_of_weight(c, lam)
        assert length_between(c, lam, reduce_to_alcove(c, lam).rep, cap=ell) == ell


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_skew_symmetrize_anti_invariance_and_walls(name):
    c = ctx(name, 1)
    faces = [f for n in range(1, c.rank + 2) for f in itertools.combinations(c.generators, n)]
    for face in faces:
        group = enumerate_subgroup(c, face)
        for lam in itertools.product(range(-3, 4), repeat=c.rank):
            sk = skew_symmetrize(c, face, lam)
            for word, sign in group:
                moved = {}
                for mu, v in sk.items():
                    key = apply_word(c, word, mu)
                    moved[key] = moved.get(key, 0) + sign * v
                assert moved == sk
            fixed = any(apply_word(c, w, lam) == lam for w, s in group if s == -1)
            assert (not sk) == fixed


# -- the centre formulation of the shifted action ----------------------------

def _reflect_linear(rs, beta, x):
    pairing = 2 * inner_product(rs, x, beta) / inner_product(rs, beta, beta)
    return tuple(v - pairing * b for v, b in zip(x, beta))


def _subsystem_rho(rs, simple):
    """Half sum of the positive roots of the root subsystem with the given simple roots."""
    roots = set(rs.positive_root_labels) | {tuple(-v for v in b) for b in rs.positive_root_labels}
    pos = set()
    for coeffs in itertools.product(range(4), repeat=len(simple)):
        if not any(coeffs):
            continue
        beta = tuple(sum(c * s[i] for c, s in zip(coeffs, simple)) for i in range(rs.rank))
        if beta in roots:
            pos.add(beta)
    total = [Fraction(0)] * rs.rank
    for beta in pos:
        total = [t + b for t, b in zip(total, beta)]
    return tuple(t / 2 for t in total)


@pytest.mark.parametrize("name", ["A1", "A2"])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_centre_formulation_agrees(name, k):
    """w(x - m nu_I) + m nu_I with nu_I = (rho - rho_I)/h^vee equals the rho-shifted action."""
    c = ctx(name, k)
    rs = c.rs
    minus_theta = tuple(-v for v in rs.highest_root)
    root_of = {0: minus_theta, **{i: rs.simple_roots[i - 1] for i in range(1, c.rank + 1)}}
    faces = [f for n in range(1, c.rank + 2) for f in itertools.combinations(c.generators, n)]
    for face in faces:
        simple = [root_of[i] for i in c.generators if i not in face]
        rho_I = _subsystem_rho(rs, simple)
        centre = tuple(Fraction(c.m) * (r - ri) / rs.dual_coxeter for r, ri in zip(rs.rho, rho_I))
        for word, _ in enumerate_subgroup(c, face):
            for lam in itertools.product(range(-3, 4), repeat=c.rank):
                x = tuple(Fraction(v + 1) - z for v, z in zip(lam, centre))
                for i in word:
                    x = _reflect_linear(rs, root_of[i], x)
                via_centre = tuple(v + z for v, z in zip(x, centre))
                ours = tuple(v + 1 for v in apply_word(c, word, lam))
                assert via_centre == ours, (face, word, lam)
