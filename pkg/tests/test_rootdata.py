from collections import deque
from fractions import Fraction

import pytest

from verlinde.errors import InvalidTypeError
from verlinde.rootdata import (
    LieType,
    build_root_system,
    coroot_pairing,
    inner_product,
    positive_roots,
    weyl_dimension,
)

# (h^vee, |W|, number of positive roots, highest root labels) in Bourbaki numbering
GOLDEN = {
    "A1": (2, 2, 1, (2,)),
    "A2": (3, 6, 3, (1, 1)),
    "A3": (4, 24, 6, (1, 0, 1)),
    "A4": (5, 120, 10, (1, 0, 0, 1)),
    "B2": (3, 8, 4, (0, 2)),
    "B3": (5, 48, 9, (0, 1, 0)),
    "B4": (7, 384, 16, (0, 1, 0, 0)),
    "C2": (3, 8, 4, (2, 0)),
    "C3": (4, 48, 9, (2, 0, 0)),
    "C4": (5, 384, 16, (2, 0, 0, 0)),
    "D3": (4, 24, 6, (0, 1, 1)),
    "D4": (6, 192, 12, (0, 1, 0, 0)),
    "F4": (9, 1152, 24, (1, 0, 0, 0)),
    "G2": (4, 12, 6, (0, 1)),
    "E6": (12, 51840, 36, (0, 1, 0, 0, 0, 0)),
    "E7": (18, 2903040, 63, (1, 0, 0, 0, 0, 0, 0)),
    "E8": (30, 696729600, 120, (0, 0, 0, 0, 0, 0, 0, 1)),
}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_values(name):
    rs = build_root_system(name)
    hv, order, npos, theta = GOLDEN[name]
    assert rs.dual_coxeter == hv
    assert rs.weyl_order == order
    assert len(positive_roots(rs)) == npos
    assert rs.highest_root == theta


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_structural_invariants(name):
    rs = build_root_system(name)
    l = rs.rank
    A = rs.cartan
    for i in range(l):
        assert A[i][i] == 2
        for j in range(l):
            if i != j:
                assert A[i][j] <= 0
                assert (A[i][j] == 0) == (A[j][i] == 0)
    assert inner_product(rs, rs.highest_root, rs.highest_root) == 2
    assert rs.dual_coxeter == 1 + sum(rs.comarks)
    for i in range(1, l + 1):
        assert coroot_pairing(rs, rs.rho, i) == 1
    F = rs.qform
    assert all(F[i][j] == F[j][i] for i in range(l) for j in range(l))
    # theta^vee expands in simple coroots with the comarks
    assert sum(a * t for a, t in zip(rs.comarks, rs.highest_root)) == 2


def _weyl_order_by_orbit(rs):
    # rho is regular, so its linear orbit has |W| points
    seen = {rs.rho}
    queue = deque([rs.rho])
    while queue:
        x = queue.popleft()
        for i, v in enumerate(x):
            img = tuple(a - v * b for a, b in zip(x, rs.simple_roots[i]))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return len(seen)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"])
def test_weyl_order_matches_orbit_count(name):
    rs = build_root_system(name)
    assert rs.weyl_order == _weyl_order_by_orbit(rs)


def _root_closure(rs):
    """All roots as the Weyl orbit of the simple roots."""
    roots = set(rs.simple_roots)
    queue = deque(roots)
    while queue:
        beta = queue.popleft()
        for i, alpha in enumerate(rs.simple_roots):
            img = tuple(a - beta[i] * b for a, b in zip(beta, alpha))
            if img not in roots:
                roots.add(img)
                queue.append(img)
    return roots


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"])
def test_positive_roots_closed_under_reflections(name):
    rs = build_root_system(name)
    pos = set(positive_roots(rs))
    neg = {tuple(-v for v in b) for b in pos}
    assert _root_closure(rs) == pos | neg
    for beta in pos:
        for i, alpha in enumerate(rs.simple_roots):
            img = tuple(a - beta[i] * b for a, b in zip(beta, alpha))
            assert img in pos or img in neg


def test_examples():
    a1 = build_root_system("A1")
    assert a1.cartan == ((2,),)
    assert a1.comarks == (1,)
    assert a1.rho == (1,)
    assert coroot_pairing(a1, (3,), 1) == 3
    assert coroot_pairing(a1, (3,), 0) == 3
    assert inner_product(a1, (1,), (1,)) == Fraction(1, 2)
    a2 = build_root_system("A2")
    assert coroot_pairing(a2, (1, 2), 0) == 3
    assert inner_product(a2, a2.rho, a2.rho) == 2
    assert positive_roots(a1) == [(2,)]


def test_parse_and_reject():
    assert str(LieType.parse("G_2")) == "G2"
    assert build_root_system("g2") is build_root_system("G2")
    for bad in ["Z9", "B1", "D2", "E5", "F3", "G3", "A0", "", "A"]:
        with pytest.raises(InvalidTypeError):
            LieType.parse(bad)


@pytest.mark.parametrize("name,mu,dim", [
    ("A1", (3,), 4), ("A2", (1, 1), 8), ("A2", (2, 0), 6), ("B2", (1, 0), 5),
    ("G2", (1, 0), 7), ("G2", (0, 1), 14), ("F4", (1, 0, 0, 0), 52), ("E8", (0,) * 7 + (1,), 248),
])
def test_weyl_dimension(name, mu, dim):
    assert weyl_dimension(build_root_system(name), mu) == dim


def test_coroot_pairing_zero_is_linear():
    rs = build_root_system("B3")
    a, b = (1, -2, 3), (0, 4, -1)
    s = tuple(x + y for x, y in zip(a, b))
    assert coroot_pairing(rs, s, 0) == coroot_pairing(rs, a, 0) + coroot_pairing(rs, b, 0)
