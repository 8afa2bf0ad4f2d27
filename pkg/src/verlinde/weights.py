"""Classical weight combinatorics: alcove enumeration, Freudenthal
multiplicities, tensor products and numeric Weyl characters."""

from __future__ import annotations

import cmath
import itertools
import math
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .affine import reduce_to_chamber
from .errors import NotDominantError, SingularPointError
from .rootdata import RootSystem, Weight, check_weight, inner_product, root_coordinates

WeightMultiset = dict[Weight, int]


def alcove_weights(rs: RootSystem, k: int) -> list[Weight]:
    """Dominant weights with ``<lam, theta^vee> <= k``, in lexicographic order."""
    if k < 0:
        raise ValueError("level must be non-negative")
    ranges = [range(k // a + 1) for a in rs.comarks]
    out = [lam for lam in itertools.product(*ranges)
           if sum(a * x for a, x in zip(rs.comarks, lam)) <= k]
    return sorted(out)


def _require_dominant(rs: RootSystem, mu: Sequence[int]) -> Weight:
    check_weight(rs, mu)
    if any(x < 0 for x in mu):
        raise NotDominantError(f"{tuple(mu)} is not dominant")
    return tuple(mu)


def _to_dominant(rs: RootSystem, lam: tuple) -> tuple:
    """Linear Weyl-group reduction (no rho shift)."""
    while True:
        for i, v in enumerate(lam):
            if v < 0:
                alpha = rs.simple_roots[i]
                lam = tuple(x - v * a for x, a in zip(lam, alpha))
                break
        else:
            return lam


def weyl_orbit(rs: RootSystem, lam: Sequence[int]) -> list[Weight]:
    """Orbit of ``lam`` under the finite Weyl group (linear action)."""
    start = _to_dominant(rs, tuple(lam))
    seen = {start}
    queue = deque([start])
    while queue:
        nu = queue.popleft()
        for i, v in enumerate(nu):
            if v > 0:
                img = tuple(x - v * a for x, a in zip(nu, rs.simple_roots[i]))
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return sorted(seen)


def _dominant_weights_below(rs: RootSystem, mu: Weight) -> list[Weight]:
    found = {mu}
    queue = deque([mu])
    while queue:
        nu = queue.popleft()
        for alpha in rs.positive_root_labels:
            cand = tuple(x - a for x, a in zip(nu, alpha))
            if all(x >= 0 for x in cand) and cand not in found:
                found.add(cand)
                queue.append(cand)
    depth = lambda nu: sum(root_coordinates(rs, tuple(a - b for a, b in zip(mu, nu))))
    return sorted(found, key=lambda nu: (depth(nu), nu))


def dominant_multiplicities(rs: RootSystem, mu: Sequence[int]) -> dict[Weight, int]:
    """Freudenthal recursion on the dominant weights of ``V_mu``."""
    mu = _require_dominant(rs, mu)
    rho = rs.rho
    shifted_norm = lambda nu: inner_product(rs, tuple(a + b for a, b in zip(nu, rho)),
                                            tuple(a + b for a, b in zip(nu, rho)))
    top = shifted_norm(mu)
    mult: dict[Weight, int] = {}
    for nu in _dominant_weights_below(rs, mu):
        if nu == mu:
            mult[nu] = 1
            continue
        total = Fraction(0)
        for alpha in rs.positive_root_labels:
            j = 1
            while True:
                step = tuple(x + j * a for x, a in zip(nu, alpha))
                m = mult.get(_to_dominant(rs, step), 0)
                if not m:
                    break
                total += m * inner_product(rs, step, alpha)
                j += 1
        value = 2 * total / (top - shifted_norm(nu))
        assert value.denominator == 1, (mu, nu, value)
        if value:
            mult[nu] = int(value)
    return mult


def freudenthal_multiplicities(rs: RootSystem, mu: Sequence[int]) -> WeightMultiset:
    """Full weight system of ``V_mu`` with multiplicities."""
    out: WeightMultiset = {}
    for nu, m in dominant_multiplicities(rs, mu).items():
        for eta in weyl_orbit(rs, nu):
            out[eta] = m
    return dict(sorted(out.items()))


def tensor_decompose(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> dict[Weight, int]:
    """Multiplicities of ``V_nu`` in ``V_lam (x) V_mu`` by signed dot-reflection."""
    lam = _require_dominant(rs, lam)
    mu = _require_dominant(rs, mu)
    out: dict[Weight, int] = {}
    for eta, m in freudenthal_multiplicities(rs, mu).items():
        red = reduce_to_chamber(rs, tuple(a + b for a, b in zip(lam, eta)))
        if red.sign:
            out[red.rep] = out.get(red.rep, 0) + red.sign * m
    assert all(v >= 0 for v in out.values()), out
    return dict(sorted((k, v) for k, v in out.items() if v))


@lru_cache(maxsize=4096)
def signed_weyl_orbit(rs: RootSystem, x: Weight) -> tuple[tuple[Weight, int], ...]:
    """Images ``w(x)`` with ``det(w)`` for a strictly dominant ``x``."""
    if any(v <= 0 for v in x):
        raise ValueError(f"{x} is not strictly dominant")
    seen = {x: 1}
    queue = deque([x])
    while queue:
        nu = queue.popleft()
        for i, v in enumerate(nu):
            img = tuple(a - v * b for a, b in zip(nu, rs.simple_roots[i]))
            if img not in seen:
                seen[img] = -seen[nu]
                queue.append(img)
    return tuple(seen.items())


def _phase(q: Fraction) -> complex:
    q = q - math.floor(q)
    return cmath.exp(2j * math.pi * float(q))


def _as_fractions(xi) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in xi)


def is_regular(rs: RootSystem, xi: Sequence) -> bool:
    """Whether the Weyl denominator is nonzero at ``exp(xi)``."""
    xi = _as_fractions(xi)
    return all(inner_product(rs, alpha, xi).denominator != 1
               for alpha in rs.positive_root_labels)


def character_value(rs: RootSystem, mu: Sequence[int], xi: Sequence) -> complex:
    """Weyl character ``chi_mu`` at ``exp(xi)`` for a rational weight vector ``xi``.

    ``xi`` is given in Dynkin-label coordinates and identified with an element
    of the Cartan subalgebra through the basic inner product; the exponents
    ``<w(mu + rho), xi>`` are computed exactly before conversion to floats.
    """
    mu = _require_dominant(rs, mu)
    xi = _as_fractions(xi)
    check_weight(rs, xi)
    if not is_regular(rs, xi):
        raise SingularPointError(f"Weyl denominator vanishes at {xi}")
    num = sum(s * _phase(inner_product(rs, w, xi))
              for w, s in signed_weyl_orbit(rs, tuple(a + 1 for a in mu)))
    den = sum(s * _phase(inner_product(rs, w, xi))
              for w, s in signed_weyl_orbit(rs, rs.rho))
    return num / den


def character_by_weights(rs: RootSystem, mu: Sequence[int], xi: Sequence) -> complex:
    """Direct exponential sum over the weight system (oracle for the Weyl formula)."""
    xi = _as_fractions(xi)
    return sum(m * _phase(inner_product(rs, eta, xi))
               for eta, m in freudenthal_multiplicities(rs, mu).items())


def character_of_multiset(rs: RootSystem, chi: Mapping[Weight, int], xi: Sequence) -> complex:
    return sum(c * character_value(rs, mu, xi) for mu, c in chi.items() if c)
