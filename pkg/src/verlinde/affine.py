"""Shifted level-k action of the affine Weyl group.

The generators ``s_0, ..., s_l`` act on weights through the rho-shifted
affine action at shifted level ``m = k + h^vee``::

    s_i * lam = s_i(lam + rho) - rho                        (i >= 1)
    s_0 * lam = reflection of lam + rho in <x, theta^vee> = m, minus rho

Internally most helpers work with the shifted point ``x = lam + rho`` so that
the fundamental alcove is ``{x : x_i >= 0, <x, theta^vee> <= m}``.

An :class:`AffineWord` lists generator indices in the order they are applied:
``apply_word(ctx, (i, j), lam) == star_reflect(ctx, j, star_reflect(ctx, i, lam))``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .rootdata import RootSystem, Weight, build_root_system, check_weight

AffineWord = tuple[int, ...]
FaceIndex = tuple[int, ...]

INFINITE = math.inf


@dataclass(frozen=True)
class StarContext:
    rs: RootSystem
    k: int
    m: int = field(init=False)

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"level must be non-negative, got {self.k}")
        object.__setattr__(self, "m", self.k + self.rs.dual_coxeter)

    @classmethod
    def of(cls, lie_type, k: int) -> "StarContext":
        return cls(build_root_system(lie_type), k)

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(range(self.rs.rank + 1))

    def __repr__(self):
        return f"StarContext({self.rs.name}, k={self.k})"


class ReductionResult(NamedTuple):
    sign: int
    rep: Weight
    word: AffineWord
    length: int


@dataclass(frozen=True)
class LengthUndetermined:
    """No word of length <= cap was found although the orbits coincide."""

    cap: int


def make_face(members: Iterable[int], rank: int | None = None) -> FaceIndex:
    face = tuple(sorted(set(members)))
    if not face:
        raise ValueError("face index must be non-empty")
    if rank is not None and not all(0 <= i <= rank for i in face):
        raise ValueError(f"face {face} has members outside 0..{rank}")
    return face


# -- shifted-point primitives ------------------------------------------------

def shift(lam: Sequence[int]) -> tuple:
    return tuple(x + 1 for x in lam)


def unshift(x: Sequence) -> tuple:
    return tuple(v - 1 for v in x)


def _pair0(rs: RootSystem, x) -> int:
    return sum(a * v for a, v in zip(rs.comarks, x))


def _reflect(rs: RootSystem, m, i: int, x: tuple) -> tuple:
    if i == 0:
        c = _pair0(rs, x) - m
        if not c:
            return x
        return tuple(v - c * t for v, t in zip(x, rs.highest_root))
    c = x[i - 1]
    if not c:
        return x
    return tuple(v - c * a for v, a in zip(x, rs.simple_roots[i - 1]))


def _violates(rs: RootSystem, m, i: int, x) -> bool:
    if i == 0:
        return _pair0(rs, x) > m
    return x[i - 1] < 0


def _on_wall(rs: RootSystem, m, i: int, x) -> bool:
    if i == 0:
        return _pair0(rs, x) == m
    return x[i - 1] == 0


def reduce_shifted(rs: RootSystem, m, x: tuple, generators: Sequence[int]):
    """Greedy wall repair of a shifted point.

    Reflects in the smallest violated wall among ``generators`` until none is
    violated.  Returns ``(point, word)``.  Works for rational points too.
    """
    word = []
    gens = sorted(generators)
    while True:
        for i in gens:
            if _violates(rs, m, i, x):
                x = _reflect(rs, m, i, x)
                word.append(i)
                break
        else:
            return x, tuple(word)


def descent_set(ctx: StarContext, lam: Sequence[int]) -> frozenset[int]:
    """Generators whose reflection strictly shortens ``lam``."""
    x = shift(lam)
    return frozenset(i for i in ctx.generators if _violates(ctx.rs, ctx.m, i, x))


def fixing_set(ctx: StarContext, lam: Sequence[int]) -> frozenset[int]:
    """Generators whose reflection fixes ``lam`` under the star action."""
    x = shift(lam)
    return frozenset(i for i in ctx.generators if _on_wall(ctx.rs, ctx.m, i, x))


# -- public operations -------------------------------------------------------

def star_reflect(ctx: StarContext, i: int, lam: Sequence[int]) -> Weight:
    check_weight(ctx.rs, lam)
    if not 0 <= i <= ctx.rank:
        raise ValueError(f"generator index {i} out of range 0..{ctx.rank}")
    return unshift(_reflect(ctx.rs, ctx.m, i, shift(lam)))


def apply_word(ctx: StarContext, word: Sequence[int], lam: Sequence[int]) -> Weight:
    x = shift(lam)
    for i in word:
        if not 0 <= i <= ctx.rank:
            raise ValueError(f"generator index {i} out of range 0..{ctx.rank}")
        x = _reflect(ctx.rs, ctx.m, i, x)
    return unshift(x)


def reduce_to_alcove(ctx: StarContext, lam: Sequence[int],
                     generators: Sequence[int] | None = None) -> ReductionResult:
    """Move ``lam`` into the closed fundamental alcove by star reflections.

    With ``generators`` given, only those reflections are used and the target
    is the closed chamber of the parabolic subgroup they generate.  The sign is
    0 when the representative lies on one of the walls of that chamber.
    """
    check_weight(ctx.rs, lam)
    gens = ctx.generators if generators is None else tuple(generators)
    x, word = reduce_shifted(ctx.rs, ctx.m, shift(lam), gens)
    if any(_on_wall(ctx.rs, ctx.m, i, x) for i in gens):
        sign = 0
    else:
        sign = -1 if len(word) % 2 else 1
    return ReductionResult(sign, unshift(x), word, len(word))


def reduce_to_chamber(rs: RootSystem, lam: Sequence[int]) -> ReductionResult:
    """Classical dot-action reduction to the dominant chamber (no affine wall)."""
    check_weight(rs, lam)
    gens = range(1, rs.rank + 1)
    x, word = reduce_shifted(rs, None, shift(lam), gens)
    sign = 0 if any(v == 0 for v in x) else (-1 if len(word) % 2 else 1)
    return ReductionResult(sign, unshift(x), word, len(word))


def length_of_weight(ctx: StarContext, lam: Sequence[int]) -> int:
    return reduce_to_alcove(ctx, lam).length


def length_between(ctx: StarContext, lam: Sequence[int], mu: Sequence[int], cap: int):
    """Minimal word length carrying ``lam`` to ``mu``.

    Returns an ``int``, :data:`INFINITE` when the orbits differ, or a
    :class:`LengthUndetermined` when the orbits agree but the search hit ``cap``.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    lam, mu = tuple(lam), tuple(mu)
    check_weight(ctx.rs, lam)
    check_weight(ctx.rs, mu)
    if lam == mu:
        return 0
    seen = {lam}
    frontier = [lam]
    for depth in range(1, cap + 1):
        nxt = []
        for nu in frontier:
            for i in ctx.generators:
                img = star_reflect(ctx, i, nu)
                if img == mu:
                    return depth
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return _undetermined(ctx, lam, mu, cap)


def _undetermined(ctx, lam, mu, cap):
    if reduce_to_alcove(ctx, lam).rep != reduce_to_alcove(ctx, mu).rep:
        return INFINITE
    return LengthUndetermined(cap)


def orbit_ball(ctx: StarContext, lam: Sequence[int], radius: int) -> dict[Weight, int]:
    """Orbit points of ``lam`` with length <= radius, mapped to their length."""
    start = reduce_to_alcove(ctx, lam).rep
    out = {start: 0}
    layer = [start]
    for depth in range(1, radius + 1):
        nxt = []
        for nu in layer:
            for i in ctx.generators:
                img = star_reflect(ctx, i, nu)
                if img not in out and length_of_weight(ctx, img) == depth:
                    out[img] = depth
                    nxt.append(img)
        layer = nxt
    return out


# -- parabolic subgroups -----------------------------------------------------

def _generator_map(ctx: StarContext, i: int):
    """Generator ``i`` as an integer affine map ``x -> M x + c`` on shifted points."""
    l = ctx.rank
    rs = ctx.rs
    if i == 0:
        t, a = rs.highest_root, rs.comarks
        M = tuple(tuple(int(r == c) - t[r] * a[c] for c in range(l)) for r in range(l))
        return M, tuple(ctx.m * t[r] for r in range(l))
    alpha = rs.simple_roots[i - 1]
    M = tuple(tuple(int(r == c) - alpha[r] * int(c == i - 1) for c in range(l)) for r in range(l))
    return M, (0,) * l


def _compose(g, f):
    """Affine map ``g o f``."""
    Mg, cg = g
    Mf, cf = f
    n = len(cg)
    M = tuple(tuple(sum(Mg[r][s] * Mf[s][c] for s in range(n)) for c in range(n)) for r in range(n))
    c = tuple(sum(Mg[r][s] * cf[s] for s in range(n)) + cg[r] for r in range(n))
    return M, c


def _apply_map(g, x):
    M, c = g
    return tuple(sum(M[r][s] * x[s] for s in range(len(x))) + c[r] for r in range(len(x)))


@lru_cache(maxsize=None)
def _subgroup(ctx: StarContext, face: FaceIndex):
    gens = [i for i in ctx.generators if i not in face]
    l = ctx.rank
    identity = (tuple(tuple(int(r == c) for c in range(l)) for r in range(l)), (0,) * l)
    maps = {i: _generator_map(ctx, i) for i in gens}
    elements = {identity: ()}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        word = elements[g]
        for i in gens:
            h = _compose(maps[i], g)
            if h not in elements:
                elements[h] = word + (i,)
                queue.append(h)
    return tuple((word, -1 if len(word) % 2 else 1, g) for g, word in elements.items())


def enumerate_subgroup(ctx: StarContext, face: Iterable[int]) -> list[tuple[AffineWord, int]]:
    """Elements of ``W_I = <s_i : i not in I>`` as reduced words with signs."""
    face = make_face(face, ctx.rank)
    return [(word, sign) for word, sign, _ in _subgroup(ctx, face)]


def longest_length(ctx: StarContext, face: Iterable[int]) -> int:
    face = make_face(face, ctx.rank)
    return max(len(word) for word, _, _ in _subgroup(ctx, face))


def skew_symmetrize(ctx: StarContext, face: Iterable[int], lam: Sequence[int]) -> dict[Weight, int]:
    """Signed orbit sum of ``lam`` over ``W_I``; zero entries are dropped."""
    face = make_face(face, ctx.rank)
    check_weight(ctx.rs, lam)
    x = shift(lam)
    out: dict[Weight, int] = {}
    for _, sign, g in _subgroup(ctx, face):
        key = unshift(_apply_map(g, x))
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def skew_symmetrize_map(ctx: StarContext, face: Iterable[int], vec: dict) -> dict[Weight, int]:
    """Linear extension of :func:`skew_symmetrize` to a finite weight map."""
    out: dict[Weight, int] = {}
    for lam, c in vec.items():
        for key, v in skew_symmetrize(ctx, face, lam).items():
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}
