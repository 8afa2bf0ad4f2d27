"""Window model of infinite-support weight vectors and the formal Verlinde module.

An infinite vector on the weight lattice is represented by its restriction to
a :class:`~verlinde.chain.Truncation` window together with a tag saying how it
continues outside: constant along star orbits (``"invariant"``), alternating
under the finite Weyl group (``"anti-invariant"``), or unknown (``None``).
Every assertion made here only reads entries the window actually determines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .affine import (
    AffineWord,
    StarContext,
    length_of_weight,
    longest_length,
    orbit_ball,
    reduce_to_alcove,
    star_reflect,
)
from .chain import (
    BoundaryWitness,
    ChainElement,
    Truncation,
    differential,
    reduce_cycle,
    target_distance,
    verify_witness,
)
from .errors import AntiInvarianceError, InsufficientWindowError, NotACycleError
from .rootdata import Weight, inner_product
from .weights import freudenthal_multiplicities

INVARIANT = "invariant"
ANTI_INVARIANT = "anti-invariant"
_TAGS = (INVARIANT, ANTI_INVARIANT, None)


@dataclass(frozen=True)
class WindowVector:
    window: Truncation
    entries: Mapping[Weight, int]
    tag: str | None = None
    ctx: StarContext | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")
        clean = {tuple(k): int(v) for k, v in sorted(self.entries.items()) if v}
        if self.ctx is not None:
            outside = [lam for lam in clean if length_of_weight(self.ctx, lam) > self.window.L]
            if outside:
                raise ValueError(f"entries outside the window L={self.window.L}: {outside[:3]}")
        object.__setattr__(self, "entries", clean)

    @property
    def complete(self) -> bool:
        return self.tag is not None

    def __getitem__(self, lam) -> int:
        return self.entries.get(tuple(lam), 0)

    def __bool__(self):
        return bool(self.entries)

    def restrict(self, L: int) -> "WindowVector":
        if self.ctx is None:
            raise ValueError("restriction needs a StarContext")
        kept = {lam: c for lam, c in self.entries.items() if length_of_weight(self.ctx, lam) <= L}
        return WindowVector(Truncation(L, self.window.margin), kept, self.tag, self.ctx)


def window_vector(ctx: StarContext, window: Truncation, entries: Mapping, tag: str | None = None) -> WindowVector:
    return WindowVector(window, entries, tag, ctx)


def invariant_extension(ctx: StarContext, lam0: Sequence[int], window: Truncation) -> WindowVector:
    """Indicator of the star orbit of ``lam0`` inside the window."""
    red = reduce_to_alcove(ctx, lam0)
    if not red.sign:
        raise ValueError(f"{tuple(lam0)} lies on an alcove wall; its orbit is not free")
    return window_vector(ctx, window, dict.fromkeys(orbit_ball(ctx, red.rep, window.L), 1), INVARIANT)


def anti_invariant_delta(ctx: StarContext, lam: Sequence[int], window: Truncation, coeff: int = 1) -> WindowVector:
    """Window restriction of ``coeff * Sk_0(lam)``: the signed finite Weyl orbit."""
    from .affine import skew_symmetrize

    vec = {mu: coeff * c for mu, c in skew_symmetrize(ctx, (0,), lam).items()
           if length_of_weight(ctx, mu) <= window.L}
    return window_vector(ctx, window, vec, ANTI_INVARIANT)


def _top_chain(ctx: StarContext, v: WindowVector) -> ChainElement:
    face = tuple(ctx.generators)
    return ChainElement({(face, lam): c for lam, c in v.entries.items()})


def top_degree_cycle_check(ctx: StarContext, v: WindowVector) -> bool:
    """Whether ``v`` read as a top-degree chain is a cycle away from the window edge.

    Terms of the differential at weights of length ``L`` may pair with
    entries outside the window, so they are ignored.
    """
    if v.tag is None:
        raise ValueError("top_degree_cycle_check needs a tagged (complete) vector")
    boundary = differential(ctx, _top_chain(ctx, v))
    edge = v.window.L - 1
    return all(length_of_weight(ctx, lam) > edge for (_, lam) in boundary)


# -- degree-zero readout -----------------------------------------------------

def _finite_weyl_coefficients(ctx: StarContext, v: WindowVector) -> dict[Weight, int]:
    """Coefficients of ``Sk_0`` on dominant-regular representatives, checking anti-invariance."""
    finite = range(1, ctx.rank + 1)
    L = v.window.L
    for lam, c in v.entries.items():
        for i in finite:
            img = star_reflect(ctx, i, lam)
            if img == lam:
                raise AntiInvarianceError(f"entry {c} at {lam} is fixed by s_{i}")
            if length_of_weight(ctx, img) <= L and v[img] != -c:
                raise AntiInvarianceError(
                    f"entries at {lam} and s_{i}*{lam} = {img} are {c} and {v[img]}, not opposite")
    coeffs: dict[Weight, int] = {}
    for lam, c in v.entries.items():
        red = reduce_to_alcove(ctx, lam, finite)
        coeffs.setdefault(red.rep, red.sign * c)
    return {lam: c for lam, c in coeffs.items() if c}


def formal_reduce(ctx: StarContext, v: WindowVector, window: Truncation | None = None
                  ) -> tuple[dict[Weight, int], BoundaryWitness]:
    """Class of an anti-invariant window vector in the level-k Verlinde lattice.

    The vector is rewritten as a degree-0 chain ``sum c * Sk_0(lam)``, one
    term per finite Weyl orbit met by the readout window, and every orbit
    cluster is collapsed onto the fundamental alcove.  Returns the alcove
    coefficients keyed by label and the boundary witness.
    """
    if v.tag != ANTI_INVARIANT:
        raise AntiInvarianceError("formal_reduce needs an anti-invariant tagged vector")
    window = window or v.window
    if window.L > v.window.L:
        raise InsufficientWindowError(
            f"readout window L={window.L} exceeds the vector's window L={v.window.L}",
            suggested=v.window.L)
    if window.L < v.window.L:
        v = v.restrict(window.L)
    x = ChainElement({((0,), lam): c for lam, c in _finite_weyl_coefficients(ctx, v).items()})
    canonical, witness = reduce_cycle(ctx, x)
    classes = {}
    for (face, lam), c in canonical.items():
        assert face == (0,), face
        classes[lam] = c
    return dict(sorted(classes.items())), witness


# -- module structure --------------------------------------------------------

def weight_system(ctx: StarContext, chi: Mapping[Weight, int]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for mu, c in chi.items():
        if not c:
            continue
        for eta, m in freudenthal_multiplicities(ctx.rs, mu).items():
            out[eta] = out.get(eta, 0) + c * m
    return {k: v for k, v in sorted(out.items()) if v}


def support_radius(ctx: StarContext, chi: Mapping[Weight, int]) -> int:
    """Bound on how far translation by a weight of ``chi`` can move the length."""
    rs = ctx.rs
    best = 0
    for eta in weight_system(ctx, chi):
        total = 0
        for alpha in rs.positive_root_labels:
            pairing = 2 * inner_product(rs, eta, alpha) / inner_product(rs, alpha, alpha)
            total += math.ceil(abs(Fraction(pairing)) / ctx.m)
        best = max(best, total)
    return best


def module_action(ctx: StarContext, chi: Mapping[Weight, int], v: WindowVector) -> WindowVector:
    """Multiply ``v`` by the virtual character ``chi`` and shrink the window to what is determined."""
    chi = {tuple(mu): c for mu, c in chi.items() if c}
    r = support_radius(ctx, chi)
    if r > v.window.L:
        raise InsufficientWindowError(
            f"character support radius {r} exceeds the window L={v.window.L}", suggested=r)
    L = v.window.L - r
    out: dict[Weight, int] = {}
    for eta, m in weight_system(ctx, chi).items():
        for lam, c in v.entries.items():
            key = tuple(a + b for a, b in zip(lam, eta))
            out[key] = out.get(key, 0) + m * c
    kept = {lam: c for lam, c in out.items() if c and length_of_weight(ctx, lam) <= L}
    return WindowVector(Truncation(L, v.window.margin), kept, v.tag, ctx)


def multiply_characters(ctx: StarContext, a: Mapping[Weight, int], b: Mapping[Weight, int]) -> dict[Weight, int]:
    from .weights import tensor_decompose

    out: dict[Weight, int] = {}
    for lam, c in a.items():
        for mu, d in b.items():
            if c and d:
                for nu, n in tensor_decompose(ctx.rs, lam, mu).items():
                    out[nu] = out.get(nu, 0) + c * d * n
    return {k: v for k, v in sorted(out.items()) if v}


# -- separated clusters ------------------------------------------------------

def default_separation(ctx: StarContext) -> int:
    return 2 * longest_length(ctx, (0,)) + 1


def alcove_distance(ctx: StarContext, a: AffineWord, b: AffineWord) -> int:
    """Gallery distance between the alcoves reached by the words ``a`` and ``b``."""
    from .chain import translate_weight

    base = tuple(0 for _ in range(ctx.rank))
    return target_distance(ctx, translate_weight(ctx, base, tuple(a)), tuple(b))


@dataclass(frozen=True)
class ClusterResult:
    target: AffineWord
    part: ChainElement
    canonical: ChainElement
    witness: BoundaryWitness


def reduce_clusters(ctx: StarContext, x: Mapping, targets: Sequence[AffineWord],
                    separation: int | None = None) -> list[ClusterResult]:
    """Split a cycle into clusters around well separated alcoves and reduce each one locally.

    Every term must lie closer than ``separation / 2`` to its alcove and the
    alcoves must be pairwise at distance at least ``separation``, so clusters
    share no terms.  Each cluster must be a cycle on its own.
    """
    C = default_separation(ctx) if separation is None else separation
    targets = [tuple(t) for t in targets]
    for i, a in enumerate(targets):
        for b in targets[i + 1:]:
            d = alcove_distance(ctx, a, b)
            if d < C:
                raise ValueError(f"alcoves {a} and {b} are only {d} apart; need {C}")
    parts: list[dict] = [{} for _ in targets]
    for (face, lam), c in ChainElement(x).items():
        dists = [target_distance(ctx, lam, t) for t in targets]
        n = min(range(len(targets)), key=dists.__getitem__)
        if 2 * dists[n] >= C:
            raise ValueError(f"term at {lam} is {dists[n]} from the nearest alcove; clusters overlap")
        parts[n][face, lam] = c
    results = []
    for target, part in zip(targets, parts):
        part = ChainElement(part)
        residual = differential(ctx, part)
        if residual:
            raise NotACycleError(residual)
        canonical, witness = reduce_cycle(ctx, part, [target])
        if not verify_witness(ctx, witness):
            raise AssertionError("cluster witness failed")
        results.append(ClusterResult(target, part, canonical, witness))
    return results


def cluster_boundary(ctx: StarContext, targets: Sequence[AffineWord], degree: int, rng,
                     radius: int = 0, terms: int = 3) -> tuple[ChainElement, list[ChainElement]]:
    """Sum of boundaries of random free-orbit chains, one placed at each target alcove.

    A random chain of the given degree near the fundamental alcove (length at
    most ``radius``) is carried to each target by right translation.
    Returns the total cycle and the per-target chains ``y_i`` it bounds.
    """
    from .chain import random_chain, translate_chain

    ys = []
    total = ChainElement()
    for t in targets:
        y = random_chain(ctx, degree, Truncation(radius), rng, terms=terms)
        y = ChainElement({(face, lam): c for (face, lam), c in y.items()
                          if reduce_to_alcove(ctx, lam).sign})
        y = translate_chain(ctx, y, tuple(t))
        ys.append(y)
        total = total + differential(ctx, y)
    return total, ys
