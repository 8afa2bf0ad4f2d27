"""The chain complex of anti-invariants over the faces of the alcove.

Degree ``p`` is spanned by symbols ``Sk_I(lam)`` with ``|I| = p + 1``.  A key
``(I, lam)`` is stored only for the canonical representative of its
``W_I``-orbit: ``lam + rho`` lies in the open chamber of ``W_I`` that contains
the fundamental alcove, so no reflection of ``W_I`` fixes it.  Equivalently,
``I`` contains every generator that strictly shortens ``lam`` (its descents)
and every generator that fixes it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .affine import (
    AffineWord,
    FaceIndex,
    StarContext,
    apply_word,
    descent_set,
    fixing_set,
    length_of_weight,
    longest_length,
    make_face,
    orbit_ball,
    reduce_to_alcove,
)
from .errors import InsufficientWindowError, NotACycleError, ResourceLimitError
from .linalg import rational_nullspace, rational_rank, smith_normal_form
from .rootdata import Weight

Key = tuple[FaceIndex, Weight]


class ChainElement(Mapping[Key, int]):
    """Finite integer combination of canonical ``Sk_I(lam)`` symbols."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[Key, int] = {}
        for (face, lam), c in items:
            key = (tuple(face), tuple(lam))
            acc[key] = acc.get(key, 0) + int(c)
        self._entries = {k: v for k, v in sorted(acc.items()) if v}

    @classmethod
    def from_terms(cls, ctx: StarContext, terms: Iterable[tuple[Iterable[int], Sequence[int], int]]) -> "ChainElement":
        """Canonicalize arbitrary ``(face, weight, coefficient)`` triples."""
        acc: dict[Key, int] = {}
        for face, lam, c in terms:
            face = make_face(face, ctx.rank)
            sign, rep = canonicalize(ctx, face, lam)
            if sign:
                acc[face, rep] = acc.get((face, rep), 0) + sign * c
        return cls(acc)

    def __getitem__(self, key):
        return self._entries[key]

    def __iter__(self) -> Iterator[Key]:
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __add__(self, other):
        return ChainElement(itertools.chain(self._entries.items(), other.items()))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ChainElement({k: -v for k, v in self._entries.items()})

    def __mul__(self, scalar: int):
        return ChainElement({k: scalar * v for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ChainElement):
            return self._entries == other._entries
        if isinstance(other, Mapping):
            return self._entries == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __repr__(self):
        if not self._entries:
            return "ChainElement(0)"
        terms = " ".join(f"{c:+d}*Sk{set(face)}{lam}" for (face, lam), c in self._entries.items())
        return f"ChainElement({terms})"

    def degrees(self) -> set[int]:
        return {len(face) - 1 for face, _ in self._entries}

    def weights(self) -> set[Weight]:
        return {lam for _, lam in self._entries}


ZERO = ChainElement()


@dataclass(frozen=True)
class Truncation:
    """Window of weights with ``length_of_weight <= L``.

    ``margin`` defaults to the longest-element length over all parabolic
    subgroups ``W_I``; the inner window used for homology readout is
    ``length <= L - margin``.
    """

    L: int
    margin: int | None = None

    def __post_init__(self):
        if self.L < 0:
            raise ValueError("truncation length must be non-negative")
        if self.margin is not None and self.margin < 0:
            raise ValueError("margin must be non-negative")

    def resolve_margin(self, ctx: StarContext) -> int:
        return default_margin(ctx) if self.margin is None else self.margin

    def admissible(self, ctx: StarContext, lam: Sequence[int]) -> bool:
        return length_of_weight(ctx, lam) <= self.L

    def inner(self, ctx: StarContext) -> int:
        return self.L - self.resolve_margin(ctx)


@dataclass(frozen=True)
class BoundaryWitness:
    """Certificate ``d(z) = x - y``."""

    z: ChainElement
    x: ChainElement
    y: ChainElement

    @property
    def claim(self):
        return self.x, self.y


class PeelStep(NamedTuple):
    face: FaceIndex
    weight: Weight
    generator: int
    enlarged: FaceIndex
    sign: int
    coefficient: int
    length: int


@lru_cache(maxsize=None)
def default_margin(ctx: StarContext) -> int:
    return max(longest_length(ctx, face) for face in all_faces(ctx.rank))


def all_faces(rank: int, size: int | None = None) -> list[FaceIndex]:
    gens = range(rank + 1)
    sizes = range(1, rank + 2) if size is None else (size,)
    return [face for s in sizes for face in itertools.combinations(gens, s)]


def canonicalize(ctx: StarContext, face: FaceIndex, lam: Sequence[int]) -> tuple[int, Weight | None]:
    """``Sk_I(lam) = sign * Sk_I(rep)`` with ``rep`` canonical; sign 0 if it vanishes."""
    gens = [i for i in ctx.generators if i not in face]
    red = reduce_to_alcove(ctx, lam, gens)
    if not red.sign:
        return 0, None
    return red.sign, red.rep


def is_canonical(ctx: StarContext, face: FaceIndex, lam: Sequence[int]) -> bool:
    return (descent_set(ctx, lam) | fixing_set(ctx, lam)) <= set(face)


@lru_cache(maxsize=64)
def window_weights(ctx: StarContext, L: int) -> dict[Weight, int]:
    """All weights of length <= L mapped to their length."""
    rs = ctx.rs
    ranges = [range(ctx.m // a + 1) for a in rs.comarks]
    out: dict[Weight, int] = {}
    for x in itertools.product(*ranges):
        if sum(a * v for a, v in zip(rs.comarks, x)) <= ctx.m:
            out.update(orbit_ball(ctx, tuple(v - 1 for v in x), L))
    return dict(sorted(out.items(), key=lambda kv: (kv[1], kv[0])))


def canonical_basis(ctx: StarContext, face: Iterable[int], trunc: Truncation) -> list[Weight]:
    """Canonical weights for ``Sk_I`` within the truncation, ordered by (length, weight)."""
    face = make_face(face, ctx.rank)
    return [lam for lam in window_weights(ctx, trunc.L) if is_canonical(ctx, face, lam)]


def differential(ctx: StarContext, x: Mapping[Key, int]) -> ChainElement:
    """``d Sk_I(lam) = sum_r (-1)^r Sk_{I minus i_r}(lam)`` over sorted members of I."""
    out: dict[Key, int] = {}
    for (face, lam), c in x.items():
        if len(face) < 2:
            continue
        for r, i in enumerate(face):
            sub = face[:r] + face[r + 1:]
            sign, rep = canonicalize(ctx, sub, lam)
            if sign:
                key = (sub, rep)
                out[key] = out.get(key, 0) + (-1) ** r * sign * c
    return ChainElement(out)


def verify_witness(ctx: StarContext, w: BoundaryWitness) -> bool:
    return differential(ctx, w.z) == w.x - w.y


def basis_keys(ctx: StarContext, degree: int, trunc: Truncation) -> list[Key]:
    keys = []
    weights = window_weights(ctx, trunc.L)
    faces = all_faces(ctx.rank, degree + 1)
    for lam in weights:
        required = descent_set(ctx, lam) | fixing_set(ctx, lam)
        for face in faces:
            if required <= set(face):
                keys.append((face, lam))
    return keys


def random_chain(ctx: StarContext, degree: int, trunc: Truncation, rng: random.Random,
                 terms: int = 4, coeff: int = 3) -> ChainElement:
    keys = basis_keys(ctx, degree, trunc)
    if not keys:
        return ZERO
    picks = rng.sample(keys, min(terms, len(keys)))
    return ChainElement({k: rng.choice([c for c in range(-coeff, coeff + 1) if c]) for k in picks})


# -- homology ----------------------------------------------------------------

@dataclass(frozen=True)
class DegreeHomology:
    degree: int
    basis_size: int
    free_rank: int
    torsion: tuple[int, ...]
    inner_rank: int


@dataclass(frozen=True)
class HomologyReport:
    type_name: str
    level: int
    L: int
    margin: int
    degrees: tuple[DegreeHomology, ...]
    expected_degree0: int

    @property
    def passed(self) -> bool:
        d0 = self.degrees[0]
        if d0.inner_rank != self.expected_degree0 or d0.torsion:
            return False
        return all(d.inner_rank == 0 and not d.torsion for d in self.degrees[1:])

    def to_dict(self) -> dict:
        return {
            "type": self.type_name,
            "level": self.level,
            "trunc": self.L,
            "margin": self.margin,
            "expected_degree0": self.expected_degree0,
            "degrees": [
                {"degree": d.degree, "basis": d.basis_size, "rank": d.inner_rank,
                 "full_rank": d.free_rank, "torsion": list(d.torsion)}
                for d in self.degrees
            ],
            "pass": self.passed,
        }


DEFAULT_MAX_BLOCK = 4000


def _orbit_of(ctx: StarContext, lam: Weight) -> Weight:
    return reduce_to_alcove(ctx, lam).rep


def homology_snf(ctx: StarContext, trunc: Truncation, max_block: int = DEFAULT_MAX_BLOCK) -> HomologyReport:
    """Integral homology of the truncated complex.

    The complex splits over affine Weyl orbits, so each orbit block is reduced
    separately.  ``free_rank``/``torsion`` describe the full window;
    ``inner_rank`` is the rank of the image of homology of the inner window
    (length <= L - margin) in the homology of the full window.
    """
    from .weights import alcove_weights

    margin = trunc.resolve_margin(ctx)
    inner = trunc.L - margin
    if inner < 0:
        raise InsufficientWindowError(
            f"truncation L={trunc.L} is smaller than the margin {margin}; use L >= {margin}",
            suggested=margin)
    lengths = window_weights(ctx, trunc.L)
    l = ctx.rank
    keys_by_degree = [basis_keys(ctx, p, trunc) for p in range(l + 1)]

    blocks: dict[Weight, list[list[Key]]] = {}
    for p, keys in enumerate(keys_by_degree):
        for key in keys:
            blocks.setdefault(_orbit_of(ctx, key[1]), [[] for _ in range(l + 1)])[p].append(key)

    ranks = [0] * (l + 2)          # ranks[p] = rank of d_p : C_p -> C_{p-1}
    torsion: list[list[int]] = [[] for _ in range(l + 1)]
    inner_rank = [0] * (l + 1)
    for orbit in sorted(blocks):
        block = blocks[orbit]
        if max(len(b) for b in block) > max_block:
            raise ResourceLimitError(
                f"orbit block of size {max(len(b) for b in block)} exceeds the limit {max_block}")
        index = [{key: n for n, key in enumerate(b)} for b in block]
        mats = [None] * (l + 2)
        for p in range(1, l + 1):
            rows = len(block[p - 1])
            mat = [[0] * len(block[p]) for _ in range(rows)]
            for col, key in enumerate(block[p]):
                for (face, lam), c in differential(ctx, {key: 1}).items():
                    mat[index[p - 1][face, lam]][col] = c
            mats[p] = mat
        block_ranks = [0] * (l + 2)
        for p in range(1, l + 1):
            if block[p] and block[p - 1]:
                factors = smith_normal_form(mats[p])
                block_ranks[p] = len(factors)
                torsion[p - 1].extend(f for f in factors if f > 1)
        for p in range(l + 1):
            ranks[p] += block_ranks[p]
        for p in range(l + 1):
            inner_rank[p] += _inner_image_rank(block, mats, p, lengths, inner)

    degrees = []
    for p in range(l + 1):
        size = len(keys_by_degree[p])
        degrees.append(DegreeHomology(
            degree=p,
            basis_size=size,
            free_rank=size - ranks[p] - ranks[p + 1],
            torsion=tuple(sorted(torsion[p])),
            inner_rank=inner_rank[p],
        ))
    return HomologyReport(ctx.rs.name, ctx.k, trunc.L, margin, tuple(degrees),
                          expected_degree0=len(alcove_weights(ctx.rs, ctx.k)))


def _inner_image_rank(block, mats, p, lengths, inner) -> int:
    """Rank of H_p(inner window) -> H_p(full window) on one orbit block."""
    cols = block[p]
    if not cols:
        return 0
    inner_cols = [n for n, (_, lam) in enumerate(cols) if lengths[lam] <= inner]
    if not inner_cols:
        return 0
    if p >= 1 and block[p - 1]:
        d = mats[p]
        sub = [[row[n] for n in inner_cols] for row in d]
        kernel = rational_nullspace(sub, len(inner_cols))
    else:
        kernel = [[int(a == b) for b in range(len(inner_cols))] for a in range(len(inner_cols))]
    if not kernel:
        return 0
    cycles = []
    for vec in kernel:
        full = [0] * len(cols)
        for n, v in zip(inner_cols, vec):
            full[n] = v
        cycles.append(full)
    boundaries = []
    nxt = mats[p + 1] if p + 1 < len(mats) else None
    if nxt is not None and block[p + 1]:
        boundaries = [list(col) for col in zip(*nxt)]
    base = rational_rank(boundaries) if boundaries else 0
    return rational_rank(cycles + boundaries) - base


# -- cycle reduction ---------------------------------------------------------

def _collapse(ctx: StarContext, x: ChainElement, steps: list | None,
              normalize: bool = True) -> tuple[ChainElement, ChainElement]:
    """Reduce a cycle toward the fundamental alcove.

    At a weight ``lam`` the admissible faces are exactly the supersets of
    ``R = descents | fixers``; pairing ``J <-> J + {t}`` for the smallest
    ``t`` outside ``R`` removes every face without ``t`` at the cost of terms
    of smaller length, and the cycle condition then kills the faces with
    ``t``.  Only ``Sk_0(lam)`` with ``lam`` interior to the alcove survives;
    with ``normalize=False`` any singleton face is kept there as it is.
    """
    work: dict[Key, int] = dict(x.items())
    z: dict[Key, int] = {}
    done: set[Weight] = set()
    while True:
        pending = {lam for (_, lam) in work if lam not in done}
        if not pending:
            break
        lam = max(pending, key=lambda w: (length_of_weight(ctx, w), w))
        ell = length_of_weight(ctx, lam)
        required = descent_set(ctx, lam) | fixing_set(ctx, lam)
        t = min(i for i in ctx.generators if i not in required)
        lower = sorted(face for (face, mu) in work if mu == lam and t not in face
                       and (normalize or required or len(face) > 1))
        for face in lower:
            c = work.get((face, lam), 0)
            if not c:
                continue
            enlarged = tuple(sorted(face + (t,)))
            eps = (-1) ** enlarged.index(t)
            coef = c * eps
            z[enlarged, lam] = z.get((enlarged, lam), 0) + coef
            for key, v in differential(ctx, {(enlarged, lam): coef}).items():
                nv = work.get(key, 0) - v
                if nv:
                    work[key] = nv
                else:
                    work.pop(key, None)
            if steps is not None:
                steps.append(PeelStep(face, lam, t, enlarged, eps, c, ell))
        leftovers = {face: c for (face, mu), c in work.items() if mu == lam}
        survivor = not required and all(len(face) == 1 for face in leftovers)
        if leftovers and not survivor:
            raise AssertionError(f"cycle reduction left {leftovers} at {lam}; input was not a cycle")
        done.add(lam)
    return ChainElement(work), ChainElement(z)


def _is_free(ctx: StarContext, lam: Weight) -> bool:
    return reduce_to_alcove(ctx, lam).sign != 0


def translate_weight(ctx: StarContext, lam: Weight, word: AffineWord) -> Weight:
    """Right translation on a free orbit: ``u * nu0 -> u * h * nu0``.

    ``nu0`` is the orbit's representative in the alcove and ``h`` the element
    given by ``word``.  This commutes with every star reflection, hence with
    all ``Sk_I`` and with the differential.
    """
    red = reduce_to_alcove(ctx, lam)
    if not red.sign:
        raise ValueError(f"{lam} lies on a wall; right translation is undefined")
    moved = apply_word(ctx, word, red.rep)
    return apply_word(ctx, tuple(reversed(red.word)), moved)


def translate_chain(ctx: StarContext, x: Mapping[Key, int], word: AffineWord) -> ChainElement:
    return ChainElement.from_terms(ctx, ((face, translate_weight(ctx, lam, word), c)
                                         for (face, lam), c in x.items()))


def target_distance(ctx: StarContext, lam: Weight, word: AffineWord) -> int:
    """Minimal length of ``w`` with ``w * lam`` in the alcove ``word . A``."""
    inverse = tuple(reversed(word))
    return length_of_weight(ctx, translate_weight(ctx, lam, inverse))


def reduce_cycle(ctx: StarContext, x: Mapping[Key, int], targets: Sequence[AffineWord] = (),
                 steps: list | None = None, normalize: bool = True) -> tuple[ChainElement, BoundaryWitness]:
    """Rewrite a cycle on the target alcoves and certify it with ``d(z) = x - canonical``.

    ``targets`` are affine words; the empty word is the fundamental alcove and
    is the default.  Terms on free orbits go to their nearest target; terms on
    wall orbits are null-homologous and always collapse toward the
    fundamental alcove.  Each step is appended to ``steps`` when given.
    By default degree-0 survivors are moved onto the face ``{0}`` so that
    the result is unique; ``normalize=False`` keeps whichever singleton face
    the peeling reached.
    """
    x = ChainElement(x)
    residual = differential(ctx, x)
    if residual:
        raise NotACycleError(residual)
    targets = [tuple(t) for t in targets] or [()]

    groups: dict[tuple, dict[Key, int]] = {}
    for (face, lam), c in x.items():
        if not _is_free(ctx, lam):
            gid = ("wall",)
        else:
            orbit = _orbit_of(ctx, lam)
            best = min(range(len(targets)), key=lambda n: (target_distance(ctx, lam, targets[n]), n))
            gid = ("free", orbit, best)
        groups.setdefault(gid, {})[face, lam] = c

    # a group that is not itself a cycle is merged with the rest of its orbit
    merged: dict[tuple, dict[Key, int]] = {}
    for gid, part in groups.items():
        if gid[0] == "free" and differential(ctx, part):
            key = ("free", gid[1], None)
        else:
            key = gid
        merged.setdefault(key, {}).update(part)

    canonical = ZERO
    z = ZERO
    for gid in sorted(merged, key=repr):
        part = ChainElement(merged[gid])
        if gid[0] == "wall":
            c, w = _collapse(ctx, part, steps, normalize)
        else:
            n = gid[2]
            if n is None:
                n = min(g[2] for g in groups if g[0] == "free" and g[1] == gid[1])
            word = targets[n]
            moved = translate_chain(ctx, part, tuple(reversed(word)))
            c, w = _collapse(ctx, moved, steps, normalize)
            c, w = translate_chain(ctx, c, word), translate_chain(ctx, w, word)
        canonical = canonical + c
        z = z + w
    witness = BoundaryWitness(z, x, canonical)
    if not verify_witness(ctx, witness):
        raise AssertionError("internal error: boundary witness failed re-verification")
    return canonical, witness
