"""Cartan data for compact simple simply-connected Lie groups.

Weights are integer tuples of Dynkin labels, i.e. coordinates in the
fundamental-weight basis.  The Cartan matrix uses the convention
``cartan[i][j] = <alpha_j, alpha_i^vee>`` so that column ``j`` holds the
Dynkin labels of the simple root ``alpha_j``.  Simple roots are numbered as
in Bourbaki.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InvalidTypeError

Weight = tuple[int, ...]

_VALID_RANKS = {
    "A": lambda l: l >= 1,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 2,
    "D": lambda l: l >= 3,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}


@dataclass(frozen=True)
class LieType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _VALID_RANKS:
            raise InvalidTypeError(f"unknown series {self.series!r}; expected one of A-G")
        if not isinstance(self.rank, int) or not _VALID_RANKS[self.series](self.rank):
            raise InvalidTypeError(f"{self.series}{self.rank} is not a simple type")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        """Parse strings like ``"A2"``, ``"e8"`` or ``"G_2"``."""
        match = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if match is None:
            raise InvalidTypeError(f"cannot parse Lie type {text!r}")
        return cls(match.group(1).upper(), int(match.group(2)))

    def __str__(self):
        return f"{self.series}{self.rank}"


def _dynkin_edges(series: str, l: int) -> dict[tuple[int, int], int]:
    """Off-diagonal Cartan entries, 0-indexed, keyed by (row, col)."""
    entries: dict[tuple[int, int], int] = {}

    def simple(i, j):
        entries[i, j] = entries[j, i] = -1

    if series in "ABC":
        for i in range(l - 1):
            simple(i, i + 1)
        if series == "B":
            # alpha_l short
            entries[l - 2, l - 1], entries[l - 1, l - 2] = -1, -2
        elif series == "C":
            # alpha_l long
            entries[l - 2, l - 1], entries[l - 1, l - 2] = -2, -1
    elif series == "D":
        for i in range(l - 2):
            simple(i, i + 1)
        simple(l - 3, l - 1)
    elif series == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, l - 1)]:
            simple(i, j)
    elif series == "F":
        simple(0, 1)
        simple(2, 3)
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        entries[1, 2], entries[2, 1] = -1, -2
    elif series == "G":
        # alpha_1 short, alpha_2 long
        entries[0, 1], entries[1, 0] = -3, -1
    return entries


def _inverse(matrix: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _determinant(matrix: Sequence[Sequence[int]]) -> Fraction:
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable Cartan-type record.

    ``root_lengths`` holds ``<alpha_i, alpha_i> / 2`` (1 for long roots).
    ``positive_root_coords`` are the positive roots in simple-root coordinates,
    sorted by height; ``positive_root_labels`` are the same roots as weights.
    """

    lie_type: LieType
    cartan: tuple[tuple[int, ...], ...]
    cartan_inverse: tuple[tuple[Fraction, ...], ...]
    simple_roots: tuple[Weight, ...]
    root_lengths: tuple[Fraction, ...]
    positive_root_coords: tuple[tuple[int, ...], ...]
    positive_root_labels: tuple[Weight, ...]
    highest_root: Weight
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    dual_coxeter: int
    rho: Weight
    qform: tuple[tuple[Fraction, ...], ...]
    weyl_order: int

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def name(self) -> str:
        return str(self.lie_type)

    def __repr__(self):
        return f"RootSystem({self.name})"


def _positive_roots(cartan, l):
    """Positive roots in simple-root coordinates via root strings."""
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            labels = [sum(cartan[i][j] * beta[j] for j in range(l)) for i in range(l)]
            for i in range(l):
                # q = how far beta - q*alpha_i stays a root
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                p = q - labels[i]
                if p > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda c: (sum(c), c))


def build_root_system(lie_type: LieType | str) -> RootSystem:
    """Build the exact Cartan data of a simple simply-connected type (memoized)."""
    if isinstance(lie_type, str):
        lie_type = LieType.parse(lie_type)
    return _build(lie_type)


@lru_cache(maxsize=None)
def _build(lie_type: LieType) -> RootSystem:
    l = lie_type.rank
    off = _dynkin_edges(lie_type.series, l)
    cartan = tuple(tuple(2 if i == j else off.get((i, j), 0) for j in range(l)) for i in range(l))

    # symmetrizer d_i A_ij = d_j A_ji, propagated along the Dynkin diagram
    d: list[Fraction | None] = [None] * l
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(l):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    top = max(d)
    root_lengths = tuple(x / top for x in d)

    coords = _positive_roots(cartan, l)
    labels = tuple(tuple(sum(cartan[i][j] * c[j] for j in range(l)) for i in range(l)) for c in coords)
    marks = coords[-1]
    highest = labels[-1]
    comarks_frac = [marks[i] * root_lengths[i] for i in range(l)]
    assert all(c.denominator == 1 for c in comarks_frac)
    comarks = tuple(int(c) for c in comarks_frac)

    inv = _inverse(cartan)
    qform = tuple(tuple(root_lengths[i] * inv[i][j] for j in range(l)) for i in range(l))

    # |W| = l! * prod(marks) * det(A)  (index of connection times marks)
    det = _determinant(cartan)
    weyl_order = math.factorial(l) * math.prod(marks) * int(det)

    return RootSystem(
        lie_type=lie_type,
        cartan=cartan,
        cartan_inverse=inv,
        simple_roots=tuple(tuple(cartan[i][j] for i in range(l)) for j in range(l)),
        root_lengths=root_lengths,
        positive_root_coords=tuple(coords),
        positive_root_labels=labels,
        highest_root=highest,
        marks=tuple(marks),
        comarks=comarks,
        dual_coxeter=1 + sum(comarks),
        rho=(1,) * l,
        qform=qform,
        weyl_order=weyl_order,
    )


def check_weight(rs: RootSystem, lam: Sequence) -> None:
    if len(lam) != rs.rank:
        raise ValueError(f"weight {tuple(lam)} has length {len(lam)}, expected rank {rs.rank}")


def coroot_pairing(rs: RootSystem, lam: Sequence[int], i: int) -> int:
    """``<lam, alpha_i^vee>`` for i >= 1 and ``<lam, theta^vee>`` for i = 0."""
    check_weight(rs, lam)
    if not 0 <= i <= rs.rank:
        raise ValueError(f"generator index {i} out of range 0..{rs.rank}")
    if i == 0:
        return sum(a * x for a, x in zip(rs.comarks, lam))
    return lam[i - 1]


def inner_product(rs: RootSystem, lam: Sequence, mu: Sequence) -> Fraction:
    """Basic inner product of two weights, normalized so <theta, theta> = 2."""
    check_weight(rs, lam)
    check_weight(rs, mu)
    F = rs.qform
    return sum((Fraction(lam[i]) * F[i][j] * mu[j]
                for i in range(rs.rank) for j in range(rs.rank) if lam[i] and mu[j]),
               Fraction(0))


def positive_roots(rs: RootSystem) -> list[Weight]:
    return list(rs.positive_root_labels)


def root_coordinates(rs: RootSystem, lam: Sequence[int]) -> tuple[Fraction, ...]:
    """Coordinates of ``lam`` in the simple-root basis."""
    inv = rs.cartan_inverse
    l = rs.rank
    return tuple(sum((inv[i][j] * lam[j] for j in range(l)), Fraction(0)) for i in range(l))


def weyl_dimension(rs: RootSystem, mu: Sequence[int]) -> int:
    """Dimension of the irreducible representation with highest weight ``mu``."""
    shifted = tuple(x + 1 for x in mu)
    num = Fraction(1)
    for alpha in rs.positive_root_labels:
        num *= inner_product(rs, shifted, alpha) / inner_product(rs, rs.rho, alpha)
    assert num.denominator == 1
    return int(num)


SUPPORTED_SMALL_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4",
                         "D3", "D4", "F4", "G2")
