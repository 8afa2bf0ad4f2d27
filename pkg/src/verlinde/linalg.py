"""Exact integer linear algebra on small dense matrices (lists of rows)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    Elimination pivots on the entry of minimal absolute value in the
    remaining block; entries are Python ints so nothing overflows.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best, pivot = abs(v), (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        rt = a[t]
                        ri = a[i]
                        for c in range(t, cols):
                            if rt[c]:
                                ri[c] -= q * rt[c]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                v = a[t][j]
                if v:
                    q = v // p
                    if q:
                        for r in range(t, rows):
                            if a[r][t]:
                                a[r][j] -= q * a[r][t]
                    if a[t][j]:
                        clean = False
            if clean:
                # enforce divisibility of the remaining block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                for c in range(t, cols):
                    a[t][c] += a[i][c]
                continue
            # a smaller remainder appeared in row/column t: move it to the pivot
            best, pos = None, None
            for i in range(t, rows):
                if a[i][t] and (best is None or abs(a[i][t]) < best):
                    best, pos = abs(a[i][t]), (i, t)
            for j in range(t, cols):
                if a[t][j] and (best is None or abs(a[t][j]) < best):
                    best, pos = abs(a[t][j]), (t, j)
            i, j = pos
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    return rational_rank(matrix)


def _row_reduce(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(v) for v in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def rational_rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not len(matrix[0]):
        return 0
    return len(_row_reduce(matrix)[1])


def rational_nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : matrix @ v = 0}`` over the rationals."""
    if not matrix:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    reduced, pivots = _row_reduce(matrix)
    n = len(matrix[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
