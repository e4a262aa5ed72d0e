"""Small dense linear algebra over exact rationals (floats also work)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def determinant(rows: Sequence[Sequence]) -> Fraction | float:
    """Determinant by Gaussian elimination with row swaps.

    Exact for Fraction entries; partial pivoting on magnitude for floats.
    """
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    det = a[0][0] * 0 + 1
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            return det * 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f == 0:
                continue
            row_r, row_c = a[r], a[col]
            for c in range(col, n):
                row_r[c] = row_r[c] - f * row_c[c]
    return det


def nullspace_vector(rows: Sequence[Sequence[Fraction]]) -> list[Fraction] | None:
    """A nonzero ``v`` with ``rows @ v == 0``, or None if the kernel is trivial.

    Exact arithmetic only; the returned vector is scaled to integer entries.
    """
    a = [[Fraction(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    f = free[0]
    v = [Fraction(0)] * n
    v[f] = Fraction(1)
    for row, pc in enumerate(pivots):
        v[pc] = -a[row][f]
    scale = math.lcm(*(x.denominator for x in v))
    return [x * scale for x in v]
