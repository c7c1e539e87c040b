"""Exact linear algebra over the rationals on sparse rows.

A row is a dict ``{column: value}``. Pivot rows are normalized to a leading 1
and hold no entries left of their pivot, so eliminating the smallest pivot
column present always terminates.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

PRIME = (1 << 61) - 1


class Echelon:
    """Incrementally grown row-echelon basis of a subspace of Q^cols."""

    def __init__(self):
        self.pivots: dict = {}  # pivot column -> normalized row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping) -> dict:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            hit = min((col for col in row if col in self.pivots), default=None)
            if hit is None:
                return row
            c = row[hit]
            for k, v in self.pivots[hit].items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: Mapping) -> bool:
        """Insert ``row``; True if it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        col = min(r)
        lead = r[col]
        self.pivots[col] = {k: v / lead for k, v in r.items()}
        return True

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Mapping], limit: int | None = None) -> int:
    """Exact rank; stops early once ``limit`` is reached."""
    e = Echelon()
    for row in rows:
        e.add(row)
        if limit is not None and e.rank >= limit:
            break
    return e.rank


def rank_mod_p(rows: Iterable[Mapping], p: int = PRIME) -> int:
    """Rank of an integer matrix modulo a prime.

    Never exceeds the rational rank, so a full result certifies full rational rank.
    """
    pivots: dict = {}
    for row in rows:
        r = {k: int(v) % p for k, v in row.items() if int(v) % p}
        while r:
            hit = min((c for c in r if c in pivots), default=None)
            if hit is None:
                col = min(r)
                inv = pow(r[col], -1, p)
                pivots[col] = {k: v * inv % p for k, v in r.items()}
                break
            c = r[hit]
            for k, v in pivots[hit].items():
                nv = (r.get(k, 0) - c * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def as_dense(rows: list[Mapping], ncols: int) -> list[list[Fraction]]:
    return [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]


def determinant(matrix: list[list]) -> Fraction:
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


def inverse(matrix: list[list]) -> list[list[Fraction]]:
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        lead = a[col][col]
        a[col] = [v / lead for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def matmul(a: list[list], b: list[list]) -> list[list]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]
