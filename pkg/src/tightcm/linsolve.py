"""Sparse exact nullspace over Q.

Rows are ``{column: coefficient}`` dicts.  Elimination picks the shortest
live row and, inside it, the column touching the fewest live rows
(Markowitz); the commutation systems here are chains with a handful of
entries per row, so fill-in stays small.

Values stay Python ints while divisions are exact, which is the common case
(most coefficients are 0 or +-1), and become Fractions otherwise.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence


def _exact(value):
    """An int when the rational is integral, else the Fraction itself."""
    if type(value) is int:
        return value
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def _div(a, b):
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return _exact(Fraction(a) / b)


class Nullspace:
    """Solution space of a homogeneous system, parametrised by free columns.

    ``value(col)`` is the column's value as ``{free_column: coefficient}``.
    """

    def __init__(self, ncols: int, free: Sequence[int], exprs: dict):
        self.ncols = ncols
        self.free = tuple(free)
        self._exprs = exprs

    @property
    def dimension(self) -> int:
        return len(self.free)

    def value(self, col: int) -> dict:
        return self._exprs.get(col, {})

    def basis(self) -> list[list[Fraction]]:
        """Dense basis vectors, one per free column."""
        vecs = [[Fraction(0)] * self.ncols for _ in self.free]
        pos = {f: i for i, f in enumerate(self.free)}
        for col, expr in self._exprs.items():
            for f, c in expr.items():
                vecs[pos[f]][col] = Fraction(c)
        return vecs


def nullspace(rows: Iterable[dict], ncols: int) -> Nullspace:
    live = {}
    col_rows: dict[int, set] = {}
    heap = []
    for rid, row in enumerate(rows):
        row = {c: _exact(v) for c, v in row.items() if v}
        if not row:
            continue
        live[rid] = row
        for c in row:
            col_rows.setdefault(c, set()).add(rid)
        heapq.heappush(heap, (len(row), rid))

    pivots = []  # (column, row) in elimination order
    while heap:
        size, rid = heapq.heappop(heap)
        row = live.get(rid)
        if row is None or len(row) != size:
            continue
        col = min(row, key=lambda c: (len(col_rows[c]), c))
        piv = row[col]
        del live[rid]
        for c in row:
            col_rows[c].discard(rid)
        for other in list(col_rows[col]):
            orow = live[other]
            factor = _div(orow[col], piv)
            for c, v in row.items():
                nv = orow.get(c, 0) - factor * v
                if nv:
                    if c not in orow:
                        col_rows[c].add(other)
                    orow[c] = nv
                elif c in orow:
                    del orow[c]
                    col_rows[c].discard(other)
            if orow:
                heapq.heappush(heap, (len(orow), other))
            else:
                del live[other]
        pivots.append((col, row))

    pivot_cols = {c for c, _ in pivots}
    free = [c for c in range(ncols) if c not in pivot_cols]
    exprs = {f: {f: 1} for f in free}
    for col, row in reversed(pivots):
        piv = row[col]
        acc: dict = {}
        for c, v in row.items():
            if c == col:
                continue
            scale = _div(-v, piv)
            for f, e in exprs.get(c, {}).items():
                nv = acc.get(f, 0) + scale * e
                if nv:
                    acc[f] = nv
                else:
                    acc.pop(f, None)
        if acc:
            exprs[col] = acc
    return Nullspace(ncols, free, exprs)


def row_basis(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a maximal linearly independent subset of ``vectors`` (greedy, in order)."""
    reduced: list[tuple[int, dict]] = []  # (pivot column, normalised sparse row)
    keep = []
    for idx, vec in enumerate(vectors):
        row = {c: Fraction(v) for c, v in enumerate(vec) if v}
        for pc, prow in reduced:
            f = row.get(pc)
            if f:
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if row:
            pc = min(row)
            inv = 1 / row[pc]
            reduced.append((pc, {c: v * inv for c, v in row.items()}))
            keep.append(idx)
    return keep
