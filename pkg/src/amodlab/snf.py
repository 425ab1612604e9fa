"""Smith normal form of sparse integer matrices.

Only the invariant factors are computed; no transformation matrices are
kept.  Rows are stored as ``{col: value}`` dicts with a column index on the
side, so pivoting touches only nonzero entries.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows", "cols")

    def __init__(self, nrows: int, ncols: int, columns: Iterable[Mapping[int, int]] = ()):
        self.nrows, self.ncols = nrows, ncols
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    self.rows.setdefault(i, {})[j] = v
                    self.cols.setdefault(j, set()).add(i)

    def copy(self) -> "SparseMatrix":
        other = SparseMatrix(self.nrows, self.ncols)
        other.rows = {i: dict(r) for i, r in self.rows.items()}
        other.cols = {j: set(c) for j, c in self.cols.items()}
        return other

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def _set(self, i: int, j: int, v: int) -> None:
        row = self.rows.setdefault(i, {})
        if v:
            row[j] = v
            self.cols.setdefault(j, set()).add(i)
        else:
            row.pop(j, None)
            if not row:
                del self.rows[i]
            col = self.cols.get(j)
            if col is not None:
                col.discard(i)
                if not col:
                    del self.cols[j]

    def add_row_multiple(self, target: int, source: int, factor: int) -> None:
        """row[target] += factor * row[source]"""
        for j, v in list(self.rows.get(source, {}).items()):
            self._set(target, j, self.rows.get(target, {}).get(j, 0) + factor * v)

    def add_col_multiple(self, target: int, source: int, factor: int) -> None:
        """col[target] += factor * col[source]"""
        for i in list(self.cols.get(source, ())):
            v = self.rows[i][source]
            self._set(i, target, self.rows[i].get(target, 0) + factor * v)

    def remove_row_col(self, i: int, j: int) -> None:
        for jj in list(self.rows.get(i, {})):
            self._set(i, jj, 0)
        for ii in list(self.cols.get(j, ())):
            self._set(ii, j, 0)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())


def _min_entry(m: SparseMatrix, rows: Iterable[int] | None = None):
    best = None
    for i in (m.rows if rows is None else rows):
        for j, v in m.rows.get(i, {}).items():
            a = abs(v)
            if best is None or a < best[0]:
                best = (a, i, j)
                if a == 1:
                    return best
    return best


def elimination_diagonal(matrix: SparseMatrix) -> list[int]:
    """Diagonal entries produced by unimodular elimination (not yet a chain)."""
    m = matrix.copy()
    diag: list[int] = []
    while m.rows:
        _, pi, pj = _min_entry(m)
        while True:
            p = m.rows[pi][pj]
            dirty = False
            for i in list(m.cols.get(pj, ())):
                if i == pi:
                    continue
                q = m.rows[i][pj] // p
                m.add_row_multiple(i, pi, -q)
                if pj in m.rows.get(i, {}):
                    dirty = True
            for j in list(m.rows.get(pi, {})):
                if j == pj:
                    continue
                q = m.rows[pi][j] // p
                m.add_col_multiple(j, pj, -q)
                if j in m.rows.get(pi, {}):
                    dirty = True
            if not dirty:
                break
            # a remainder smaller than the pivot survived: re-pivot on it
            cand = [(abs(m.rows[i][pj]), i, pj) for i in m.cols.get(pj, ())]
            cand += [(abs(v), pi, j) for j, v in m.rows[pi].items()]
            _, pi, pj = min(cand)
        diag.append(abs(m.rows[pi][pj]))
        m.remove_row_col(pi, pj)
    return diag


def invariant_factors(diagonal: Sequence[int]) -> list[int]:
    """Turn a diagonal into Smith form d1 | d2 | ... (nonzero entries only)."""
    d = sorted(x for x in diagonal if x != 1)
    units = len(diagonal) - len(d)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            g = gcd(a, b)
            d[i], d[j] = g, a // g * b
    d.sort()
    return [1] * units + d


def smith_invariants(matrix: SparseMatrix) -> list[int]:
    return invariant_factors(elimination_diagonal(matrix))


def rank(matrix: SparseMatrix) -> int:
    return len(elimination_diagonal(matrix))


def rational_rank(dense: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    rows = [[Fraction(x) for x in r] for r in dense]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
