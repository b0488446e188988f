"""Exact sparse linear algebra over a FieldCtx.

Matrices are column-major: each column is a dict mapping row index to a
nonzero entry.  Rank, span membership and the trivial-intersection test all
run on one deterministic sparse elimination: columns are processed sparsest
first (ties by column index) and each pivot sits on the lowest row index of
its reduced column.  Over GF(p) the elimination is plain modular arithmetic;
over the rationals each column is scaled to integers and the elimination is
fraction-free (cross-multiplication with gcd stripping), so all intermediate
values stay integral.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction

from .errors import CtxMismatch, DimensionMismatch
from .exactfield import FieldCtx, FieldElement


def _raw(value, ctx: FieldCtx):
    if isinstance(value, FieldElement):
        if value.ctx != ctx:
            raise CtxMismatch(f"entry in {value.ctx}, matrix over {ctx}")
        return value.value
    return ctx.canonical(value)


class SparseMatrix:
    """Immutable exact sparse matrix; entries live in a single FieldCtx."""

    __slots__ = ("nrows", "ncols", "ctx", "_cols")

    def __init__(self, nrows: int, ncols: int, ctx: FieldCtx, columns=None):
        self.nrows = nrows
        self.ncols = ncols
        self.ctx = ctx
        cols: list[dict] = [{} for _ in range(ncols)]
        if columns is not None:
            columns = list(columns)
            if len(columns) != ncols:
                raise DimensionMismatch(f"{len(columns)} columns given, ncols={ncols}")
            for j, col in enumerate(columns):
                for i, v in col.items():
                    if not 0 <= i < nrows:
                        raise DimensionMismatch(f"row {i} outside 0..{nrows - 1}")
                    rv = _raw(v, ctx)
                    if rv != 0:
                        cols[j][i] = rv
        self._cols = cols

    @classmethod
    def from_columns(cls, nrows: int, columns, ctx: FieldCtx) -> "SparseMatrix":
        columns = list(columns)
        return cls(nrows, len(columns), ctx, columns)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries, ctx: FieldCtx) -> "SparseMatrix":
        cols: list[dict] = [{} for _ in range(ncols)]
        for i, j, v in entries:
            cols[j][i] = v
        return cls(nrows, ncols, ctx, cols)

    def entry(self, i: int, j: int) -> FieldElement:
        return self.ctx.element(self._cols[j].get(i, 0))

    def column(self, j: int) -> dict[int, FieldElement]:
        return {i: self.ctx.element(v) for i, v in self._cols[j].items()}

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def transpose(self) -> "SparseMatrix":
        cols: list[dict] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                cols[i][j] = v
        return SparseMatrix(self.ncols, self.nrows, self.ctx, cols)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if other.ctx != self.ctx:
            raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
        if other.nrows != self.nrows:
            raise DimensionMismatch(f"{self.nrows} vs {other.nrows} rows")
        return SparseMatrix(
            self.nrows, self.ncols + other.ncols, self.ctx, self._cols + other._cols
        )

    def rank(self) -> int:
        if self.ctx.p is not None:
            return _rank_prime(self._cols, self.ctx.p)
        return _rank_rational(self._cols)

    def dump(self) -> str:
        """Text dump: header "rows cols ctx", then "r c value" sorted by (c, r)."""
        lines = [f"{self.nrows} {self.ncols} {self.ctx}"]
        for j, col in enumerate(self._cols):
            for i in sorted(col):
                lines.append(f"{i} {j} {self.ctx.element(col[i])}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols} over {self.ctx}, nnz={self.nnz()})"


def _column_order(cols) -> list[int]:
    # sparsest column first, ties broken by original position
    return sorted(range(len(cols)), key=lambda j: (len(cols[j]), j))


def _reduce_prime(col: dict, pivots: dict, p: int) -> None:
    """Eliminate all pivot rows from col in place; pivots are monic at their
    lowest row, so one ascending sweep suffices."""
    heap = list(col)
    heapq.heapify(heap)
    done = set()
    while heap:
        r = heapq.heappop(heap)
        if r in done or r not in col:
            continue
        done.add(r)
        piv = pivots.get(r)
        if piv is None:
            continue
        c = col.pop(r)
        for i, v in piv.items():
            if i == r:
                continue
            w = (col.get(i, 0) - c * v) % p
            if w:
                if i not in col and i not in done:
                    heapq.heappush(heap, i)
                col[i] = w
            else:
                col.pop(i, None)


def _rank_prime(cols, p: int) -> int:
    pivots: dict[int, dict] = {}
    for j in _column_order(cols):
        col = dict(cols[j])
        _reduce_prime(col, pivots, p)
        if col:
            r = min(col)
            inv = pow(col[r], p - 2, p)
            pivots[r] = {i: v * inv % p for i, v in col.items()}
    return len(pivots)


def _integer_column(col: dict) -> dict:
    """Scale a rational column to coprime integers (rank-preserving)."""
    den = 1
    for v in col.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    ic = {i: int(v * den) for i, v in col.items()}
    g = 0
    for v in ic.values():
        g = math.gcd(g, v)
    if g > 1:
        ic = {i: v // g for i, v in ic.items()}
    return ic


def _strip_gcd(col: dict) -> None:
    g = 0
    for v in col.values():
        g = math.gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for i in col:
            col[i] //= g


def _reduce_int(col: dict, pivots: dict) -> None:
    """Fraction-free sweep: col <- pv*col - cv*piv at each hit pivot row."""
    heap = list(col)
    heapq.heapify(heap)
    done = set()
    while heap:
        r = heapq.heappop(heap)
        if r in done or r not in col:
            continue
        done.add(r)
        piv = pivots.get(r)
        if piv is None:
            continue
        cv = col.pop(r)
        pv = piv[r]
        if pv != 1:
            for i in col:
                col[i] *= pv
        for i, v in piv.items():
            if i == r:
                continue
            w = col.get(i, 0) - cv * v
            if w:
                if i not in col and i not in done:
                    heapq.heappush(heap, i)
                col[i] = w
            else:
                col.pop(i, None)
        _strip_gcd(col)


def _rank_rational(cols) -> int:
    pivots: dict[int, dict] = {}
    for j in _column_order(cols):
        col = _integer_column(cols[j])
        _reduce_int(col, pivots)
        if col:
            r = min(col)
            if col[r] < 0:
                col = {i: -v for i, v in col.items()}
            pivots[r] = col
    return len(pivots)


def _span_basis(cols, ctx: FieldCtx, track: bool):
    """Monic pivot basis of the column span, optionally tracking each pivot as
    a combination of the original columns.  Exact over both field kinds.

    Tracking invariant: a working column plus its combo dict always satisfy
    col = seed + sum(combo[j] * original_col_j), where seed is whatever the
    combo was seeded to represent (an original column, or a query vector).
    """
    p = ctx.p
    pivots: dict[int, dict] = {}
    combos: dict[int, dict] = {}

    def reduce(col: dict, combo: dict | None):
        heap = list(col)
        heapq.heapify(heap)
        done = set()
        while heap:
            r = heapq.heappop(heap)
            if r in done or r not in col:
                continue
            done.add(r)
            piv = pivots.get(r)
            if piv is None:
                continue
            c = col.pop(r)
            for i, v in piv.items():
                if i == r:
                    continue
                w = col.get(i, 0) - c * v
                if p is not None:
                    w %= p
                if w:
                    if i not in col and i not in done:
                        heapq.heappush(heap, i)
                    col[i] = w
                else:
                    col.pop(i, None)
            if combo is not None:
                for jj, u in combos[r].items():
                    w = combo.get(jj, 0) - c * u
                    if p is not None:
                        w %= p
                    if w:
                        combo[jj] = w
                    else:
                        combo.pop(jj, None)
        return col, combo

    for j in _column_order(cols):
        if p is not None:
            col = dict(cols[j])
        else:
            col = {i: Fraction(v) for i, v in cols[j].items()}
        combo = {j: 1 if p is not None else Fraction(1)} if track else None
        col, combo = reduce(col, combo)
        if col:
            r = min(col)
            lead = col[r]
            inv = pow(lead, p - 2, p) if p is not None else 1 / lead
            pivots[r] = {i: v * inv % p if p is not None else v * inv for i, v in col.items()}
            if track:
                combos[r] = {
                    jj: u * inv % p if p is not None else u * inv for jj, u in combo.items()
                }
    return pivots, combos, reduce


def rank(matrix: SparseMatrix) -> int:
    """Exact rank over the matrix's field."""
    return matrix.rank()


def in_span(matrix: SparseMatrix, vector) -> tuple[bool, list[FieldElement] | None]:
    """Decide v in columnspan(M); on success return c with M c = v.

    ``vector`` is a sparse dict {row: FieldElement} (raw ints/Fractions also
    accepted).  The zero vector is always in the span, with zero coefficients.
    """
    ctx = matrix.ctx
    v = {}
    for i, val in vector.items():
        if not 0 <= i < matrix.nrows:
            raise DimensionMismatch(f"row {i} outside 0..{matrix.nrows - 1}")
        rv = _raw(val, ctx)
        if rv != 0:
            v[i] = rv
    pivots, combos, reduce = _span_basis(matrix._cols, ctx, track=True)
    if ctx.p is None:
        v = {i: Fraction(x) for i, x in v.items()}
    # invariant leaves residual = v + sum(used[j] * col_j), so negate
    residual, used = reduce(dict(v), {})
    if residual:
        return False, None
    coeffs = [ctx.zero()] * matrix.ncols
    for j, c in used.items():
        coeffs[j] = ctx.element(-c)
    return True, coeffs


def sum_is_direct(a: SparseMatrix, b: SparseMatrix) -> bool:
    """True iff the column spans of a and b intersect trivially."""
    return a.hstack(b).rank() == a.rank() + b.rank()
