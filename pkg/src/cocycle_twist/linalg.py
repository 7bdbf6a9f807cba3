"""Exact sparse linear algebra.

Matrices are column dictionaries ``{col: {row: value}}`` holding no explicit
zeros.  Values may be Python ints, ``Fraction``, ``Cyclotomic`` or
``GroupRingScalar``; elimination is only done over fields (ints and fractions
take a fraction-free integer path, other fields a generic one).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Iterable


def _is_zero(v) -> bool:
    return not v


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = {} if cols is None else cols

    # construction -------------------------------------------------------------
    @classmethod
    def identity(cls, n: int, one=1) -> "SparseMatrix":
        return cls(n, n, {j: {j: one} for j in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, Any]]) -> "SparseMatrix":
        cols: dict = {}
        for i, j, v in entries:
            col = cols.setdefault(j, {})
            s = col.get(i, 0) + v
            if s:
                col[i] = s
            else:
                col.pop(i, None)
        return cls(nrows, ncols, {j: c for j, c in cols.items() if c})

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls.from_entries(nrows, ncols, ((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v))

    @classmethod
    def diagonal(cls, values) -> "SparseMatrix":
        values = list(values)
        return cls(len(values), len(values), {j: {j: v} for j, v in enumerate(values) if v})

    @classmethod
    def from_columns(cls, nrows: int, columns: list[dict]) -> "SparseMatrix":
        return cls(nrows, len(columns), {j: dict(c) for j, c in enumerate(columns) if c})

    # access ------------------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> dict:
        return self.cols.get(j, {})

    def __getitem__(self, ij):
        i, j = ij
        return self.cols.get(j, {}).get(i, 0)

    def entries(self):
        for j in sorted(self.cols):
            col = self.cols[j]
            for i in sorted(col):
                yield i, j, col[i]

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def is_zero(self) -> bool:
        return not self.cols

    def to_dense(self, zero=0) -> list[list]:
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def rows(self) -> dict:
        out: dict = {}
        for j, col in self.cols.items():
            for i, v in col.items():
                out.setdefault(i, {})[j] = v
        return out

    # arithmetic ----------------------------------------------------------------------
    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for k, x in vec.items():
            col = self.cols.get(k)
            if not col or not x:
                continue
            for i, v in col.items():
                s = out.get(i, 0) + v * x
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = {}
        for j, col in other.cols.items():
            c = self.apply(col)
            if c:
                cols[j] = c
        return SparseMatrix(self.nrows, other.ncols, cols)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            tgt = cols.setdefault(j, {})
            for i, v in col.items():
                s = tgt.get(i, 0) + (v if sign > 0 else -v)
                if s:
                    tgt[i] = s
                else:
                    tgt.pop(i, None)
            if not tgt:
                del cols[j]
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseMatrix":
        if not c:
            return SparseMatrix(self.nrows, self.ncols)
        return self.map(lambda v: c * v)

    def __rmul__(self, c):
        return self.scale(c)

    def map(self, fn: Callable) -> "SparseMatrix":
        cols = {}
        for j, col in self.cols.items():
            c = {}
            for i, v in col.items():
                w = fn(v)
                if w:
                    c[i] = w
            if c:
                cols[j] = c
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, self.rows())

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Kronecker product; the first factor indexes the most significant digit."""
        R, C = other.nrows, other.ncols
        cols = {}
        for j, col in self.cols.items():
            for l, ocol in other.cols.items():
                c = {}
                for i, v in col.items():
                    for k, w in ocol.items():
                        p = v * w
                        if p:
                            c[i * R + k] = p
                if c:
                    cols[j * C + l] = c
        return SparseMatrix(self.nrows * R, self.ncols * C, cols)

    def submatrix(self, rows: list[int], cols: list[int]) -> "SparseMatrix":
        rpos = {r: a for a, r in enumerate(rows)}
        out = {}
        for b, j in enumerate(cols):
            col = self.cols.get(j)
            if not col:
                continue
            c = {rpos[i]: v for i, v in col.items() if i in rpos}
            if c:
                out[b] = c
        return SparseMatrix(len(rows), len(cols), out)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def block_diag(blocks: list[SparseMatrix]) -> SparseMatrix:
    r0 = c0 = 0
    cols = {}
    for b in blocks:
        for j, col in b.cols.items():
            cols[c0 + j] = {r0 + i: v for i, v in col.items()}
        r0 += b.nrows
        c0 += b.ncols
    return SparseMatrix(r0, c0, cols)


def first_difference(A: SparseMatrix, B: SparseMatrix):
    """First (row, col, a, b) where A and B differ, or None."""
    D = A - B
    for i, j, _ in D.entries():
        return i, j, A[i, j], B[i, j]
    return None


# --- elimination -------------------------------------------------------------------------


@dataclass
class EchelonResult:
    """Column echelon data of a matrix processed left to right.

    ``pivots`` lists the columns independent of all earlier ones.  For every other
    column j, ``kernel[j]`` is a vector (col -> coefficient) supported on j and
    earlier pivot columns with M @ v = 0, and ``normal_form[j]`` writes column j
    as a combination of pivot columns.
    """

    rank: int
    pivots: list[int]
    kernel: dict[int, dict[int, Any]] = field(default_factory=dict)
    normal_form: dict[int, dict[int, Any]] = field(default_factory=dict)

    @property
    def nullity(self) -> int:
        return len(self.kernel)


def _all_integer(M: SparseMatrix) -> bool:
    for col in M.cols.values():
        for v in col.values():
            if type(v) is not int:
                return False
    return True


def _scale_to_integers(M: SparseMatrix) -> SparseMatrix | None:
    # clear denominators column by column when entries are rational
    cols = {}
    for j, col in M.cols.items():
        den = 1
        for v in col.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
            elif type(v) is not int:
                return None
        cols[j] = {i: int(v * den) for i, v in col.items()}
    return SparseMatrix(M.nrows, M.ncols, cols)


def column_echelon(M: SparseMatrix, order: list[int] | None = None, want_kernel: bool = True) -> EchelonResult:
    """Incremental column echelon of M over its fraction field.

    Columns are inserted in ``order`` (default: natural order).  Integer and
    rational matrices use fraction-free integer arithmetic with content
    reduction; other scalar types use field division.
    """
    order = list(range(M.ncols)) if order is None else list(order)
    scaled = M if _all_integer(M) else _scale_to_integers(M)
    if scaled is not None:
        res = _echelon_int(scaled, order, want_kernel)
        if scaled is not M:
            # kernel vectors of the column-rescaled matrix, mapped back
            for j, vec in res.kernel.items():
                res.kernel[j] = _rescale_back(M, scaled, vec)
            res.normal_form = {j: _normal_form(vec, j) for j, vec in res.kernel.items()}
        return res
    return _echelon_field(M, order, want_kernel)


def _rescale_back(M, scaled, vec):
    out = {}
    for c, x in vec.items():
        col = M.cols.get(c)
        if not col:
            out[c] = Fraction(x)
            continue
        i = next(iter(col))
        out[c] = Fraction(x) * Fraction(scaled.cols[c][i]) / Fraction(col[i])
    return out


def _normal_form(vec: dict, j: int) -> dict:
    lead = vec[j]
    return {c: Fraction(-x) / lead if isinstance(x, (int, Fraction)) else -x / lead for c, x in vec.items() if c != j}


def _echelon_int(M: SparseMatrix, order, want_kernel) -> EchelonResult:
    basis: dict[int, tuple[dict, dict]] = {}  # pivot row -> (vector, combination)
    pivots: list[int] = []
    kernel: dict = {}
    for j in order:
        v = dict(M.cols.get(j, {}))
        e = {j: 1} if want_kernel else {}
        while v:
            p = min(v)
            entry = basis.get(p)
            if entry is None:
                break
            w, ew = entry
            a, b = w[p], v[p]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            # v <- fa*v - fb*w, the same on the combination
            v = _axpy_int(fa, v, -fb, w)
            if want_kernel:
                e = _axpy_int(fa, e, -fb, ew)
            c = 0
            for x in v.values():
                c = gcd(c, x)
                if c == 1:
                    break
            if c != 1 and want_kernel:
                for x in e.values():
                    c = gcd(c, x)
                    if c == 1:
                        break
            if c > 1:
                v = {k: x // c for k, x in v.items()}
                e = {k: x // c for k, x in e.items()}
        if v:
            basis[min(v)] = (v, e)
            pivots.append(j)
        elif want_kernel:
            if e.get(j, 0) < 0:
                e = {k: -x for k, x in e.items()}
            kernel[j] = e
    res = EchelonResult(rank=len(pivots), pivots=pivots, kernel=kernel)
    res.normal_form = {j: _normal_form(vec, j) for j, vec in kernel.items()}
    return res


def _axpy_int(a: int, x: dict, b: int, y: dict) -> dict:
    out = {k: a * v for k, v in x.items()}
    for k, v in y.items():
        s = out.get(k, 0) + b * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _echelon_field(M: SparseMatrix, order, want_kernel) -> EchelonResult:
    basis: dict = {}
    pivots: list[int] = []
    kernel: dict = {}
    for j in order:
        v = dict(M.cols.get(j, {}))
        one = _one_like(next(iter(v.values()))) if v else 1
        e = {j: one} if want_kernel else {}
        while v:
            p = min(v)
            entry = basis.get(p)
            if entry is None:
                break
            w, ew = entry
            f = v[p] / w[p]
            v = _axpy_field(v, -f, w)
            if want_kernel:
                e = _axpy_field(e, -f, ew)
        if v:
            basis[min(v)] = (v, e)
            pivots.append(j)
        elif want_kernel:
            kernel[j] = e
    res = EchelonResult(rank=len(pivots), pivots=pivots, kernel=kernel)
    res.normal_form = {j: _normal_form(vec, j) for j, vec in kernel.items()}
    return res


def _one_like(x):
    return x * 0 + 1


def _axpy_field(x: dict, f, y: dict) -> dict:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + f * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def rank(M: SparseMatrix) -> int:
    return column_echelon(M, want_kernel=False).rank


def kernel_basis(M: SparseMatrix) -> list[dict]:
    return list(column_echelon(M).kernel.values())


def in_column_space(M: SparseMatrix, vec: dict) -> bool:
    base = rank(M)
    aug = SparseMatrix(M.nrows, M.ncols + 1, dict(M.cols))
    if vec:
        aug.cols[M.ncols] = dict(vec)
    return rank(aug) == base


def span_equal(vectors_a: list[dict], vectors_b: list[dict], dim: int) -> bool:
    """Whether two finite families of vectors in a space of dimension ``dim`` span the same subspace."""
    A = SparseMatrix.from_columns(dim, vectors_a)
    B = SparseMatrix.from_columns(dim, vectors_b)
    both = SparseMatrix.from_columns(dim, list(vectors_a) + list(vectors_b))
    ra, rb, rab = rank(A), rank(B), rank(both)
    return ra == rb == rab


def connected_blocks(n: int, edges_src, edges_dst) -> list[list[int]]:
    """Connected components of an undirected graph on range(n), each sorted ascending."""
    import numpy as np
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    src = np.asarray(edges_src, dtype=np.int64)
    dst = np.asarray(edges_dst, dtype=np.int64)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    k, labels = connected_components(graph, directed=False)
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(k + 1))
    comps = [order[bounds[c]:bounds[c + 1]].tolist() for c in range(k)]
    comps.sort(key=lambda c: c[0])
    return comps
