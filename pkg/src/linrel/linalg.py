"""Exact matrix kernel: echelon forms, rank, nullspace and linear solving.

Everything here works over a :class:`~linrel.field.FieldSpec`.  The public
functions take :class:`Matrix` values; the underscore helpers work on plain
sequences of coordinate tuples and are what the subspace code calls in its
inner loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .exceptions import DimensionError
from .field import QQ, FieldSpec

Vector = tuple


@dataclass(frozen=True)
class Matrix:
    """An immutable ``nrows x ncols`` matrix over ``field``.

    ``ncols`` is stored explicitly so that matrices with no rows keep their
    shape.
    """

    field: FieldSpec
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows, field: FieldSpec = QQ, ncols: Optional[int] = None) -> "Matrix":
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        return cls(field, rows, ncols)

    @classmethod
    def from_columns(cls, columns, nrows: int, field: FieldSpec = QQ) -> "Matrix":
        columns = [tuple(col) for col in columns]
        if any(len(c) != nrows for c in columns):
            raise DimensionError("column length does not match nrows")
        rows = tuple(tuple(field(c[i]) for c in columns) for i in range(nrows))
        return cls(field, rows, len(columns))

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "Matrix":
        return cls(field, _identity_rows(n, field), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec = QQ) -> "Matrix":
        z = field.zero
        return cls(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    @property
    def columns(self) -> tuple:
        return tuple(zip(*self.rows)) if self.rows else ((),) * self.ncols

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.columns, self.nrows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check_same(self, other: "Matrix"):
        if self.field != other.field:
            raise DimensionError("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        red = self.field.reduce
        rows = tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix(self.field, rows, self.ncols)

    def __neg__(self) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, tuple(tuple(red(-a) for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check_same(other)
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns
            rows = tuple(tuple(_dot(r, c, self.field) for c in cols) for r in self.rows)
            return Matrix(self.field, rows, other.ncols)
        return matvec(self, other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        red = self.field.reduce
        return Matrix(self.field, tuple(tuple(red(c * a) for a in r) for r in self.rows), self.ncols)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"Matrix({self.field!r}, [{body}])"


def _identity_rows(n: int, field: FieldSpec) -> tuple:
    z, o = field.zero, field.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def _dot(u, v, field: FieldSpec):
    s = field.zero
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return field.reduce(s)


def matvec(A: Matrix, x) -> Vector:
    if len(x) != A.ncols:
        raise DimensionError(f"vector of length {len(x)} against {A.shape} matrix")
    return tuple(_dot(r, x, A.field) for r in A.rows)


# -- vector helpers used by the subspace code ----------------------------------


def unit_vectors(n: int, field: FieldSpec) -> tuple:
    return _identity_rows(n, field)


def lincomb(vectors: Sequence[Vector], coeffs, length: int, field: FieldSpec) -> Vector:
    """``sum(c * v)`` for the given coefficient list."""
    acc = [field.zero] * length
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                acc[i] += c * a
    if field.p is None:
        return tuple(acc)
    p = field.p
    return tuple(x % p for x in acc)


def _rref(vectors: Sequence[Vector], length: int, field: FieldSpec):
    """Reduced row echelon form of the given vectors, treated as rows.

    Returns ``(rows, pivots)`` with zero rows dropped.  Pivot positions are the
    first nonzero coordinate of each row, strictly increasing, every pivot is
    1 and every other row vanishes in a pivot position.
    """
    rows = [list(v) for v in vectors if any(v)]
    p = field.p
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(length):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = field.inv(lead)
            if p is None:
                prow = [a * inv for a in prow]
            else:
                prow = [a * inv % p for a in prow]
            rows[r] = prow
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            if p is None:
                rows[i] = [a - f * b if b else a for a, b in zip(row, prow)]
            else:
                rows[i] = [(a - f * b) % p if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in rows[:r]], pivots


@lru_cache(maxsize=1 << 16)
def _canonical_columns(columns: tuple, length: int, field: FieldSpec) -> tuple:
    rows, _ = _rref(columns, length, field)
    return tuple(rows)


def canonical_basis(vectors, length: int, field: FieldSpec) -> tuple:
    """Canonical column-echelon basis of ``span(vectors)`` as a tuple of columns."""
    return _canonical_columns(tuple(vectors), length, field)


def _nullspace_vectors(rows: Sequence[Vector], ncols: int, field: FieldSpec) -> list:
    """A (non-canonical) basis of ``{x : row . x = 0 for every row}``."""
    red, pivots = _rref(rows, ncols, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    zero, one = field.zero, field.one
    p = field.p
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, pc in zip(red, pivots):
            a = row[f]
            if a:
                x[pc] = -a if p is None else (-a) % p
        basis.append(tuple(x))
    return basis


# -- public operations ----------------------------------------------------------


def column_echelon(M: Matrix):
    """Canonical column-echelon form of ``M``.

    Returns ``(canonical, pivot_rows, rank)``.  ``canonical`` spans the same
    column space as ``M`` with zero columns removed; its pivots are 1, sit at
    strictly increasing rows, and each pivot row is zero in every other
    column.  Two matrices have the same column span exactly when their
    canonical forms are equal.
    """
    cols, pivots = _rref(M.columns, M.nrows, M.field)
    canon = Matrix.from_columns(cols, M.nrows, M.field) if cols else Matrix.zeros(M.nrows, 0, M.field)
    return canon, pivots, len(pivots)


def rank(M: Matrix) -> int:
    return len(_rref(M.rows, M.ncols, M.field)[1])


def nullspace(M: Matrix) -> Matrix:
    """Canonical basis (as columns) of ``{v : M v = 0}``."""
    vecs = _nullspace_vectors(M.rows, M.ncols, M.field)
    cols = canonical_basis(vecs, M.ncols, M.field)
    if not cols:
        return Matrix.zeros(M.ncols, 0, M.field)
    return Matrix.from_columns(cols, M.ncols, M.field)


def solve(A: Matrix, b) -> Optional[Vector]:
    """Some ``x`` with ``A x = b``, or None when ``b`` is outside the column span."""
    field = A.field
    if len(b) != A.nrows:
        raise DimensionError(f"right-hand side of length {len(b)} for {A.shape} system")
    b = [field(x) for x in b]
    aug = [tuple(r) + (bi,) for r, bi in zip(A.rows, b)]
    red, pivots = _rref(aug, A.ncols + 1, field)
    if pivots and pivots[-1] == A.ncols:
        return None
    x = [field.zero] * A.ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return tuple(x)


def inverse(A: Matrix) -> Matrix:
    if A.nrows != A.ncols:
        raise DimensionError("only square matrices are invertible")
    n = A.nrows
    ident = _identity_rows(n, A.field)
    aug = [tuple(r) + e for r, e in zip(A.rows, ident)]
    red, pivots = _rref(aug, 2 * n, A.field)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix(A.field, tuple(row[n:] for row in red), n)
