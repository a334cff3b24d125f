"""Subspaces of K^n in canonical form, and the lattice operations on them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .exceptions import DimensionError, PreconditionError
from .field import QQ, FieldSpec
from .linalg import Matrix, _nullspace_vectors, canonical_basis, lincomb, unit_vectors

ENUMERATION_GUARD = 1 << 20


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field ** ambient``.

    ``basis`` holds the canonical column-echelon basis as a tuple of
    coordinate tuples, so equality of subspaces is equality of instances.
    Build instances with :func:`span` (or the ``zero``/``full`` helpers);
    the constructor trusts that ``basis`` is already canonical.
    """

    field: FieldSpec
    ambient: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient

    @property
    def pivots(self) -> tuple:
        return _pivots(self.basis)

    def matrix(self) -> Matrix:
        """The basis as the columns of an ``ambient x dim`` matrix."""
        if not self.basis:
            return Matrix.zeros(self.ambient, 0, self.field)
        return Matrix.from_columns(self.basis, self.ambient, self.field)

    def __contains__(self, vector) -> bool:
        vector = tuple(vector)
        if len(vector) != self.ambient:
            raise DimensionError(f"vector of length {len(vector)} in {self.ambient}-space")
        return _member(self, tuple(self.field(a) for a in vector))

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient or self.field != other.field:
            raise DimensionError(
                f"subspaces of {self.field!r}^{self.ambient} and {other.field!r}^{other.ambient}"
            )

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def __ge__(self, other: "Subspace") -> bool:
        return contains(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __repr__(self):
        gens = ", ".join("(" + ", ".join(str(a) for a in b) + ")" for b in self.basis)
        return f"span[{gens}] in {self.field!r}^{self.ambient}"


@lru_cache(maxsize=1 << 14)
def _pivots(basis: tuple) -> tuple:
    return tuple(next(i for i, a in enumerate(b) if a) for b in basis)


def span(vectors: Iterable, ambient: int, field: FieldSpec = QQ) -> Subspace:
    vecs = []
    for v in vectors:
        v = tuple(field(a) for a in v)
        if len(v) != ambient:
            raise DimensionError(f"generator of length {len(v)} in {ambient}-space")
        vecs.append(v)
    return Subspace(field, ambient, canonical_basis(vecs, ambient, field))


def _span_raw(vectors, ambient: int, field: FieldSpec) -> Subspace:
    # Internal fast path: vectors are already tuples of field elements.
    return Subspace(field, ambient, canonical_basis(vectors, ambient, field))


def zero(ambient: int, field: FieldSpec = QQ) -> Subspace:
    return Subspace(field, ambient, ())


def full(ambient: int, field: FieldSpec = QQ) -> Subspace:
    return Subspace(field, ambient, unit_vectors(ambient, field))


def coordinate(indices: Iterable[int], ambient: int, field: FieldSpec = QQ) -> Subspace:
    """``span{e_i : i in indices}`` (0-based)."""
    e = unit_vectors(ambient, field)
    return _span_raw([e[i] for i in indices], ambient, field)


@lru_cache(maxsize=1 << 16)
def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    if V.is_zero or U.is_full:
        return U
    if U.is_zero or V.is_full:
        return V
    return _span_raw(U.basis + V.basis, U.ambient, U.field)


@lru_cache(maxsize=1 << 16)
def intersect(U: Subspace, V: Subspace) -> Subspace:
    """``U & V`` via the nullspace of ``[B_U | -B_V]`` mapped back through ``B_U``."""
    U._check(V)
    if U.is_zero or V.is_full:
        return U
    if V.is_zero or U.is_full:
        return V
    field = U.field
    n, k = U.ambient, U.dim
    neg = tuple(tuple(field.reduce(-a) for a in v) for v in V.basis)
    cols = U.basis + neg
    rows = list(zip(*cols))
    kernel = _nullspace_vectors(rows, len(cols), field)
    images = [lincomb(U.basis, w[:k], n, field) for w in kernel]
    return _span_raw(images, n, field)


def _member(U: Subspace, v: tuple) -> bool:
    # Reduce against the canonical basis: pivot coordinates give the coefficients.
    coeffs = [v[i] for i in U.pivots]
    return lincomb(U.basis, coeffs, U.ambient, U.field) == v


def contains(U: Subspace, V: Subspace) -> bool:
    """True when ``V`` is a subspace of ``U``."""
    U._check(V)
    if V.dim > U.dim:
        return False
    return all(_member(U, v) for v in V.basis)


def is_direct(U: Subspace, V: Subspace) -> bool:
    return intersect(U, V).is_zero


def complement_within(U: Subspace, W: Subspace) -> Subspace:
    """A subspace ``C`` with ``U & C == 0`` and ``U + C == W``.

    Deterministic: the canonical basis columns of ``W`` are scanned left to
    right and kept whenever they increase the rank of what has been kept so
    far together with ``U``.
    """
    U._check(W)
    if not contains(W, U):
        raise PreconditionError("complement_within requires U to be contained in W")
    kept = []
    current = U
    for w in W.basis:
        if current.dim == W.dim:
            break
        if not _member(current, w):
            kept.append(w)
            current = _span_raw(current.basis + (w,), W.ambient, W.field)
    return _span_raw(kept, W.ambient, W.field)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=64)
def _all_subspaces(field: FieldSpec, n: int) -> tuple:
    p = field.p
    out = []
    for k in range(n + 1):
        batch = []
        for piv in itertools.combinations(range(n), k):
            pivset = set(piv)
            # column j: 1 at piv[j], free below it except at other pivot rows
            free = [(j, i) for j, r in enumerate(piv) for i in range(r + 1, n) if i not in pivset]
            for values in itertools.product(range(p), repeat=len(free)):
                cols = [[0] * n for _ in range(k)]
                for j, r in enumerate(piv):
                    cols[j][r] = 1
                for (j, i), a in zip(free, values):
                    cols[j][i] = a
                batch.append(tuple(tuple(c) for c in cols))
        batch.sort()
        out.extend(Subspace(field, n, b) for b in batch)
    return tuple(out)


def enumerate_subspaces(field: FieldSpec, ambient: int) -> Iterator[Subspace]:
    """Every subspace of ``GF(p)^ambient`` exactly once.

    Ordered by dimension, then lexicographically by canonical basis.
    """
    if not field.is_prime_field:
        raise PreconditionError("subspace enumeration needs a prime field")
    if field.p ** ambient > ENUMERATION_GUARD:
        raise PreconditionError(f"{field!r}^{ambient} exceeds the enumeration guard")
    return iter(_all_subspaces(field, ambient))
