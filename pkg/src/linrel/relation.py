"""Linear relations (multivalued linear maps) between coordinate spaces.

A relation ``T`` from ``K^n`` to ``K^m`` is a subspace of ``K^(n+m)``; the
first ``n`` coordinates of a graph vector are the argument, the last ``m``
the value.  Relations are stored by their canonical graph, so ``==`` is
equality of relations.

Composition follows operator notation: ``compose(R, T)`` (also ``R @ T``)
applies ``T`` first.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import NamedTuple, Optional

from . import subspace as sub
from .exceptions import DimensionError
from .field import QQ, FieldSpec
from .linalg import Matrix, _nullspace_vectors, _rref, lincomb, unit_vectors
from .subspace import Subspace, _span_raw


class RelationParts(NamedTuple):
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


@dataclass(frozen=True, eq=False)
class LinearRelation:
    n: int
    m: int
    graph: Subspace
    _hash: int = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.graph.ambient != self.n + self.m:
            raise DimensionError(f"graph lives in {self.graph.ambient}-space, expected {self.n + self.m}")
        object.__setattr__(self, "_hash", hash((self.n, self.m, self.graph)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self._hash == other._hash and self.n == other.n and self.m == other.m and self.graph == other.graph

    @property
    def field(self) -> FieldSpec:
        return self.graph.field

    @property
    def is_endo(self) -> bool:
        return self.n == self.m

    # -- the four parts -------------------------------------------------------

    @cached_property
    def _blocks(self):
        n = self.n
        xs = [g[:n] for g in self.graph.basis]
        ys = [g[n:] for g in self.graph.basis]
        return xs, ys

    @cached_property
    def dom(self) -> Subspace:
        return _span_raw(self._blocks[0], self.n, self.field)

    @cached_property
    def ran(self) -> Subspace:
        return _span_raw(self._blocks[1], self.m, self.field)

    @cached_property
    def ker(self) -> Subspace:
        xs, ys = self._blocks
        return _span_raw(_mapped_kernel(ys, xs, self.m, self.n, self.field), self.n, self.field)

    @cached_property
    def mul(self) -> Subspace:
        xs, ys = self._blocks
        return _span_raw(_mapped_kernel(xs, ys, self.n, self.m, self.field), self.m, self.field)

    def parts(self) -> RelationParts:
        return RelationParts(self.dom, self.ran, self.ker, self.mul)

    @property
    def is_operator(self) -> bool:
        return self.mul.is_zero

    @property
    def is_everywhere_defined(self) -> bool:
        return self.dom.is_full

    # -- pointwise evaluation -----------------------------------------------

    def __call__(self, x):
        """``T(x)`` as ``(y, mul T)`` meaning the coset ``y + mul T``; None off the domain."""
        x = tuple(self.field(a) for a in x)
        xs, ys = self._blocks
        coeffs = _solve_in_span(xs, x, self.n, self.field)
        if coeffs is None:
            return None
        return lincomb(ys, coeffs, self.m, self.field), self.mul

    # -- operators ------------------------------------------------------------

    def __matmul__(self, other: "LinearRelation") -> "LinearRelation":
        return compose(self, other)

    def __le__(self, other: "LinearRelation") -> bool:
        """Graph inclusion."""
        _check_same(self, other)
        return sub.contains(other.graph, self.graph)

    def __ge__(self, other: "LinearRelation") -> bool:
        return other <= self

    def __and__(self, other: "LinearRelation") -> "LinearRelation":
        return intersection(self, other)

    def inverse(self) -> "LinearRelation":
        return inverse(self)

    def __repr__(self):
        xs, ys = self._blocks
        gens = ", ".join(
            "(" + ",".join(str(a) for a in x) + " | " + ",".join(str(b) for b in y) + ")" for x, y in zip(xs, ys)
        )
        return f"LinearRelation({self.field!r}^{self.n} -> {self.field!r}^{self.m}: [{gens}])"


def _mapped_kernel(first, second, len_first, len_second, field):
    """``second @ nullspace(first)`` for generators split into two blocks."""
    if not first:
        return list(second)
    rows = list(zip(*first))
    kernel = _nullspace_vectors(rows, len(first), field)
    return [lincomb(second, w, len_second, field) for w in kernel]


def _solve_in_span(vectors, target, length, field):
    cols = list(vectors)
    if not cols:
        return None if any(target) else ()
    aug_rows = [tuple(c[i] for c in cols) + (target[i],) for i in range(length)]
    red, pivots = _rref(aug_rows, len(cols) + 1, field)
    if pivots and pivots[-1] == len(cols):
        return None
    sol = [field.zero] * len(cols)
    for row, pc in zip(red, pivots):
        sol[pc] = row[-1]
    return sol


def _check_same(T: LinearRelation, S: LinearRelation):
    if T.n != S.n or T.m != S.m or T.field != S.field:
        raise DimensionError(
            f"relations {T.field!r}^{T.n}->{T.m} and {S.field!r}^{S.n}->{S.m} are not comparable"
        )


def _pairs(xs, ys, n, m, field) -> LinearRelation:
    return LinearRelation(n, m, _span_raw([x + y for x, y in zip(xs, ys)], n + m, field))


# -- constructors -------------------------------------------------------------


def from_pairs(pairs, n: int, m: int, field: FieldSpec = QQ) -> LinearRelation:
    """Relation spanned by the given ``(x, y)`` pairs."""
    flat = []
    for x, y in pairs:
        if len(x) != n or len(y) != m:
            raise DimensionError(f"pair of lengths ({len(x)}, {len(y)}) for a relation {n}->{m}")
        flat.append(tuple(x) + tuple(y))
    return LinearRelation(n, m, sub.span(flat, n + m, field))


def from_operator(A: Matrix) -> LinearRelation:
    """Graph ``{(x, A x)}`` of an ``m x n`` matrix, as a relation ``K^n -> K^m``."""
    m, n = A.shape
    field = A.field
    e = unit_vectors(n, field)
    cols = A.columns
    return _pairs(e, cols, n, m, field)


def rect(N: Subspace, S: Subspace) -> LinearRelation:
    """The product relation ``N x S``."""
    if N.field != S.field:
        raise DimensionError("factors over different fields")
    n, m, field = N.ambient, S.ambient, N.field
    zx = (field.zero,) * n
    zy = (field.zero,) * m
    gens = [v + zy for v in N.basis] + [zx + w for w in S.basis]
    return LinearRelation(n, m, _span_raw(gens, n + m, field))


def identity(n: int, field: FieldSpec = QQ) -> LinearRelation:
    e = unit_vectors(n, field)
    return _pairs(e, e, n, n, field)


def diagonal(N: Subspace) -> LinearRelation:
    """The identity restricted to ``N``: ``{(x, x) : x in N}``."""
    return _pairs(N.basis, N.basis, N.ambient, N.ambient, N.field)


def zero_relation(n: int, m: int, field: FieldSpec = QQ) -> LinearRelation:
    """``{(0, 0)}``."""
    return LinearRelation(n, m, sub.zero(n + m, field))


def zero_operator(n: int, m: int, field: FieldSpec = QQ) -> LinearRelation:
    """The everywhere defined zero map ``{(x, 0)}``."""
    return rect(sub.full(n, field), sub.zero(m, field))


def full_relation(n: int, m: int, field: FieldSpec = QQ) -> LinearRelation:
    return LinearRelation(n, m, sub.full(n + m, field))


# -- algebra --------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def compose(R: LinearRelation, T: LinearRelation) -> LinearRelation:
    """The product ``RT = {(x, z) : (x, y) in T, (y, z) in R for some y}``."""
    if T.m != R.n or T.field != R.field:
        raise DimensionError(f"cannot compose {R.n}->{R.m} after {T.n}->{T.m}")
    field = T.field
    A, B = T._blocks
    C, D = R._blocks
    k = len(A)
    # (u; v) with B u = C v
    negC = [tuple(field.reduce(-a) for a in c) for c in C]
    cols = list(B) + negC
    if not cols:
        return zero_relation(T.n, R.m, field)
    rows = list(zip(*cols)) if T.m else []
    kernel = _nullspace_vectors(rows, len(cols), field)
    xs = [lincomb(A, w[:k], T.n, field) for w in kernel]
    zs = [lincomb(D, w[k:], R.m, field) for w in kernel]
    return _pairs(xs, zs, T.n, R.m, field)


@lru_cache(maxsize=1 << 14)
def inverse(T: LinearRelation) -> LinearRelation:
    xs, ys = T._blocks
    return _pairs(ys, xs, T.m, T.n, T.field)


@lru_cache(maxsize=1 << 16)
def pointwise_sum(T: LinearRelation, S: LinearRelation) -> LinearRelation:
    """``T + S = {(x, y + z) : (x, y) in T, (x, z) in S}``."""
    _check_same(T, S)
    field = T.field
    At, Bt = T._blocks
    As, Bs = S._blocks
    k = len(At)
    negAs = [tuple(field.reduce(-a) for a in c) for c in As]
    cols = list(At) + negAs
    if not cols:
        return zero_relation(T.n, T.m, field)
    rows = list(zip(*cols)) if T.n else []
    kernel = _nullspace_vectors(rows, len(cols), field)
    xs = [lincomb(At, w[:k], T.n, field) for w in kernel]
    ys = [lincomb(list(Bt) + list(Bs), w, T.m, field) for w in kernel]
    return _pairs(xs, ys, T.n, T.m, field)


def negate(T: LinearRelation) -> LinearRelation:
    """``-T = {(x, -y)}``."""
    xs, ys = T._blocks
    red = T.field.reduce
    return _pairs(xs, [tuple(red(-b) for b in y) for y in ys], T.n, T.m, T.field)


def pointwise_diff(T: LinearRelation, S: LinearRelation) -> LinearRelation:
    """``T - S``."""
    return pointwise_sum(T, negate(S))


@lru_cache(maxsize=1 << 16)
def subspace_sum(T: LinearRelation, S: LinearRelation) -> LinearRelation:
    """``T +^ S``, the sum of the graphs."""
    _check_same(T, S)
    return LinearRelation(T.n, T.m, sub.subspace_sum(T.graph, S.graph))


def subspace_sum_direct(T: LinearRelation, S: LinearRelation) -> Optional[LinearRelation]:
    """The direct graph sum, or None when the graphs meet nontrivially."""
    _check_same(T, S)
    if not sub.is_direct(T.graph, S.graph):
        return None
    return subspace_sum(T, S)


def intersection(T: LinearRelation, S: LinearRelation) -> LinearRelation:
    _check_same(T, S)
    return LinearRelation(T.n, T.m, sub.intersect(T.graph, S.graph))


def image(T: LinearRelation, N: Subspace) -> Subspace:
    """``T(N) = {y : (x, y) in T for some x in N}``; ``T(0)`` is ``mul T``."""
    if N.ambient != T.n or N.field != T.field:
        raise DimensionError(f"subspace of {N.ambient}-space as argument of a relation on {T.n}-space")
    return compose(T, diagonal(N)).ran


def preimage(T: LinearRelation, W: Subspace) -> Subspace:
    return image(inverse(T), W)


def equalizer(R: LinearRelation, S: LinearRelation) -> Optional[Subspace]:
    """``{x : R(x) = S(x)}``, or None when ``mul R != mul S``.

    With equal multivalued parts the cosets ``R(x)`` and ``S(x)`` coincide as
    soon as they share one point, so the set is the domain of the graph
    intersection.
    """
    _check_same(R, S)
    if R.mul != S.mul:
        return None
    return intersection(R, S).dom


def is_operator(T: LinearRelation) -> bool:
    return T.is_operator


def is_everywhere_defined(T: LinearRelation) -> bool:
    return T.is_everywhere_defined


def parts(T: LinearRelation) -> RelationParts:
    return T.parts()


def to_matrix(T: LinearRelation) -> Matrix:
    """Matrix of an everywhere defined operator."""
    if not (T.is_operator and T.is_everywhere_defined):
        raise DimensionError("only everywhere defined operators have a matrix")
    e = unit_vectors(T.n, T.field)
    xs, ys = T._blocks
    # canonical graph of an everywhere defined operator is (e_i, A e_i)
    assert list(xs) == list(e)
    return Matrix.from_columns(ys, T.m, T.field) if ys else Matrix.zeros(T.m, T.n, T.field)
