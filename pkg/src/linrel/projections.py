"""Idempotent relations, multivalued projections and linear selections."""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import NamedTuple, Optional

from . import subspace as sub
from .exceptions import DimensionError, PreconditionError
from .relation import (
    LinearRelation,
    compose,
    diagonal,
    intersection,
    rect,
    subspace_sum,
)
from .subspace import Subspace


@dataclass(frozen=True)
class Kind:
    operator: bool
    everywhere_defined: bool
    idempotent: bool
    super_idempotent: bool
    multivalued_projection: bool
    projection: bool

    def flags(self) -> list:
        return [f.name for f in fields(self) if getattr(self, f.name)]


class SelectionWitness(NamedTuple):
    selection: LinearRelation
    complement_used: Subspace
    mul_part: Subspace


def mp(M: Subspace, N: Subspace) -> LinearRelation:
    """The multivalued projection ``{(m + n, m)}`` with range ``M`` and kernel ``N``."""
    M._check(N)
    zero = (M.field.zero,) * M.ambient
    gens = [v + v for v in M.basis] + [w + zero for w in N.basis]
    return LinearRelation(M.ambient, M.ambient, sub._span_raw(gens, 2 * M.ambient, M.field))


def projection(S: Subspace, N: Subspace) -> LinearRelation:
    """The projection onto ``S`` along ``N``, defined on ``S + N``."""
    if not sub.is_direct(S, N):
        raise PreconditionError("range and kernel of a projection must intersect trivially")
    return mp(S, N)


def _require_endo(T: LinearRelation):
    if not T.is_endo:
        raise DimensionError(f"expected a relation on one space, got {T.n}->{T.m}")


def is_idempotent(T: LinearRelation) -> bool:
    _require_endo(T)
    return compose(T, T) == T


def is_super_idempotent(T: LinearRelation) -> bool:
    _require_endo(T)
    return T <= compose(T, T)


def is_mp(T: LinearRelation) -> bool:
    return is_idempotent(T) and T.ran <= T.dom


def is_projection(T: LinearRelation) -> bool:
    return T.is_operator and is_idempotent(T)


def classify(T: LinearRelation) -> Kind:
    _require_endo(T)
    square = compose(T, T)
    idem = square == T
    return Kind(
        operator=T.is_operator,
        everywhere_defined=T.is_everywhere_defined,
        idempotent=idem,
        super_idempotent=T <= square,
        multivalued_projection=idem and T.ran <= T.dom,
        projection=idem and T.is_operator,
    )


def canonical_idempotent_decomposition(Q: LinearRelation):
    """Split an idempotent as ``mp(ran Q & dom Q, ker Q) +^ ({0} x mul Q)``.

    Returns ``(core, mul_part)``.
    """
    if not is_idempotent(Q):
        raise PreconditionError("relation is not idempotent")
    core = mp(Q.ran & Q.dom, Q.ker)
    if subspace_sum(core, rect(sub.zero(Q.n, Q.field), Q.mul)) != Q:
        raise AssertionError("idempotent decomposition did not reassemble")
    return core, Q.mul


def linear_selection(T: LinearRelation, S: Optional[Subspace] = None) -> SelectionWitness:
    """An operator part ``T0`` of ``T`` with ``T = T0 +^ ({0} x mul T)``.

    ``S`` is the range of the selection; it must satisfy ``ran T = S (+) mul T``
    and defaults to the greedy complement of ``mul T`` in ``ran T``.  The
    selection is ``Q T`` where ``Q`` projects ``ran T`` onto ``S`` along
    ``mul T``.
    """
    ran, mul = T.ran, T.mul
    if S is None:
        S = sub.complement_within(mul, ran)
    elif not (sub.is_direct(S, mul) and S + mul == ran):
        raise PreconditionError("selection range must be a complement of mul T in ran T")
    Q = mp(S, mul)
    T0 = compose(Q, T)
    return SelectionWitness(T0, S, mul)


def is_selection_of(T0: LinearRelation, T: LinearRelation) -> bool:
    return T0.is_operator and T0 <= T and T0.dom == T.dom


def fixed_space(T: LinearRelation) -> Subspace:
    """``{x : (x, x) in T}``."""
    _require_endo(T)
    return intersection(T, diagonal(sub.full(T.n, T.field))).dom


class SelectionForm(NamedTuple):
    P0: LinearRelation
    mul_part: Subspace
    kind: Kind
    idempotent_condition: bool
    mp_condition: bool


def selection_form_decomposition(T: LinearRelation) -> SelectionForm:
    """Write a super-idempotent ``T`` as ``P0 +^ ({0} x mul T)`` with ``P0`` a projection.

    ``P0`` projects ``dom T`` onto a complement of ``ker T`` inside the fixed
    space of ``T``, along ``ker T``.  Besides the decomposition this reports the
    two membership tests read off it: idempotency
    (``mul T & dom P0 == ker P0 & (ran P0 + mul T)``) and being a multivalued
    projection (``mul T <= ker P0``).
    """
    kind = classify(T)
    if not kind.super_idempotent:
        raise PreconditionError("relation is not super-idempotent")
    fixed, ker, mul = fixed_space(T), T.ker, T.mul
    if fixed + ker != T.dom:
        raise AssertionError("super-idempotent without a projection selection")
    rng = sub.complement_within(fixed & ker, fixed)
    P0 = mp(rng, ker)
    if subspace_sum(P0, rect(sub.zero(T.n, T.field), mul)) != T:
        raise AssertionError("selection form did not reassemble")
    idem_cond = (mul & P0.dom) == (P0.ker & (P0.ran + mul))
    mp_cond = mul <= P0.ker
    return SelectionForm(P0, mul, kind, idem_cond, mp_cond)


def assemble(P0: LinearRelation, T: Subspace) -> LinearRelation:
    """``P0 +^ ({0} x T)``."""
    return subspace_sum(P0, rect(sub.zero(P0.n, P0.field), T))


def mp_times_operator(T: LinearRelation):
    """Factor any relation as ``M T0`` with ``M`` a multivalued projection and ``T0`` an operator.

    Returns ``(M, T0)``.
    """
    ran, mul = T.ran, T.mul
    S = sub.complement_within(mul, ran)
    Q = mp(S, mul)
    T0 = compose(Q, T)
    M = subspace_sum(Q, rect(sub.zero(T.m, T.field), mul))
    if compose(M, T0) != T:
        raise AssertionError("multivalued projection times selection did not recompose")
    return M, T0


def commuting_mp_product(P: LinearRelation, Q: LinearRelation) -> LinearRelation:
    """``PQ`` for commuting multivalued projections, checked against its closed form."""
    if not (is_mp(P) and is_mp(Q)):
        raise PreconditionError("both factors must be multivalued projections")
    PQ = compose(P, Q)
    if PQ != compose(Q, P):
        raise PreconditionError("multivalued projections do not commute")
    expected = mp(P.ran & Q.ran, Q.ker + (Q.ran & P.ker))
    if PQ != expected:
        raise AssertionError("commuting product differs from its closed form")
    return PQ
