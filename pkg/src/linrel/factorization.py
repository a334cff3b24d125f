"""Douglas-type solvability and factorizations through a projection.

Solvers for ``R = S X`` come in two flavours.  The Douglas solvers raise
:class:`~linrel.exceptions.CriterionError` naming the violated conditions.
The projection factorizations treat an unsolvable instance as an ordinary
outcome: they return None, and the matching ``*_criterion`` function says
which condition failed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import subspace as sub
from .exceptions import CriterionError, DimensionError, PreconditionError
from .projections import is_projection, is_selection_of, linear_selection, mp
from .relation import (
    LinearRelation,
    compose,
    equalizer,
    image,
    intersection,
    inverse,
    pointwise_diff,
    preimage,
    rect,
)

DOUGLAS_OPERATOR = "douglas_operator"
DOUGLAS_RELATION = "douglas_relation"
RIGHT_PROJECTION = "right_projection"
LEFT_PROJECTION = "left_projection"


@dataclass(frozen=True)
class Criterion:
    """Outcome of a solvability test: which named conditions failed."""

    failed: tuple = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return not self.failed

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class FactorizationWitness:
    """Factors listed left to right, so ``recomposition`` is their product."""

    factors: tuple
    mode: str
    recomposition: LinearRelation
    target: LinearRelation

    @property
    def exact(self) -> bool:
        product = self.factors[-1]
        for F in reversed(self.factors[:-1]):
            product = compose(F, product)
        return product == self.recomposition == self.target


def _require_operator(*rels):
    for T in rels:
        if not T.is_operator:
            raise PreconditionError("operator expected, got a relation with nonzero multivalued part")


def _same_codomain(R: LinearRelation, S: LinearRelation):
    if R.m != S.m or R.field != S.field:
        raise DimensionError("R and S must share a codomain")


# -- Douglas ---------------------------------------------------------------------


def douglas_criterion(R: LinearRelation, S: LinearRelation) -> Criterion:
    """``ran R <= ran S`` and ``mul R == mul S``, the test for an operator solution of ``R = S X``."""
    _same_codomain(R, S)
    failed = []
    if not R.ran <= S.ran:
        failed.append("ran R ⊄ ran S")
    if R.mul != S.mul:
        failed.append("mul R ≠ mul S")
    return Criterion(tuple(failed))


def douglas_operator(R: LinearRelation, S: LinearRelation) -> LinearRelation:
    """Operator ``T`` with ``S T = R`` for operators ``R``, ``S`` with ``ran R <= ran S``.

    ``T`` sends ``x`` to the unique ``y`` in a fixed complement of ``ker S``
    inside ``dom S`` with ``S y = R x``.
    """
    _same_codomain(R, S)
    _require_operator(R, S)
    if not R.ran <= S.ran:
        raise CriterionError(["ran R ⊄ ran S"], "no operator solution exists: ran R ⊄ ran S")
    N = sub.complement_within(S.ker, S.dom)
    T = intersection(compose(inverse(S), R), rect(sub.full(R.n, R.field), N))
    if not T.is_operator or compose(S, T) != R:
        raise AssertionError("Douglas construction failed to recompose")
    return T


def douglas_relation(R: LinearRelation, S: LinearRelation) -> LinearRelation:
    """Operator ``T0`` with ``S T0 = R`` for relations meeting :func:`douglas_criterion`.

    Starts from the relation solution ``S^-1 R`` and cuts it down to an
    operator with a projection that kills ``mul T & dom S``.
    """
    crit = douglas_criterion(R, S)
    if not crit:
        raise CriterionError(crit.failed)
    T = compose(inverse(S), R)
    if T.dom != R.dom or compose(S, T) != R:
        raise AssertionError("S^-1 R is not a solution of R = S X")
    killed = T.mul & S.dom
    keep = sub.complement_within(killed, T.ran & S.dom)
    Q = mp(keep, killed)
    T0 = compose(Q, T)
    if not T0.is_operator or compose(S, T0) != R:
        raise AssertionError("operator part of S^-1 R failed to recompose")
    return T0


def douglas_witness(R: LinearRelation, S: LinearRelation) -> FactorizationWitness:
    if R.is_operator and S.is_operator:
        T, mode = douglas_operator(R, S), DOUGLAS_OPERATOR
    else:
        T, mode = douglas_relation(R, S), DOUGLAS_RELATION
    return FactorizationWitness((S, T), mode, compose(S, T), R)


# -- R = S Q ------------------------------------------------------------------------


def coordinated_selections(R: LinearRelation, S: LinearRelation):
    """Selections ``R0``, ``S0`` of ``R``, ``S`` with ``ran R0 <= ran S0``.

    With ``ran R = S1 (+) mul R`` the range of ``S0`` is ``S1 (+) T1`` where
    ``T1`` completes ``S1 + mul S`` to ``ran S``.  Needs ``ran R <= ran S`` and
    ``mul R == mul S``.
    """
    if not (R.ran <= S.ran and R.mul == S.mul):
        raise PreconditionError("coordinated selections need ran R <= ran S and mul R == mul S")
    S1 = sub.complement_within(R.mul, R.ran)
    T1 = sub.complement_within(S1 + S.mul, S.ran)
    R0 = linear_selection(R, S1).selection
    S0 = linear_selection(S, S1 + T1).selection
    return R0, S0


def right_projection_criterion(R: LinearRelation, S: LinearRelation) -> Criterion:
    """Test for a projection ``Q`` with ``R = S Q``.

    The conditions are ``mul R == mul S`` and ``dom R == E + ker R`` where
    ``E = {x : R(x) == S(x)}``.
    """
    if R.n != S.n or R.m != S.m or R.field != S.field:
        raise DimensionError("R and S must have the same shape")
    E = equalizer(R, S)
    if E is None:
        return Criterion(("mul R ≠ mul S",))
    if E + R.ker != R.dom:
        return Criterion(("dom R ≠ {x: S(x)=R(x)} + ker R",), {"equalizer": E})
    return Criterion((), {"equalizer": E})


def right_projection_factor(R: LinearRelation, S: LinearRelation) -> Optional[LinearRelation]:
    """A projection ``Q`` with ``S Q == R``, or None if there is none.

    ``Q`` is defined on ``dom R``, has kernel ``ker R`` and projects onto a
    complement of ``ker R`` taken inside the equalizer of ``R`` and ``S``.
    """
    crit = right_projection_criterion(R, S)
    if not crit:
        return None
    E = crit.details["equalizer"]
    onto = sub.complement_within(E & R.ker, E & R.dom)
    Q = mp(onto, R.ker)
    if compose(S, Q) != R:
        raise AssertionError("right projection factor failed to recompose")
    return Q


def right_projection_witness(R: LinearRelation, S: LinearRelation) -> Optional[FactorizationWitness]:
    Q = right_projection_factor(R, S)
    if Q is None:
        return None
    return FactorizationWitness((S, Q), RIGHT_PROJECTION, compose(S, Q), R)


# -- R = Q S --------------------------------------------------------------------------


def left_projection_criterion(R: LinearRelation, S: LinearRelation) -> Criterion:
    """Test for a projection ``Q`` with ``R = Q S``, for operators.

    With ``D = S - R`` the conditions are ``ran D & ran R == 0`` and
    ``dom R == S^-1(ran R + ran D)``.
    """
    _require_operator(R, S)
    if R.n != S.n or R.m != S.m:
        raise DimensionError("R and S must have the same shape")
    D = pointwise_diff(S, R)
    failed = []
    if not sub.is_direct(D.ran, R.ran):
        failed.append("ran(S−R) ∩ ran R ≠ {0}")
    if preimage(S, R.ran + D.ran) != R.dom:
        failed.append("dom R ≠ S⁻¹(ran R ∔ ran(S−R))")
    return Criterion(tuple(failed), {"difference": D})


def left_projection_factor_operators(R: LinearRelation, S: LinearRelation) -> Optional[LinearRelation]:
    """The projection onto ``ran R`` along ``ran(S - R)`` when it satisfies ``Q S == R``."""
    crit = left_projection_criterion(R, S)
    if not crit:
        return None
    Q1 = mp(R.ran, crit.details["difference"].ran)
    if compose(Q1, S) != R:
        raise AssertionError("left projection factor failed to recompose")
    return Q1


def _require_projection(Q: LinearRelation):
    if not is_projection(Q):
        raise PreconditionError("Q must be a projection")


def left_projection_verify(R: LinearRelation, S: LinearRelation, Q: LinearRelation) -> bool:
    """``Q S == R`` and ``Q(mul S) == mul R``."""
    _require_projection(Q)
    return compose(Q, S) == R and image(Q, S.mul) == R.mul


def left_projection_witness_transform(
    R: LinearRelation, S: LinearRelation, Q: LinearRelation, S0: Optional[LinearRelation] = None
):
    """Push a selection of ``S`` through a verified ``Q`` to a selection of ``R``.

    Returns ``(R0, S0)`` with ``R0 = Q S0``.
    """
    if not left_projection_verify(R, S, Q):
        raise PreconditionError("Q does not satisfy R = QS and Q(mul S) = mul R")
    if S0 is None:
        S0 = linear_selection(S).selection
    elif not is_selection_of(S0, S):
        raise PreconditionError("S0 is not a linear selection of S")
    R0 = compose(Q, S0)
    if not is_selection_of(R0, R):
        raise AssertionError("Q S0 is not a linear selection of R")
    return R0, S0


def left_projection_from_selections(
    R: LinearRelation, S: LinearRelation, Q: LinearRelation, R0: LinearRelation, S0: LinearRelation
) -> bool:
    """Check ``R = Q S`` from selection data ``R0 = Q S0`` and ``Q(mul S) = mul R``.

    Raises PreconditionError if the selection data is not as described;
    otherwise returns whether ``Q S == R``.  The selection data alone does not
    force this when ``Q`` is not defined on ``mul S``: it always gives
    ``R <= Q S``, and equality once ``mul S <= dom Q``.
    """
    _require_projection(Q)
    if not (is_selection_of(R0, R) and is_selection_of(S0, S)):
        raise PreconditionError("R0 and S0 must be linear selections of R and S")
    if compose(Q, S0) != R0 or image(Q, S.mul) != R.mul:
        raise PreconditionError("selection data does not satisfy R0 = Q S0 and Q(mul S) = mul R")
    return compose(Q, S) == R


def left_projection_factor_heuristic(R: LinearRelation, S: LinearRelation) -> Optional[LinearRelation]:
    """Best effort search for ``Q`` with ``R = Q S`` and ``Q(mul S) = mul R``.

    Runs the operator construction on the default selections of ``R`` and
    ``S``, then also tries that projection with its range widened by
    ``mul R`` or by all of ``ran R``, since the selections never see the
    multivalued parts.  Incomplete: None does not mean no such ``Q`` exists.
    """
    if R.n != S.n or R.m != S.m:
        raise DimensionError("R and S must have the same shape")
    R0 = linear_selection(R).selection
    S0 = linear_selection(S).selection
    Q1 = left_projection_factor_operators(R0, S0)
    if Q1 is None:
        return None
    for onto in (Q1.ran, Q1.ran + R.mul, R.ran):
        if not sub.is_direct(onto, Q1.ker):
            continue
        Q = mp(onto, Q1.ker)
        if left_projection_verify(R, S, Q):
            return Q
    return None


def left_projection_witness(R: LinearRelation, S: LinearRelation) -> Optional[FactorizationWitness]:
    if R.is_operator and S.is_operator:
        Q = left_projection_factor_operators(R, S)
    else:
        Q = left_projection_factor_heuristic(R, S)
    if Q is None:
        return None
    return FactorizationWitness((Q, S), LEFT_PROJECTION, compose(Q, S), R)
