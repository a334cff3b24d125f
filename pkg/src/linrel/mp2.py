"""Products of two multivalued projections.

A relation is in Mp² when it is ``E F`` for multivalued projections ``E``
and ``F``.  Every such product can be rewritten as ``P Q0`` with ``P`` a
multivalued projection sharing the range and multivalued part of the product
and ``Q0`` a single-valued projection sharing its domain and kernel; the
helpers here build that normal form, test membership from a certificate
subspace and, over small prime fields, decide membership by exhaustion.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from . import subspace as sub
from .exceptions import DimensionError, PreconditionError
from .factorization import right_projection_factor
from .field import FieldSpec
from .linalg import Matrix, nullspace, rank
from .projections import assemble, classify, is_mp, is_projection, mp, selection_form_decomposition
from .relation import LinearRelation, compose, equalizer, identity, pointwise_diff
from .subspace import Subspace

BRUTE_FORCE_MAX_DIM = 3


@dataclass(frozen=True)
class Mp2Witness:
    P: LinearRelation
    Q0: LinearRelation
    product: LinearRelation

    def check(self) -> bool:
        T = self.product
        return (
            compose(self.P, self.Q0) == T
            and self.P.ran == T.ran
            and self.P.mul == T.mul
            and self.Q0.dom == T.dom
            and self.Q0.ker == T.ker
        )


def _require_mps(E: LinearRelation, F: LinearRelation):
    if not (is_mp(E) and is_mp(F)):
        raise PreconditionError("both factors must be multivalued projections")


def normalize_mp2(E: LinearRelation, F: LinearRelation):
    """Rewrite ``E F`` as ``P Q`` with ran/mul of ``P`` and dom/ker of ``Q`` matching the product.

    Returns ``(P, Q)``, both multivalued projections.
    """
    _require_mps(E, F)
    T = compose(E, F)
    P = mp(T.ran, E.ker + T.mul)
    Q = mp(F.ran & T.dom, T.ker)
    if compose(P, Q) != T:
        raise AssertionError("normalized factors do not recompose")
    return P, Q


def mp_times_projection(E: LinearRelation, F: LinearRelation) -> Mp2Witness:
    """Rewrite ``E F`` as ``P Q0`` with ``Q0`` single-valued."""
    P, Q = normalize_mp2(E, F)
    killed = Q.mul & P.dom
    G = mp(sub.complement_within(killed, Q.ran & P.dom), killed)
    Q0 = compose(G, Q)
    w = Mp2Witness(P, Q0, compose(E, F))
    if not (w.check() and is_projection(Q0)):
        raise AssertionError("Mp·Q witness failed its invariants")
    return w


def _require_certificate(T: LinearRelation, S: Subspace):
    if not T.is_endo:
        raise DimensionError("Mp² membership is for relations on one space")
    if S.ambient != T.n or S.field != T.field:
        raise DimensionError("certificate lives in the wrong space")
    if (S & T.ran) != T.mul:
        raise PreconditionError("certificate S must satisfy S ∩ ran T = mul T")


def mp2_certificate_check(T: LinearRelation, S: Subspace) -> Optional[Mp2Witness]:
    """Witness for ``T`` in Mp² built from ``P = mp(ran T, S)``, or None.

    ``T`` factors through that ``P`` exactly when
    ``dom T == {x : T(x) == P(x)} + ker T``.
    """
    _require_certificate(T, S)
    P = mp(T.ran, S)
    E = equalizer(T, P)
    if E is None or E + T.ker != T.dom:
        return None
    Q0 = right_projection_factor(T, P)
    if Q0 is None:
        raise AssertionError("certificate passed but no projection factor was found")
    w = Mp2Witness(P, Q0, T)
    if not w.check():
        raise AssertionError("certificate witness failed its invariants")
    return w


def certificate_candidates(T: LinearRelation) -> Iterator[Subspace]:
    """Well-formed certificates to try for ``T`` over an infinite field (heuristic order)."""
    full = sub.full(T.n, T.field)
    tried = []
    for S in (T.mul + sub.complement_within(T.ran, full), T.ker + T.mul, T.mul):
        if S in tried:
            continue
        tried.append(S)
        if (S & T.ran) == T.mul:
            yield S


def mp2_search(T: LinearRelation) -> Optional[Mp2Witness]:
    """Look for an Mp² witness for ``T``.

    Over a prime field small enough to enumerate, every subspace is tried as
    a certificate and None means ``T`` is not in Mp².  Otherwise only the
    :func:`certificate_candidates` are tried and None means "unknown".
    """
    field = T.field
    if field.is_prime_field and field.p ** T.n <= sub.ENUMERATION_GUARD:
        pool = sub.enumerate_subspaces(field, T.n)
    else:
        pool = certificate_candidates(T)
    for S in pool:
        if (S & T.ran) != T.mul:
            continue
        w = mp2_certificate_check(T, S)
        if w is not None:
            return w
    return None


def is_mp2_search_complete(T: LinearRelation) -> bool:
    field = T.field
    return field.is_prime_field and field.p ** T.n <= sub.ENUMERATION_GUARD


# -- brute force over a prime field --------------------------------------------------


def _require_small(field: FieldSpec, n: int):
    if not field.is_prime_field:
        raise PreconditionError("brute force needs a prime field")
    if n > BRUTE_FORCE_MAX_DIM:
        raise PreconditionError(f"brute force is limited to dimension {BRUTE_FORCE_MAX_DIM}")


@lru_cache(maxsize=16)
def all_mps(field: FieldSpec, n: int) -> tuple:
    """Every multivalued projection on ``field^n``: one per (range, kernel) pair."""
    _require_small(field, n)
    spaces = list(sub.enumerate_subspaces(field, n))
    return tuple(mp(M, N) for M in spaces for N in spaces)


@lru_cache(maxsize=16)
def mp2_products(field: FieldSpec, n: int) -> dict:
    """Map each member of Mp² on ``field^n`` to the first pair ``(E, F)`` producing it."""
    mps = all_mps(field, n)
    found = {}
    for E, F in itertools.product(mps, repeat=2):
        T = compose(E, F)
        if T not in found:
            found[T] = (E, F)
    return found


def mp2_membership_bruteforce(T: LinearRelation):
    """``(E, F)`` with ``E F == T`` found by exhaustive search, or None."""
    if not T.is_endo:
        raise DimensionError("Mp² membership is for relations on one space")
    _require_small(T.field, T.n)
    return mp2_products(T.field, T.n).get(T)


# -- selection form and dimension bounds ----------------------------------------------


def selection_form(witness: Mp2Witness):
    """``(P0, Q0, S)`` with projections ``P0``, ``Q0``, ``S <= ker P0`` and ``T = P0 Q0 +^ ({0} x S)``."""
    if not witness.check():
        raise PreconditionError("invalid Mp² witness")
    T = witness.product
    form = selection_form_decomposition(witness.P)
    P0, S = form.P0, form.mul_part
    if S != T.mul or not form.mp_condition:
        raise AssertionError("multivalued projection factor has an unexpected selection form")
    if assemble(compose(P0, witness.Q0), S) != T:
        raise AssertionError("selection form does not reassemble")
    return P0, witness.Q0, S


def from_selection_form(P0: LinearRelation, Q0: LinearRelation, S: Subspace) -> Mp2Witness:
    """Witness for ``P0 Q0 +^ ({0} x S)`` as ``(P0 +^ ({0} x S)) Q0``."""
    if not (is_projection(P0) and is_projection(Q0)):
        raise PreconditionError("P0 and Q0 must be projections")
    if not S <= P0.ker:
        raise PreconditionError("S must lie in ker P0")
    P = assemble(P0, S)
    T = assemble(compose(P0, Q0), S)
    if compose(P, Q0) != T or not classify(P).multivalued_projection:
        raise AssertionError("selection form did not produce an Mp·Q factorization")
    return mp_times_projection(P, Q0)


def ballantine_check(A: Matrix, k: int) -> bool:
    """``rank(I - A) <= k * nullity(A)``: whether ``A`` is a product of ``k`` idempotent matrices."""
    if A.nrows != A.ncols:
        raise DimensionError("square matrix expected")
    I = Matrix.identity(A.nrows, A.field)
    return rank(I - A) <= k * nullspace(A).ncols


def mp2_necessary(T: LinearRelation) -> bool:
    """``dim ran(T - I) <= 2 dim ker T + dim mul T``, necessary for ``T`` in Mp²."""
    if not T.is_endo:
        raise DimensionError("endorelation expected")
    D = pointwise_diff(T, identity(T.n, T.field))
    return D.ran.dim <= 2 * T.ker.dim + T.mul.dim


def mp2_necessary_partial(T: LinearRelation) -> bool:
    """``dim ran(T - I) <= 2 dim ker T + dim mul T + 2 codim dom T``.

    :func:`mp2_necessary` only holds for products defined everywhere; for
    example the projection onto ``e2`` along ``e1`` times the identity on
    ``span{e1 + e2}`` violates it.  Extending both projection factors to the
    whole space adds a complement of ``dom T`` to the kernel, which gives this
    weaker bound for every member of Mp².
    """
    if not T.is_endo:
        raise DimensionError("endorelation expected")
    D = pointwise_diff(T, identity(T.n, T.field))
    return D.ran.dim <= 2 * T.ker.dim + T.mul.dim + 2 * (T.n - T.dom.dim)
