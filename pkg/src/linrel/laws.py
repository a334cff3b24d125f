"""Executable laws of the relation calculus and a runner that checks them.

A :class:`Law` couples a hypothesis and a conclusion over a tuple of
instances.  :func:`check_law` feeds it either every tuple of the required
shape over a small prime field or a seeded random stream, and reports a
:class:`Verdict`.  Identities stated as "iff" are checked as iffs, so they
are applicable on every instance.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Optional

from . import subspace as sub
from .exceptions import CriterionError, PreconditionError
from .factorization import (
    coordinated_selections,
    douglas_criterion,
    douglas_operator,
    douglas_relation,
    left_projection_factor_operators,
    right_projection_factor,
)
from .field import FieldSpec
from .generators import EXHAUSTIVE, GeneratorConfig, InstanceGenerator
from .jsonio import to_json
from .linalg import Matrix
from .mp2 import (
    ballantine_check,
    from_selection_form,
    mp2_certificate_check,
    mp2_membership_bruteforce,
    mp2_necessary,
    mp2_necessary_partial,
    mp2_search,
    mp_times_projection,
    normalize_mp2,
    selection_form,
)
from .projections import (
    assemble,
    classify,
    is_idempotent,
    is_mp,
    is_projection,
    is_selection_of,
    linear_selection,
    mp,
    mp_times_operator,
    selection_form_decomposition,
)
from .relation import (
    LinearRelation,
    compose,
    diagonal,
    equalizer,
    image,
    inverse,
    pointwise_diff,
    preimage,
    rect,
    subspace_sum,
)

MAX_RECORDED_FAILURES = 10
POOL_LIMIT = 100_000
RANDOM_TRY_FACTOR = 50


def _always(*_):
    return True


@dataclass(frozen=True)
class Law:
    """A named statement: ``hypothesis(*inst)`` implies ``conclusion(*inst)``."""

    id: str
    statement: str
    shape: tuple
    conclusion: Callable[..., bool]
    hypothesis: Callable[..., bool] = _always
    sampler: Optional[Callable[[InstanceGenerator], tuple]] = None

    @property
    def arity(self) -> int:
        return len(self.shape)

    def sample(self, gen: InstanceGenerator) -> tuple:
        if self.sampler is not None:
            return self.sampler(gen)
        return tuple(_draw(kind, gen) for kind in self.shape)

    def instances(self, field: FieldSpec, n: int):
        """Every tuple of the law's shape over ``field^n``."""
        return itertools.product(*(pool(kind, field, n) for kind in self.shape))

    def negated(self) -> "Law":
        """Same hypothesis, opposite conclusion; used to test the runner itself."""
        conclusion = self.conclusion
        return Law(self.id + "-negated", "not: " + self.statement, self.shape,
                   lambda *a: not conclusion(*a), self.hypothesis, self.sampler)


@dataclass
class Verdict:
    law_id: str
    tried: int = 0
    applicable: int = 0
    failure_count: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, instance: tuple, error: Optional[str] = None):
        self.failure_count += 1
        if len(self.failures) < MAX_RECORDED_FAILURES:
            entry = {"instance": to_json(list(instance))}
            if error:
                entry["error"] = error
            self.failures.append(entry)

    def to_json(self) -> dict:
        return {
            "law": self.law_id,
            "tried": self.tried,
            "applicable": self.applicable,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }


# -- exhaustive pools ----------------------------------------------------------------


def _subspace_count(field: FieldSpec, n: int) -> int:
    return sum(sub.gaussian_binomial(n, k, field.p) for k in range(n + 1))


@lru_cache(maxsize=64)
def pool(kind: str, field: FieldSpec, n: int) -> tuple:
    """All objects of ``kind`` on ``field^n``, in a fixed order."""
    if not field.is_prime_field:
        raise PreconditionError("exhaustive pools need a prime field")
    if kind == "power":
        return (1, 2, 3)
    if kind == "subspace":
        return tuple(sub.enumerate_subspaces(field, n))
    if kind == "matrix":
        if field.p ** (n * n) > 1 << 12:
            raise PreconditionError(f"too many {n}x{n} matrices over {field!r}")
        elems = list(field.elements())
        return tuple(
            Matrix.from_rows([entries[i * n:(i + 1) * n] for i in range(n)], field, n)
            for entries in itertools.product(elems, repeat=n * n)
        )
    if _subspace_count(field, 2 * n) > POOL_LIMIT:
        raise PreconditionError(f"too many relations on {field!r}^{n} to enumerate")
    if kind == "relation":
        return tuple(LinearRelation(n, n, G) for G in sub.enumerate_subspaces(field, 2 * n))
    rels = pool("relation", field, n)
    if kind == "operator":
        return tuple(T for T in rels if T.is_operator)
    tests = {
        "idempotent": lambda k: k.idempotent,
        "super_idempotent": lambda k: k.super_idempotent,
        "mp": lambda k: k.multivalued_projection,
        "projection": lambda k: k.projection,
    }
    if kind not in tests:
        raise ValueError(f"unknown instance kind {kind!r}")
    return tuple(T for T in rels if tests[kind](classify(T)))


def _draw(kind: str, gen: InstanceGenerator):
    if kind == "power":
        return gen.rng.randint(1, 3)
    if kind == "matrix":
        return gen.matrix(max_rank=gen.rng.randint(0, gen.n))
    return {
        "subspace": gen.subspace,
        "relation": gen.relation,
        "operator": gen.operator,
        "idempotent": gen.idempotent,
        "super_idempotent": gen.super_idempotent,
        "mp": gen.mp,
        "projection": gen.projection,
    }[kind]()


# -- shared helpers --------------------------------------------------------------------


def _vertical(S):
    """``{0} x S``."""
    return rect(sub.zero(S.ambient, S.field), S)


def _oracle_ready(field: FieldSpec, n: int) -> bool:
    """Whether brute force over all multivalued projections is cheap here."""
    return field.is_prime_field and _subspace_count(field, n) <= 8


def _brute_mp2(T: LinearRelation) -> bool:
    return mp2_membership_bruteforce(T) is not None


@lru_cache(maxsize=16)
def _idempotent_products(field: FieldSpec, n: int, k: int) -> frozenset:
    """Every product of ``k`` idempotent ``n x n`` matrices over a prime field."""
    idem = [A for A in pool("matrix", field, n) if A @ A == A]
    out = {Matrix.identity(n, field)}
    for _ in range(k):
        out = {A @ B for A in out for B in idem}
    return frozenset(out)


def _matrix_oracle_ready(field: FieldSpec, n: int, k: int) -> bool:
    if not field.is_prime_field:
        return False
    size = field.p ** (n * n)
    return size <= 1 << 9 if k <= 2 else size <= 1 << 4


def _raises_criterion(fn, *args, expected=None) -> bool:
    try:
        fn(*args)
    except CriterionError as exc:
        return expected is None or tuple(exc.failed) == tuple(expected)
    return False


# -- samplers ------------------------------------------------------------------------


def _sample_sub_relation(gen):
    T = gen.relation()
    pick = gen.rng.randrange(3)
    if pick == 0:
        S = T
    elif pick == 1:
        S = LinearRelation(T.n, T.m, gen.subspace_of(T.graph))
    else:
        S = gen.relation()
    return S, T


def _sample_left_sum(gen):
    R, T, S = gen.relation(), gen.relation(), gen.relation()
    if gen.rng.random() < 0.5:
        T = compose(diagonal(R.dom), T)
    return R, T, S


def _sample_right_sum(gen):
    T, S, F = gen.relation(), gen.relation(), gen.relation()
    if gen.rng.random() < 0.5:
        T = compose(T, diagonal(F.ran))
    return T, S, F


def _sample_cancellation(gen):
    N, T = gen.direct_pair()
    pick = gen.rng.randrange(3)
    if pick == 0:
        S = N
    elif pick == 1:
        S = gen.subspace_of(N)
    else:
        S = gen.complement(T, N + T) if gen.rng.random() < 0.5 else gen.subspace()
    return S, T, N


def _sample_rect(gen):
    T = gen.relation()
    N = gen.subspace_of(T.ker) if gen.rng.random() < 0.7 else gen.subspace()
    return T, N, gen.subspace()


def _sample_commuting(gen):
    if gen.rng.random() < 0.8:
        return gen.commuting_mps()
    return gen.mp(), gen.mp()


def _sample_commuting_projection(gen):
    if gen.rng.random() < 0.8:
        P, Q = gen.commuting_mp_and_projection()
    else:
        P, Q = gen.mp(), gen.projection()
    return P.ran, P.ker, Q


def _sample_absorption(gen):
    T = gen.relation()
    pick = gen.rng.randrange(3)
    if pick == 0:
        S = T.mul + gen.subspace(1)
    elif pick == 1:
        S = gen.complement(T.ker & T.dom, T.dom) + gen.subspace(1)
    else:
        S = gen.subspace()
    return T, S


def _sample_selection_range(gen):
    T = gen.relation()
    S = gen.complement(T.mul, T.ran) if gen.rng.random() < 0.8 else gen.subspace()
    return T, S


def _sample_idempotent_pair(gen):
    P = gen.idempotent()
    if gen.rng.random() < 0.5:
        return P, gen.idempotent()
    Q = gen.idempotent()
    # bias towards the absorbing cases of both characterizations
    return (P, compose(Q, P)) if is_idempotent(compose(Q, P)) else (P, Q)


def _sample_with_mp(gen):
    return gen.relation(), gen.mp() if gen.rng.random() < 0.5 else gen.idempotent()


def _sample_douglas_pair(gen):
    S = gen.relation()
    if gen.rng.random() < 0.6:
        X = gen.operator()
        return compose(S, X), S, X
    return gen.relation(), S, gen.operator()


def _sample_douglas_operators(gen):
    S, X = gen.operator(), gen.operator()
    if gen.rng.random() < 0.6:
        return compose(S, X), S, X
    return gen.operator(), S, X


def _sample_right_projection(operators: bool):
    def sampler(gen):
        S = gen.operator() if operators else gen.relation()
        Q = gen.projection()
        if gen.rng.random() < 0.6:
            return compose(S, Q), S, Q
        return (gen.operator() if operators else gen.relation()), S, Q

    return sampler


def _sample_left_projection(gen):
    S, Q = gen.operator(), gen.projection()
    if gen.rng.random() < 0.6:
        return compose(Q, S), S, Q
    return gen.operator(), S, Q


def _sample_left_selection(gen):
    S, Q = gen.relation(), gen.projection()
    pick = gen.rng.randrange(3)
    if pick == 0:
        R = compose(Q, S)
    elif pick == 1:
        # same multivalued image, possibly a different relation
        R = assemble(compose(Q, linear_selection(gen.relation()).selection), image(Q, S.mul))
    else:
        R = gen.relation()
    return R, S, Q


def _sample_mp_pair(gen):
    return gen.mp(), gen.mp()


def _sample_equalizer(gen):
    S = gen.relation()
    if gen.rng.random() < 0.8:
        return compose(S, gen.operator()), S
    return gen.relation(), S


def _sample_certificate(gen):
    if gen.rng.random() < 0.6:
        E, F = gen.mp(), gen.mp()
        T = compose(E, F)
        S = E.ker + T.mul if gen.rng.random() < 0.5 else T.mul + gen.complement(T.ran, sub.full(gen.n, gen.field))
        return T, S
    T = gen.relation()
    return T, T.mul + gen.subspace(1)


def _sample_mp2_candidate(gen):
    if gen.rng.random() < 0.5:
        return (compose(gen.mp(), gen.mp()),)
    return (gen.relation(),)


def _sample_selection_data(gen):
    P0, Q0 = gen.projection(), gen.projection()
    S = gen.subspace_of(P0.ker) if gen.rng.random() < 0.8 else gen.subspace()
    return P0, Q0, S


def _sample_assembly(gen):
    P0 = gen.projection()
    return P0, gen._mul_candidate(P0)


def _sample_ballantine(gen):
    k = gen.rng.randint(1, 3)
    if gen.rng.random() < 0.5:
        A = Matrix.identity(gen.n, gen.field)
        for _ in range(k):
            A = A @ gen.idempotent_matrix()
        return A, k, True
    return gen.matrix(max_rank=gen.rng.randint(0, gen.n)), k, False


# -- law bodies ----------------------------------------------------------------------


def _lemma22(S, T):
    return (S == T) == (S <= T and T.dom <= S.dom and T.mul <= S.mul)


def _lemma231(R, T, S):
    lhs = subspace_sum(compose(R, T), compose(R, S))
    rhs = compose(R, subspace_sum(T, S))
    if not lhs <= rhs:
        return False
    if T.ran <= R.dom or S.ran <= R.dom:
        return lhs == rhs
    return True


def _lemma232(T, S, F):
    lhs = subspace_sum(compose(T, F), compose(S, F))
    rhs = compose(subspace_sum(T, S), F)
    if not lhs <= rhs:
        return False
    if T.dom <= F.ran or S.dom <= F.ran:
        return lhs == rhs
    return True


def _lemma241_hyp(S, T, N):
    return sub.is_direct(S, T) and sub.is_direct(N, T) and S + T == N + T and S <= N


def _lemma242(T, N, S):
    zero = sub.zero(T.n, T.field)
    ok = compose(_vertical(N), T) == rect(T.ker, N)
    ok = ok and compose(T, _vertical(S)) == rect(zero, image(T, S))
    if N <= T.ker:
        ok = ok and subspace_sum(T, rect(N, S)) == subspace_sum(T, _vertical(S))
    return ok


def _prop24(Q):
    return assemble(mp(Q.ran & Q.dom, Q.ker), Q.mul) == Q


def _prop31_hyp(T, Q):
    return is_idempotent(Q) and (T.dom & Q.ran) <= (Q.dom & Q.ran)


def _prop31(T, Q):
    TQ = compose(T, Q)
    return TQ.dom == Q.ker + (Q.ran & T.dom) and TQ.ker == Q.ker + (Q.ran & T.ker)


def _cor33_hyp(T, Q):
    return is_idempotent(Q) and (T.ran & Q.dom) <= (Q.dom & Q.ran)


def _cor33(T, Q):
    QT = compose(Q, T)
    return QT.ran == Q.mul + (Q.dom & T.ran) and QT.mul == Q.mul + (Q.dom & T.mul)


def _both_idempotent(P, Q):
    return is_idempotent(P) and is_idempotent(Q)


def _prop34(P, Q):
    return (compose(Q, P) == Q) == (P.ker <= Q.ker and Q.dom <= P.dom)


def _cor35(P, Q):
    return (compose(P, Q) == Q) == (P.mul <= Q.mul and Q.ran <= P.ran)


def _commute(P, Q):
    return compose(P, Q) == compose(Q, P)


def _prop36(P, Q):
    return compose(P, Q) == mp(P.ran & Q.ran, Q.ker + (Q.ran & P.ker))


def _cor37_hyp(M, N, Q):
    return _commute(mp(M, N), Q)


def _cor37(M, N, Q):
    S = Q.ran
    return (S & (M + N)) == (S & M) + (S & N)


def _lemma38_hyp(T, S):
    return (T.ran & S) <= T.mul or T.dom <= S + T.ker


def _lemma38(T, S):
    ok = True
    if (T.ran & S) <= T.mul:
        ok = compose(mp(T.ran, S), T) == T
    if T.dom <= S + T.ker:
        ok = ok and compose(T, mp(S & T.dom, T.ker)) == T
    return ok


def _prop42_hyp(T, S):
    return sub.is_direct(S, T.mul) and S + T.mul == T.ran


def _prop42(T, S):
    T0 = linear_selection(T, S).selection
    return (
        T0.is_operator
        and T0 <= T
        and T0.dom == T.dom
        and T0.ran == S
        and T0.ker == T.ker
        and assemble(T0, T.mul) == T
    )


def _super_idempotent(T):
    return classify(T).super_idempotent


def _prop43(T):
    form = selection_form_decomposition(T)
    return (
        is_projection(form.P0)
        and form.mul_part == T.mul
        and assemble(form.P0, form.mul_part) == T
        and form.idempotent_condition == form.kind.idempotent
        and form.mp_condition == form.kind.multivalued_projection
    )


def _prop43_converse(P0, mul_part):
    kind = classify(assemble(P0, mul_part))
    idem_cond = (mul_part & P0.dom) == (P0.ker & (P0.ran + mul_part))
    return (
        kind.super_idempotent
        and (kind.idempotent or not idem_cond)
        and (kind.multivalued_projection or not mul_part <= P0.ker)
    )


def _cor44(T):
    M, T0 = mp_times_operator(T)
    return is_mp(M) and T0.is_operator and T0.dom == T.dom and compose(M, T0) == T


def _eq51_hyp(R, S):
    return R.mul == S.mul and R.ran <= S.ran


def _eq51(R, S):
    R0, S0 = coordinated_selections(R, S)
    return (
        is_selection_of(R0, R)
        and is_selection_of(S0, S)
        and R0.ran <= S0.ran
        and equalizer(R, S) == pointwise_diff(S0, R0).ker
    )


def _lemma51(R, S, X):
    crit = R.ran <= S.ran
    if compose(S, X) == R and not crit:
        return False
    if not crit:
        return _raises_criterion(douglas_operator, R, S)
    T = douglas_operator(R, S)
    return T.is_operator and compose(S, T) == R


def _thm52(R, S, X):
    failed = []
    if not R.ran <= S.ran:
        failed.append("ran R ⊄ ran S")
    if R.mul != S.mul:
        failed.append("mul R ≠ mul S")
    if tuple(failed) != douglas_criterion(R, S).failed:
        return False
    if compose(S, X) == R and failed:
        return False
    if failed:
        return _raises_criterion(douglas_relation, R, S, expected=failed)
    T = douglas_relation(R, S)
    return T.is_operator and T.dom == R.dom and compose(S, T) == R


def _prop55(R, S, Q):
    crit = R.dom == pointwise_diff(S, R).ker + R.ker
    if compose(S, Q) == R and not crit:
        return False
    Q1 = right_projection_factor(R, S)
    if crit != (Q1 is not None):
        return False
    return Q1 is None or (is_projection(Q1) and compose(S, Q1) == R)


def _thm56(R, S, Q):
    E = equalizer(R, S)
    crit = R.mul == S.mul and E is not None and R.dom == E + R.ker
    if compose(S, Q) == R and not crit:
        return False
    Q1 = right_projection_factor(R, S)
    if crit != (Q1 is not None):
        return False
    return Q1 is None or (is_projection(Q1) and compose(S, Q1) == R)


def _prop57(R, S, Q):
    D = pointwise_diff(S, R)
    crit = sub.is_direct(D.ran, R.ran) and preimage(S, R.ran + D.ran) == R.dom
    if compose(Q, S) == R and not crit:
        return False
    Q1 = left_projection_factor_operators(R, S)
    if crit != (Q1 is not None):
        return False
    return Q1 is None or (is_projection(Q1) and Q1 == mp(R.ran, D.ran) and compose(Q1, S) == R)


def _thm58_hyp(R, S, Q):
    return image(Q, S.mul) == R.mul


def _thm58(R, S, Q):
    S0 = linear_selection(S).selection
    return (compose(Q, S) == R) == is_selection_of(compose(Q, S0), R)


def _thm58_repaired_hyp(R, S, Q):
    return S.mul <= Q.dom and image(Q, S.mul) == R.mul


def _prop66(E, F):
    return mp2_necessary(compose(E, F))


def _prop66_partial(E, F):
    return mp2_necessary_partial(compose(E, F))


def _lemma61(E, F):
    T = compose(E, F)
    P, Q = normalize_mp2(E, F)
    return (
        is_mp(P) and is_mp(Q) and compose(P, Q) == T
        and P.ran == T.ran and P.mul == T.mul and Q.dom == T.dom and Q.ker == T.ker
    )


def _thm62(E, F):
    w = mp_times_projection(E, F)
    return w.product == compose(E, F) and w.check() and is_mp(w.P) and is_projection(w.Q0)


def _cor63(E, F):
    T = compose(E, F)
    S = E.ker + T.mul
    if (S & T.ran) != T.mul:
        return False
    w = mp2_certificate_check(T, S)
    return w is not None and w.check()


def _certificate_hyp(T, S):
    return (S & T.ran) == T.mul


def _cor63_sound(T, S):
    w = mp2_certificate_check(T, S)
    if w is None:
        return True
    ok = w.check() and is_mp(w.P) and is_projection(w.Q0)
    if ok and _oracle_ready(T.field, T.n):
        ok = _brute_mp2(T)
    return ok


def _cor63_search(T):
    w = mp2_search(T)
    if _oracle_ready(T.field, T.n):
        return (w is not None) == _brute_mp2(T)
    return w is None or (w.check() and is_mp(w.P) and is_projection(w.Q0))


def _cor64(E, F):
    T = compose(E, F)
    P0, Q0, S = selection_form(mp_times_projection(E, F))
    return is_projection(P0) and is_projection(Q0) and S <= P0.ker and assemble(compose(P0, Q0), S) == T


def _cor64_converse_hyp(P0, Q0, S):
    return S <= P0.ker


def _cor64_converse(P0, Q0, S):
    T = assemble(compose(P0, Q0), S)
    w = from_selection_form(P0, Q0, S)
    ok = w.product == T and w.check()
    if ok and _oracle_ready(T.field, T.n):
        ok = _brute_mp2(T)
    return ok


def _ballantine_hyp(A, k, known=False):
    return known or _matrix_oracle_ready(A.field, A.nrows, k)


def _ballantine(A, k, known=False):
    verdict = ballantine_check(A, k)
    if _matrix_oracle_ready(A.field, A.nrows, k):
        return verdict == (A in _idempotent_products(A.field, A.nrows, k))
    return verdict


def _dimension_formula(U, V):
    return U.dim + V.dim == (U + V).dim + (U & V).dim


def _inverse_parts(T):
    Ti = inverse(T)
    return Ti.dom == T.ran and Ti.ran == T.dom and Ti.ker == T.mul and Ti.mul == T.ker and inverse(Ti) == T


def _idempotent_inverse(Q):
    return is_idempotent(inverse(Q))


def _mp_unique(T):
    return T == mp(T.ran, T.ker)


def _mp_parts(M, N):
    P = mp(M, N)
    return is_mp(P) and P.ran == M and P.ker == N and P.dom == M + N and P.mul == (M & N)


# -- registry --------------------------------------------------------------------------

R3 = ("relation", "relation", "relation")

_REGISTRY = (
    Law("lemma2.2", "S = T iff S ⊆ T, dom T ⊆ dom S and mul T ⊆ mul S",
        ("relation", "relation"), _lemma22, sampler=_sample_sub_relation),
    Law("lemma2.3.1", "RT +^ RS ⊆ R(T +^ S), with equality if ran T ⊆ dom R or ran S ⊆ dom R",
        R3, _lemma231, sampler=_sample_left_sum),
    Law("lemma2.3.2", "TF +^ SF ⊆ (T +^ S)F, with equality if dom T ⊆ ran F or dom S ⊆ ran F",
        R3, _lemma232, sampler=_sample_right_sum),
    Law("lemma2.4.1", "S ∔ T = N ∔ T and S ⊆ N imply S = N",
        ("subspace", "subspace", "subspace"), lambda S, T, N: S == N, _lemma241_hyp, _sample_cancellation),
    Law("lemma2.4.2", "({0}×N)T = ker T × N, T({0}×S) = {0} × T(S), and N ⊆ ker T gives T +^ (N×S) = T +^ ({0}×S)",
        ("relation", "subspace", "subspace"), _lemma242, sampler=_sample_rect),
    Law("prop2.2", "mp(M, N) is a multivalued projection with range M, kernel N, domain M+N and mul M∩N",
        ("subspace", "subspace"), _mp_parts),
    Law("prop2.2-unique", "a multivalued projection equals mp(ran T, ker T)",
        ("relation",), _mp_unique, is_mp, lambda g: (g.conjugate(g.mp()) if g.rng.random() < 0.8 else g.relation(),)),
    Law("prop2.4", "an idempotent Q is mp(ran Q ∩ dom Q, ker Q) +^ ({0} × mul Q)",
        ("relation",), _prop24, is_idempotent, lambda g: (g.idempotent(),)),
    Law("idempotent-inverse", "the inverse of an idempotent is idempotent",
        ("relation",), _idempotent_inverse, is_idempotent, lambda g: (g.idempotent(),)),
    Law("prop3.1", "if dom T ∩ ran Q ⊆ dom Q ∩ ran Q: dom TQ = ker Q + ran Q ∩ dom T and ker TQ = ker Q + ran Q ∩ ker T",
        ("relation", "idempotent"), _prop31, _prop31_hyp, _sample_with_mp),
    Law("remark3.2", "for a multivalued projection Q the domain and kernel formulas for TQ hold for every T",
        ("relation", "mp"), _prop31),
    Law("cor3.3", "if ran T ∩ dom Q ⊆ dom Q ∩ ran Q: ran QT = mul Q + dom Q ∩ ran T and mul QT = mul Q + dom Q ∩ mul T",
        ("relation", "idempotent"), _cor33, _cor33_hyp, _sample_with_mp),
    Law("prop3.4", "for idempotents, QP = Q iff ker P ⊆ ker Q and dom Q ⊆ dom P",
        ("idempotent", "idempotent"), _prop34, _both_idempotent, _sample_idempotent_pair),
    Law("cor3.5", "for idempotents, PQ = Q iff mul P ⊆ mul Q and ran Q ⊆ ran P",
        ("idempotent", "idempotent"), _cor35, _both_idempotent, _sample_idempotent_pair),
    Law("prop3.6", "commuting multivalued projections multiply to mp(ran P ∩ ran Q, ker Q + ran Q ∩ ker P)",
        ("mp", "mp"), _prop36, _commute, _sample_commuting),
    Law("cor3.7", "if mp(M, N) commutes with a projection onto S then S ∩ (M+N) = S∩M + S∩N",
        ("subspace", "subspace", "projection"), _cor37, _cor37_hyp, _sample_commuting_projection),
    Law("lemma3.8", "ran T ∩ S ⊆ mul T gives mp(ran T, S)T = T; dom T ⊆ S + ker T gives T mp(S ∩ dom T, ker T) = T",
        ("relation", "subspace"), _lemma38, _lemma38_hyp, _sample_absorption),
    Law("prop4.2", "for ran T = S ∔ mul T, mp(S, mul T)T is a linear selection with range S and kernel ker T",
        ("relation", "subspace"), _prop42, _prop42_hyp, _sample_selection_range),
    Law("prop4.3", "a super-idempotent is P0 ∔^ ({0} × mul T) with P0 a projection; the selection tests decide idempotency and being an MP",
        ("relation",), _prop43, _super_idempotent, lambda g: (g.super_idempotent(),)),
    Law("prop4.3-converse", "P0 ∔^ ({0}×T) is super-idempotent, idempotent under the selection test and an MP when T ⊆ ker P0",
        ("projection", "subspace"), _prop43_converse, sampler=_sample_assembly),
    Law("cor4.4", "every relation is a multivalued projection times an operator",
        ("relation",), _cor44),
    Law("eq5.1", "for mul R = mul S and ran R ⊆ ran S, {x: S(x) = R(x)} = ker(S0 - R0) for coordinated selections",
        ("relation", "relation"), _eq51, _eq51_hyp, _sample_equalizer),
    Law("lemma5.1", "for operators, R = ST has an operator solution iff ran R ⊆ ran S",
        ("operator", "operator", "operator"), _lemma51, sampler=_sample_douglas_operators),
    Law("thm5.2", "R = S T0 has an operator solution iff ran R ⊆ ran S and mul R = mul S",
        ("relation", "relation", "operator"), _thm52, sampler=_sample_douglas_pair),
    Law("prop5.5", "for operators, R = SQ with Q a projection iff dom R = ker(S - R) + ker R",
        ("operator", "operator", "projection"), _prop55, sampler=_sample_right_projection(True)),
    Law("thm5.6", "R = SQ with Q a projection iff dom R = {x: S(x) = R(x)} + ker R and mul R = mul S",
        ("relation", "relation", "projection"), _thm56, sampler=_sample_right_projection(False)),
    Law("prop5.7", "for operators, R = QS with Q a projection iff ran(S-R) ∩ ran R = 0 and dom R = S⁻¹(ran R ∔ ran(S-R))",
        ("operator", "operator", "projection"), _prop57, sampler=_sample_left_projection),
    Law("thm5.8", "given Q(mul S) = mul R, R = QS iff Q S0 is a linear selection of R",
        ("relation", "relation", "projection"), _thm58, _thm58_hyp, _sample_left_selection),
    Law("thm5.8-repaired", "given mul S ⊆ dom Q and Q(mul S) = mul R, R = QS iff Q S0 is a linear selection of R",
        ("relation", "relation", "projection"), _thm58, _thm58_repaired_hyp, _sample_left_selection),
    Law("lemma6.1", "a product of multivalued projections is PQ with ran P, mul P, dom Q, ker Q those of the product",
        ("mp", "mp"), _lemma61, sampler=_sample_mp_pair),
    Law("thm6.2", "a product of multivalued projections is P Q0 with P a multivalued projection and Q0 a projection",
        ("mp", "mp"), _thm62, sampler=_sample_mp_pair),
    Law("cor6.3", "for T = EF the subspace ker E + mul T certifies T",
        ("mp", "mp"), _cor63, sampler=_sample_mp_pair),
    Law("cor6.3-sound", "a passing certificate yields a valid product of a multivalued projection and a projection",
        ("relation", "subspace"), _cor63_sound, _certificate_hyp, _sample_certificate),
    Law("cor6.3-search", "certificate search agrees with brute force where that is available and is sound elsewhere",
        ("relation",), _cor63_search, sampler=_sample_mp2_candidate),
    Law("cor6.4", "a product of multivalued projections is P0 Q0 ∔^ ({0}×S) with projections P0, Q0 and S ⊆ ker P0",
        ("mp", "mp"), _cor64, sampler=_sample_mp_pair),
    Law("cor6.4-converse", "P0 Q0 ∔^ ({0}×S) with S ⊆ ker P0 is a product of multivalued projections",
        ("projection", "projection", "subspace"), _cor64_converse, _cor64_converse_hyp, _sample_selection_data),
    Law("prop6.6", "a product of multivalued projections has dim ran(T - I) ≤ 2 dim ker T + dim mul T",
        ("mp", "mp"), _prop66, sampler=_sample_mp_pair),
    Law("prop6.6-partial", "a product of multivalued projections has dim ran(T - I) ≤ 2 dim ker T + dim mul T + 2 codim dom T",
        ("mp", "mp"), _prop66_partial, sampler=_sample_mp_pair),
    Law("thm6.5", "a square matrix is a product of k idempotents iff rank(I - A) ≤ k dim ker A",
        ("matrix", "power"), _ballantine, _ballantine_hyp, _sample_ballantine),
    Law("dimension-formula", "dim U + dim V = dim(U + V) + dim(U ∩ V)",
        ("subspace", "subspace"), _dimension_formula),
    Law("inverse-parts", "inversion swaps domain with range and kernel with multivalued part",
        ("relation",), _inverse_parts),
)

_BY_ID = {law.id: law for law in _REGISTRY}
if len(_BY_ID) != len(_REGISTRY):
    raise RuntimeError("duplicate law id")


def registry() -> list:
    return list(_REGISTRY)


def lookup(law_id: str) -> Law:
    try:
        return _BY_ID[law_id]
    except KeyError:
        raise KeyError(f"unknown law {law_id!r}") from None


# -- runner --------------------------------------------------------------------------


def _evaluate(law: Law, inst: tuple, verdict: Verdict):
    verdict.tried += 1
    try:
        if not law.hypothesis(*inst):
            return
    except Exception as exc:  # a hypothesis must be total on well-formed input
        verdict.record(inst, f"hypothesis raised {type(exc).__name__}: {exc}")
        return
    verdict.applicable += 1
    try:
        ok = law.conclusion(*inst)
    except Exception as exc:
        verdict.record(inst, f"{type(exc).__name__}: {exc}")
        return
    if not ok:
        verdict.record(inst)


def check_law(law: Law, config: GeneratorConfig, min_applicable: int = 0) -> Verdict:
    """Run ``law`` on the instances ``config`` describes.

    Exhaustive mode visits every tuple of the law's shape.  Random mode draws
    ``config.trials`` instances from a generator seeded by ``config.seed``
    and the law id, then keeps drawing until ``min_applicable`` instances met
    the hypothesis or the try budget runs out.
    """
    verdict = Verdict(law.id)
    if config.mode == EXHAUSTIVE:
        for inst in law.instances(config.field, config.ambient_dim):
            _evaluate(law, inst, verdict)
        return verdict
    gen = InstanceGenerator(config.field, config.ambient_dim, _law_seed(config.seed, law.id))
    budget = RANDOM_TRY_FACTOR * max(config.trials, min_applicable, 1)
    while verdict.tried < config.trials or (verdict.applicable < min_applicable and verdict.tried < budget):
        _evaluate(law, law.sample(gen), verdict)
    return verdict


def _law_seed(seed: int, law_id: str) -> int:
    # stable across runs, unlike hash()
    h = seed
    for ch in law_id:
        h = (h * 1_000_003 + ord(ch)) % (1 << 61)
    return h


def check_all(config: GeneratorConfig, laws=None, min_applicable: int = 0) -> list:
    return [check_law(law, config, min_applicable) for law in (laws or registry())]
