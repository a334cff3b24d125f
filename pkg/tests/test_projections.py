import itertools

import pytest
from hypothesis import given

from conftest import F2, pairs, q_relations
from linrel import (
    Matrix,
    classify,
    compose,
    from_operator,
    identity,
    inverse,
    linear_selection,
    mp,
    projection,
    rect,
    span,
    subspace_sum,
    zero_operator,
)
from linrel import subspace as sub
from linrel.exceptions import DimensionError, PreconditionError
from linrel.laws import pool
from linrel.projections import (
    assemble,
    canonical_idempotent_decomposition,
    commuting_mp_product,
    diagonal,
    fixed_space,
    is_idempotent,
    is_mp,
    is_selection_of,
    mp_times_operator,
    selection_form_decomposition,
)

E1 = sub.coordinate([0], 2)
E2 = sub.coordinate([1], 2)
ZERO = sub.zero(2)
FULL = sub.full(2)
# idempotent that is not a multivalued projection: diagonal on e1 plus vertical e2
ODD = subspace_sum(diagonal(E1), rect(ZERO, E2))


class TestMp:
    def test_identity(self):
        assert mp(FULL, ZERO) == identity(2)

    def test_oblique_value(self):
        P = mp(E1, span([(1, 1)], 2))
        y, mul = P((0, 1))
        assert y == (-1, 0) and mul.is_zero

    def test_overlapping_range_and_kernel(self):
        P = mp(E1, E1)
        assert P.dom == P.mul == P.ran == P.ker == E1

    def test_parts_in_general(self):
        for M, N in itertools.product(sub.enumerate_subspaces(F2, 2), repeat=2):
            P = mp(M, N)
            assert P.dom == M + N and P.mul == M & N and P.ran == M and P.ker == N

    def test_projection_needs_direct_sum(self):
        with pytest.raises(PreconditionError):
            projection(E1, E1)
        assert projection(E1, E2) == from_operator(Matrix.from_rows([[1, 0], [0, 0]]))


class TestClassify:
    def test_identity(self):
        assert set(classify(identity(2)).flags()) == {
            "operator", "everywhere_defined", "idempotent", "super_idempotent",
            "multivalued_projection", "projection",
        }

    def test_idempotent_but_not_mp(self):
        k = classify(ODD)
        assert k.idempotent and not k.multivalued_projection

    def test_mp_not_projection(self):
        k = classify(mp(E1, E1))
        assert k.multivalued_projection and not k.projection

    def test_requires_endorelation(self):
        with pytest.raises(DimensionError):
            classify(rect(E1, sub.zero(3)))

    def test_exhaustive_f2_against_point_sets(self):
        # idempotency read off the composed point set
        count = {"mp": 0, "idem": 0}
        for T in pool("relation", F2, 2):
            P = pairs(T)
            square = {(x, z) for x, y in P for y2, z in P if y == y2}
            k = classify(T)
            assert k.idempotent == (square == P)
            assert k.super_idempotent == (P <= square)
            count["mp"] += k.multivalued_projection
            count["idem"] += k.idempotent
        # every MP is determined by its (range, kernel) pair: 5 * 5 of them
        assert count["mp"] == 25
        assert count["idem"] > count["mp"]

    @given(q_relations())
    def test_inverse_of_idempotent_is_idempotent(self, T):
        if is_idempotent(T):
            assert is_idempotent(inverse(T))


class TestCanonicalDecomposition:
    def test_identity(self):
        assert canonical_idempotent_decomposition(identity(2)) == (identity(2), ZERO)

    def test_mp(self):
        P = mp(E1, E1)
        assert canonical_idempotent_decomposition(P) == (P, E1)

    def test_non_mp_idempotent(self):
        core, mul = canonical_idempotent_decomposition(ODD)
        assert core == mp(E1 & E1, ODD.ker) and mul == E2
        assert assemble(core, mul) == ODD

    def test_rejects_non_idempotent(self):
        with pytest.raises(PreconditionError):
            canonical_idempotent_decomposition(from_operator(Matrix.from_rows([[0, 1], [0, 0]])))

    def test_every_idempotent_is_its_range_dom_kernel_mp_exhaustive(self):
        for Q in pool("idempotent", F2, 2):
            core, mul = canonical_idempotent_decomposition(Q)
            assert assemble(core, mul) == Q


class TestSelections:
    def test_operator(self):
        T = from_operator(Matrix.from_rows([[1, 2], [3, 4]]))
        w = linear_selection(T)
        assert w.selection == T and w.complement_used == T.ran

    def test_square(self):
        T = rect(E1, E1)
        w = linear_selection(T)
        assert w.complement_used.is_zero
        assert w.selection == rect(E1, ZERO)
        assert subspace_sum(w.selection, rect(ZERO, E1)) == T

    def test_rect(self):
        assert linear_selection(rect(E1, E2)).selection == rect(E1, ZERO)

    def test_bad_range(self):
        with pytest.raises(PreconditionError):
            linear_selection(rect(E1, E1), E1)

    @given(q_relations(n=2, m=3))
    def test_round_trip(self, T):
        w = linear_selection(T)
        assert is_selection_of(w.selection, T)
        assert subspace_sum(w.selection, rect(sub.zero(T.n), T.mul)) == T

    def test_round_trip_exhaustive_f2(self):
        for T in pool("relation", F2, 2):
            T0 = linear_selection(T).selection
            assert is_selection_of(T0, T)
            assert subspace_sum(T0, rect(sub.zero(2, F2), T.mul)) == T


class TestSelectionForm:
    def test_mp(self):
        form = selection_form_decomposition(mp(E1, E1))
        assert form.P0 == rect(E1, ZERO) and form.mul_part == E1
        assert form.mp_condition and form.idempotent_condition

    def test_identity(self):
        form = selection_form_decomposition(identity(2))
        assert form.P0 == identity(2) and form.mul_part.is_zero

    def test_odd_idempotent(self):
        form = selection_form_decomposition(ODD)
        assert form.P0 == diagonal(E1) and form.mul_part == E2
        assert not form.mp_condition and form.idempotent_condition

    def test_conditions_match_classification_exhaustive(self):
        for T in pool("super_idempotent", F2, 2):
            form = selection_form_decomposition(T)
            assert form.P0.is_operator and is_idempotent(form.P0)
            assert assemble(form.P0, form.mul_part) == T
            assert form.idempotent_condition == form.kind.idempotent
            assert form.mp_condition == form.kind.multivalued_projection

    def test_rejects_non_super_idempotent(self):
        with pytest.raises(PreconditionError):
            selection_form_decomposition(from_operator(Matrix.from_rows([[0, 1], [0, 0]])))

    def test_fixed_space(self):
        assert fixed_space(ODD) == E1
        assert fixed_space(identity(2)) == FULL


class TestMpTimesOperator:
    def test_operator(self):
        T = from_operator(Matrix.from_rows([[1, 2], [0, 0]]))
        M, T0 = mp_times_operator(T)
        assert T0 == T and is_mp(M) and compose(M, T0) == T

    def test_square(self):
        M, T0 = mp_times_operator(rect(E1, E1))
        assert M.mul == E1 and T0 == rect(E1, ZERO)
        assert compose(M, T0) == rect(E1, E1)

    def test_vertical(self):
        T = rect(ZERO, E1)
        M, T0 = mp_times_operator(T)
        assert compose(M, T0) == T

    def test_every_relation_exhaustive_f2(self):
        for T in pool("relation", F2, 2):
            M, T0 = mp_times_operator(T)
            assert is_mp(M) and T0.is_operator and compose(M, T0) == T


class TestCommutingProduct:
    def test_same(self):
        P = mp(E1, E1)
        assert commuting_mp_product(P, P) == P

    def test_identity(self):
        Q = mp(E1, E2)
        assert commuting_mp_product(identity(2), Q) == Q

    def test_crossed(self):
        assert commuting_mp_product(mp(E1, E2), mp(E2, E1)) == mp(ZERO, FULL)

    def test_not_commuting(self):
        with pytest.raises(PreconditionError):
            commuting_mp_product(mp(E1, E2), mp(E1, span([(1, 1)], 2)))

    def test_closed_form_exhaustive(self):
        mps = pool("mp", F2, 2)
        commuting = 0
        for P, Q in itertools.product(mps, repeat=2):
            if compose(P, Q) == compose(Q, P):
                commuting += 1
                assert commuting_mp_product(P, Q) == mp(P.ran & Q.ran, Q.ker + (Q.ran & P.ker))
        assert 0 < commuting < len(mps) ** 2

    def test_zero_operator_is_mp(self):
        assert is_mp(zero_operator(2, 2)) and is_mp(mp(ZERO, FULL))
        assert zero_operator(2, 2) == mp(ZERO, FULL)
        assert not is_mp(rect(E1, E2))
