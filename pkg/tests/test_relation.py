import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, as_pairs_relation, compose_points, pairs, points, q_matrices, q_relations
from linrel import (
    QQ,
    Matrix,
    compose,
    diagonal,
    equalizer,
    from_operator,
    from_pairs,
    identity,
    image,
    inverse,
    pointwise_diff,
    pointwise_sum,
    preimage,
    rect,
    span,
    subspace_sum,
    subspace_sum_direct,
    zero_operator,
    zero_relation,
)
from linrel import subspace as sub
from linrel.exceptions import DimensionError
from linrel.laws import pool
from linrel.relation import full_relation, intersection, to_matrix

E1 = sub.coordinate([0], 2)
E2 = sub.coordinate([1], 2)
ZERO = sub.zero(2)
FULL = sub.full(2)


def graph(rows, field=QQ):
    return from_operator(Matrix.from_rows(rows, field))


class TestParts:
    def test_identity(self):
        I = identity(2)
        assert I.dom == I.ran == FULL and I.ker.is_zero and I.mul.is_zero

    def test_nilpotent(self):
        A = graph([[0, 1], [0, 0]])
        assert (A.dom, A.ran, A.ker, A.mul) == (FULL, E1, E1, ZERO)

    def test_rect(self):
        R = rect(E1, E2)
        assert R.parts() == (E1, E2, E1, E2)

    def test_rect_of_zeros_is_zero_relation(self):
        assert rect(ZERO, ZERO) == zero_relation(2, 2)

    def test_predicates(self):
        assert graph([[1, 2], [3, 4]]).is_operator
        assert not rect(ZERO, E1).is_operator
        assert not rect(E1, ZERO).is_everywhere_defined

    def test_evaluation_is_a_coset(self):
        y, mul = rect(E1, E2)((5, 0))
        assert y == (0, 0) and mul == E2
        assert graph([[1, 1], [0, 1]])((1, 2))[0] == (3, 2)
        assert rect(E1, E2)((0, 1)) is None

    def test_to_matrix(self):
        A = Matrix.from_rows([[1, 2], [3, 4]])
        assert to_matrix(from_operator(A)) == A
        with pytest.raises(DimensionError):
            to_matrix(rect(E1, ZERO))

    def test_from_pairs(self):
        T = from_pairs([((1, 0), (0, 1))], 2, 2)
        assert T.dom == E1 and T.ran == E2
        with pytest.raises(DimensionError):
            from_pairs([((1,), (0, 1))], 2, 2)

    def test_parts_match_point_sets_over_f2(self):
        for T in pool("relation", F2, 2):
            P = pairs(T)
            assert points(T.dom) == {x for x, _ in P}
            assert points(T.ran) == {y for _, y in P}
            assert points(T.ker) == {x for x, y in P if not any(y)}
            assert points(T.mul) == {y for x, y in P if not any(x)}


class TestCompose:
    def test_matrix_example(self):
        assert compose(graph([[1, 1], [0, 1]]), graph([[1, 0], [1, 0]])) == graph([[2, 0], [1, 0]])

    def test_swap_moves_multivalued_part(self):
        swap = graph([[0, 1], [1, 0]])
        assert compose(swap, rect(ZERO, E1)) == rect(ZERO, E2)

    @given(q_relations())
    def test_identity_is_neutral(self, T):
        assert compose(identity(2), T) == T == compose(T, identity(2))

    @given(q_matrices(rows=3, cols=3), q_matrices(rows=3, cols=2))
    def test_matrix_product_oracle(self, A, B):
        assert compose(from_operator(A), from_operator(B)) == from_operator(A @ B)

    @given(q_relations(), q_relations(), q_relations())
    def test_associative(self, R, S, T):
        assert compose(compose(R, S), T) == compose(R, compose(S, T))

    def test_point_set_oracle_exhaustive_f2(self):
        rels = pool("relation", F2, 2)
        for R, T in itertools.product(rels, repeat=2):
            assert pairs(compose(R, T)) == compose_points(R, T)

    def test_rectangular(self):
        A = Matrix.from_rows([[1, 2, 3]])
        B = Matrix.from_rows([[1], [0], [1]])
        assert compose(from_operator(A), from_operator(B)) == from_operator(A @ B)
        with pytest.raises(DimensionError):
            compose(from_operator(B), from_operator(B))


class TestInverse:
    def test_identity(self):
        assert inverse(identity(2)) == identity(2)

    def test_nilpotent(self):
        T = inverse(graph([[0, 1], [0, 0]]))
        assert T.dom == E1 and T.mul == E1

    @given(q_relations(n=2, m=3))
    def test_involution_and_parts(self, T):
        S = inverse(T)
        assert inverse(S) == T
        assert (S.dom, S.ran, S.ker, S.mul) == (T.ran, T.dom, T.mul, T.ker)


class TestSums:
    @given(q_matrices(rows=3, cols=3), q_matrices(rows=3, cols=3))
    def test_pointwise_sum_of_graphs(self, A, B):
        assert pointwise_sum(from_operator(A), from_operator(B)) == from_operator(A + B)
        assert pointwise_diff(from_operator(A), from_operator(B)) == from_operator(A - B)

    @given(q_relations())
    def test_sum_with_vertical_relation_has_zero_domain(self, T):
        assert pointwise_sum(T, rect(ZERO, E1)).dom.is_zero

    @given(q_matrices(rows=2, cols=2))
    def test_zero_operator_is_neutral(self, A):
        T = from_operator(A)
        assert pointwise_sum(T, zero_operator(2, 2)) == T

    def test_pointwise_sum_point_set_oracle(self):
        rels = pool("relation", F2, 1) + pool("relation", F2, 2)[:30]
        for T, S in itertools.product(rels, repeat=2):
            if T.n != S.n:
                continue
            want = {(x, tuple((a + b) % 2 for a, b in zip(y, z)))
                    for x, y in pairs(T) for x2, z in pairs(S) if x == x2}
            assert pairs(pointwise_sum(T, S)) == want

    @given(q_relations())
    def test_graph_sum(self, T):
        assert subspace_sum(T, T) == T
        if not T.graph.is_zero:
            assert subspace_sum_direct(T, T) is None

    def test_graph_sum_example(self):
        one = sub.full(1)
        assert subspace_sum(identity(1), rect(sub.zero(1), one)) == full_relation(1, 1)
        assert subspace_sum_direct(identity(1), rect(sub.zero(1), one)) == full_relation(1, 1)


class TestImages:
    @given(q_relations())
    def test_image_of_zero_is_mul(self, T):
        assert image(T, ZERO) == T.mul

    def test_examples(self):
        assert image(graph([[0, 1], [1, 0]]), E1) == E2
        assert preimage(graph([[1, 0], [0, 0]]), E1) == FULL

    def test_wrong_ambient(self):
        with pytest.raises(DimensionError):
            image(identity(2), sub.full(3))

    def test_point_set_oracle_f2(self):
        spaces = list(sub.enumerate_subspaces(F2, 2))
        for T in pool("relation", F2, 2):
            for N in spaces:
                want = {y for x, y in pairs(T) if x in points(N)}
                assert points(image(T, N)) == want


class TestEqualizer:
    def test_example(self):
        assert equalizer(identity(2), graph([[1, 0], [0, 0]])) == E1

    @given(q_relations())
    def test_self(self, T):
        assert equalizer(T, T) == T.dom

    def test_mul_mismatch(self):
        assert equalizer(zero_operator(2, 2), rect(ZERO, E1)) is None

    def test_point_set_oracle_f2(self):
        rels = pool("relation", F2, 2)
        for R, S in itertools.product(rels[::3], repeat=2):
            E = equalizer(R, S)
            if R.mul != S.mul:
                assert E is None
                continue
            want = {x for x in points(R.dom) & points(S.dom)
                    if {y for x2, y in pairs(R) if x2 == x} == {y for x2, y in pairs(S) if x2 == x}}
            assert points(E) == want


class TestStatements:
    def test_inclusion_with_larger_domain_and_mul_forces_equality(self):
        rels = pool("relation", F2, 2)
        for S, T in itertools.product(rels, repeat=2):
            if S <= T and T.dom <= S.dom and T.mul <= S.mul:
                assert S == T

    def test_product_distributes_over_graph_sums(self):
        rels = pool("relation", F2, 2)[::2]
        for R, T, S in itertools.product(rels, repeat=3):
            left = subspace_sum(compose(R, T), compose(R, S))
            right = compose(R, subspace_sum(T, S))
            assert left <= right
            if T.ran <= R.dom or S.ran <= R.dom:
                assert left == right

    def test_vertical_factors(self):
        spaces = list(sub.enumerate_subspaces(F2, 2))
        for T in pool("relation", F2, 2):
            for N in spaces:
                assert compose(rect(sub.zero(2, F2), N), T) == rect(T.ker, N)
                assert compose(T, rect(sub.zero(2, F2), N)) == rect(sub.zero(2, F2), image(T, N))

    def test_diagonal_and_intersection(self):
        D = diagonal(E1)
        assert D.dom == D.ran == E1 and D.is_operator
        assert intersection(identity(2), rect(E1, FULL)) == D

    @given(st.integers(1, 3), st.integers(1, 3))
    def test_zero_relations(self, n, m):
        assert zero_relation(n, m).graph.is_zero
        assert zero_operator(n, m).dom.is_full
