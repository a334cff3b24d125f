import json

import pytest
from hypothesis import given

from conftest import F2, q_relations, q_subspaces
from linrel import GF, QQ, Matrix, from_operator
from linrel.jsonio import (
    Workspace,
    WorkspaceError,
    dumps,
    load_workspace,
    matrix_to_json,
    relation_from_json,
    relation_to_json,
    subspace_from_json,
    subspace_to_json,
    to_json,
)
from linrel.laws import pool


@given(q_relations(n=2, m=3))
def test_relation_round_trip(T):
    assert relation_from_json(json.loads(json.dumps(relation_to_json(T))), QQ) == T


@given(q_subspaces())
def test_subspace_round_trip(S):
    assert subspace_from_json(subspace_to_json(S), QQ) == S


def test_prime_field_round_trip():
    for T in pool("relation", F2, 2):
        assert relation_from_json(relation_to_json(T), F2) == T


def test_rationals_are_strings():
    T = from_operator(Matrix.from_rows([[QQ("1/2"), 0], [0, 3]]))
    gens = relation_to_json(T)["generators"]
    assert gens[0] == {"x": ["1", "0"], "y": ["1/2", "0"]}
    assert matrix_to_json(Matrix.from_rows([[QQ("-2/4")]])) == {"matrix": [["-1/2"]]}


def test_output_is_stable():
    doc = {"field": "q", "relations": {"A": {"dom_dim": 1, "codom_dim": 1,
                                            "generators": [{"x": [2], "y": ["4"]}]}}}
    ws = load_workspace(json.dumps(doc))
    assert dumps(ws.to_json()) == dumps(load_workspace(dumps(ws.to_json())).to_json())
    assert ws.relation("A") == from_operator(Matrix.from_rows([[2]]))


def test_missing_generators_default_to_zero_vectors():
    T = relation_from_json({"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0]}]}, QQ)
    assert T.ker.dim == 1 and T.ran.is_zero


@pytest.mark.parametrize("text", [
    "{",
    "[]",
    '{"field": "f4"}',
    '{"relations": {"A": {"dom_dim": 1}}}',
    '{"relations": {"A": {"dom_dim": 1, "codom_dim": 1, "generators": [{"x": [0.5], "y": [1]}]}}}',
    '{"relations": {"A": {"dom_dim": 2, "codom_dim": 1, "generators": [{"x": [1], "y": [1]}]}}}',
    '{"subspaces": {"S": {"ambient": -1}}}',
    '{"subspaces": {"S": {"ambient": 2, "generators": [[1, 2, 3]]}}}',
])
def test_malformed_workspaces(text):
    with pytest.raises(WorkspaceError):
        load_workspace(text)


def test_json_error_has_position():
    with pytest.raises(WorkspaceError, match="line 2 column"):
        load_workspace('{"field": "q",\n  oops}')


def test_workspace_lookup():
    ws = Workspace(GF(3))
    with pytest.raises(KeyError, match="no relation named"):
        ws.relation("X")
    with pytest.raises(KeyError, match="no subspace named"):
        ws.subspace("X")


def test_generic_dispatch():
    T = from_operator(Matrix.identity(1))
    assert to_json([T, T.dom, 3]) == [relation_to_json(T), subspace_to_json(T.dom), 3]
