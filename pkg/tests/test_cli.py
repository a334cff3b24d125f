import json
import subprocess
import sys

import pytest

from linrel import QQ, Matrix, from_operator
from linrel.cli import main, run
from linrel.jsonio import relation_from_json

WORKSPACE = {
    "field": "q",
    "relations": {
        "I": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0], "y": [1, 0]}, {"x": [0, 1], "y": [0, 1]}]},
        "R": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0], "y": [1, 0]}, {"x": [0, 1], "y": [1, 1]}]},
        "T": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0], "y": [1, 1]}, {"x": [0, 1], "y": [0, 0]}]},
        "D": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0], "y": [1, 0]}, {"x": [0, 1], "y": [0, 0]}]},
        "M": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0], "y": [1, 0]}, {"x": [0, 0], "y": [1, 0]}]},
        "V": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [0, 0], "y": [1, 0]}]},
        "Z": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0], "y": [0, 0]}, {"x": [0, 1], "y": [0, 0]}]},
        "Two": {"dom_dim": 2, "codom_dim": 2, "generators": [{"x": [1, 0], "y": [2, 0]}, {"x": [0, 1], "y": [0, 2]}]},
        "Wide": {"dom_dim": 3, "codom_dim": 2, "generators": [{"x": [1, 0, 0], "y": [1, 0]}]},
    },
    "subspaces": {
        "e1": {"ambient": 2, "generators": [[1, 0]]},
        "e2": {"ambient": 2, "generators": [[0, 1]]},
        "w": {"ambient": 3, "generators": [[1, 0, 0]]},
    },
}


@pytest.fixture
def ws(tmp_path):
    path = tmp_path / "ws.json"
    path.write_text(json.dumps(WORKSPACE))
    return str(path)


def graph(rows):
    return from_operator(Matrix.from_rows(rows))


def out_relation(payload):
    return relation_from_json(payload, QQ)


class TestAnalyze:
    def test_identity_flags(self, ws):
        code, out, _ = run(["analyze", ws, "I"])
        assert code == 0
        assert set(out["flags"]) == {"operator", "everywhere_defined", "projection", "mp", "idempotent",
                                     "super_idempotent"}

    def test_overlapping_mp(self, ws):
        code, out, _ = run(["analyze", ws, "M"])
        assert code == 0 and out["mul"]["dim"] == 1
        assert "mp" in out["flags"] and "projection" not in out["flags"]

    def test_rectangular(self, ws):
        code, out, _ = run(["analyze", ws, "Wide"])
        assert code == 0 and out["flags"] == ["operator"]

    def test_unknown_name(self, ws):
        assert run(["analyze", ws, "nope"])[0] == 1

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"field": "q",\n "relations": {')
        code, out, _ = run(["analyze", str(bad), "X"])
        assert code == 3 and "line" in out["error"] and "column" in out["error"]

    def test_missing_file(self, tmp_path):
        assert run(["analyze", str(tmp_path / "none.json"), "X"])[0] == 3


class TestAlgebra:
    def test_compose_matrix_example(self, ws):
        code, out, _ = run(["compose", ws, "R", "T"])
        assert code == 0 and out_relation(out) == graph([[2, 0], [1, 0]])

    def test_inverse_twice(self, ws, tmp_path):
        code, once, _ = run(["inverse", ws, "R"])
        doc = dict(WORKSPACE, relations={"Rinv": once})
        path = tmp_path / "inv.json"
        path.write_text(json.dumps(doc))
        code, twice, _ = run(["inverse", str(path), "Rinv"])
        assert code == 0 and out_relation(twice) == graph([[1, 1], [0, 1]])

    def test_sums(self, ws):
        assert out_relation(run(["sum", ws, "I", "D"])[1]) == graph([[2, 0], [0, 1]])
        assert out_relation(run(["sum", ws, "I", "D", "--difference"])[1]) == graph([[0, 0], [0, 1]])
        code, out, _ = run(["sum", ws, "e1", "e2"])
        assert code == 0 and len(out["generators"]) == 2

    def test_sum_mismatched_ambient(self, ws):
        code, out, _ = run(["sum", ws, "e1", "w"])
        assert code == 1 and "error" in out

    def test_compose_dimension_mismatch(self, ws):
        assert run(["compose", ws, "I", "Wide", "I"])[0] == 1


class TestFactorize:
    def test_douglas_mul_mismatch(self, ws):
        code, out, _ = run(["factorize", ws, "douglas", "V", "Z"])
        assert code == 1 and "mul R ≠ mul S" in out["failed"]

    def test_douglas_success(self, ws):
        code, out, _ = run(["factorize", ws, "douglas", "D", "I"])
        assert code == 0 and out["exact"]
        assert out_relation(out["recomposition"]) == out_relation(out["target"])

    def test_right_projection(self, ws):
        code, out, _ = run(["factorize", ws, "right-proj", "D", "I"])
        assert code == 0 and out_relation(out["factors"][1]) == graph([[1, 0], [0, 0]])

    def test_left_projection(self, ws):
        code, out, _ = run(["factorize", ws, "left-proj", "D", "I"])
        assert code == 0 and out_relation(out["factors"][0]) == graph([[1, 0], [0, 0]])
        assert run(["factorize", ws, "left-proj", "R", "I"])[0] == 1

    def test_mp2_pair(self, ws):
        code, out, _ = run(["factorize", ws, "mp2", "M", "I"])
        assert code == 0 and out["exact"]
        Q0, target = out_relation(out["factors"][1]), out_relation(out["target"])
        assert Q0.dom == target.dom and Q0.ker == target.ker

    def test_mp2_with_certificate(self, ws):
        assert run(["factorize", ws, "mp2", "M", "--certificate", "e1"])[0] == 0
        assert run(["factorize", ws, "mp2", "M", "--certificate", "e2"])[0] == 1

    def test_mp2_needs_mps(self, ws):
        assert run(["factorize", ws, "mp2", "R", "I"])[0] == 1

    def test_wrong_arity(self, ws):
        assert run(["factorize", ws, "douglas", "R"])[0] == 1


class TestMp2:
    def test_member(self, ws):
        code, out, _ = run(["mp2", ws, "M"])
        assert code == 0 and out["member"] is True

    def test_scalar_two_is_rejected(self, ws):
        out = run(["mp2", ws, "Two", "--necessary"])[1]
        assert out["necessary"] is False and out["dim_ran_T_minus_I"] == 2
        assert run(["mp2", ws, "Two"])[1]["member"] is False

    def test_oracle_needs_prime_field(self, ws):
        assert run(["mp2", ws, "M", "--oracle"])[0] == 1

    def test_oracle_over_f2(self, tmp_path):
        doc = {"field": "f2", "relations": {"S": {"dom_dim": 2, "codom_dim": 2, "generators": [
            {"x": [1, 0], "y": [0, 1]}, {"x": [0, 1], "y": [1, 0]}]}}}
        path = tmp_path / "f2.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(["mp2", str(path), "S", "--oracle"])
        assert code == 0 and out["member"] is False
        assert run(["mp2", str(path), "S"])[1]["member"] is False


class TestCheck:
    def test_single_law(self):
        code, out, _ = run(["check", "prop3.6", "--field", "f2", "--dim", "2", "--exhaustive"])
        assert code == 0 and out["passed"] and out["verdicts"][0]["law"] == "prop3.6"

    def test_counterexample_exit_code(self):
        code, out, _ = run(["check", "prop6.6", "--field", "f2", "--dim", "2", "--exhaustive"])
        assert code == 2 and out["verdicts"][0]["failure_count"] == 6
        assert out["verdicts"][0]["failures"][0]["instance"]

    def test_unknown_law(self):
        assert run(["check", "nonexistent-law"])[0] == 1

    def test_bad_field(self):
        assert run(["check", "prop3.6", "--field", "f4"])[0] == 3

    def test_random_mode(self):
        code, out, _ = run(["check", "lemma2.2", "--field", "q", "--dim", "3", "--random", "--trials", "20"])
        assert code == 0 and out["verdicts"][0]["tried"] == 20


class TestProcess:
    def test_parse_error(self):
        assert run(["bogus"])[0] == 3
        assert run([])[0] == 3

    def test_output_is_byte_stable(self, ws, capsys):
        main(["compose", ws, "R", "T"])
        first = capsys.readouterr().out
        main(["compose", ws, "R", "T"])
        assert capsys.readouterr().out == first
        main(["analyze", ws, "M", "--pretty"])
        assert capsys.readouterr().out.startswith("{\n  ")

    def test_module_entry_point(self, ws):
        args = [sys.executable, "-m", "linrel", "check", "cor6.3", "--field", "q", "--dim", "3",
                "--random", "--trials", "10", "--seed", "5"]
        first = subprocess.run(args, capture_output=True, text=True)
        second = subprocess.run(args, capture_output=True, text=True)
        assert first.returncode == 0 and first.stdout == second.stdout
        assert json.loads(first.stdout)["passed"] is True
