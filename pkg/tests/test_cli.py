"""The command-line driver, the instance file format and the expression
evaluator."""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from semicross.cli import eval_expression, main
from semicross.errors import EvalError, SchemaError
from semicross.io_json import load_instance, parse_instance, serialize_instance

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_flip_passes_with_pa1_counts(self, capsys):
        code, out, _ = run(capsys, "validate", str(INSTANCES / "flip.json"))
        assert code == 0
        assert "PA1: 25/25 pass" in out

    def test_semi_table_star_reconstructed(self, capsys):
        code, out, _ = run(capsys, "validate", str(INSTANCES / "semi_table.json"))
        assert code == 0
        assert "star map reconstructed" in out

    def test_matrix_instance_passes(self, capsys):
        code, out, _ = run(capsys, "validate", str(INSTANCES / "m2.json"))
        assert code == 0

    def test_corrupted_file_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert "line" in err

    def test_schema_error_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"semigroup": {"carrier": ["1"]}}))
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2

    def test_axiom_failure_exits_1(self, capsys, tmp_path):
        doc = json.loads((INSTANCES / "semi_table.json").read_text())
        doc["action"]["maps"]["e"] = [[[2, 0], [0, 0]]]  # scaled, not isometric
        bad = tmp_path / "broken.json"
        bad.write_text(json.dumps(doc))
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 1

    def test_json_flag_shapes_output(self, capsys):
        code, out, _ = run(capsys, "--json", "validate", str(INSTANCES / "flip.json"))
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "validate"
        assert all(r["passed"] for r in doc["reports"])

    def test_json_flag_reports_error_codes(self, capsys, tmp_path):
        doc = json.loads((INSTANCES / "semi_table.json").read_text())
        doc["action"]["ideals"]["e"] = [[[1, 0], [1, 0]]]  # not an ideal
        bad = tmp_path / "broken.json"
        bad.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "--json", "validate", str(bad))
        assert code == 1
        assert json.loads(out)["error"]["code"] == "NotAnIdeal"


class TestBuild:
    def test_semi_dimensions(self, capsys):
        code, out, _ = run(
            capsys,
            "build",
            str(INSTANCES / "semi.json"),
            "--null",
            "--quotient",
            "--seminorm",
            "reg",
        )
        assert code == 0
        assert "dim ell1 = 3" in out
        assert "dim null = 1" in out
        assert "dim quotient = 2" in out
        assert "null inside kernel: True (equal: True)" in out

    def test_flip_with_regular_family(self, capsys):
        code, out, _ = run(
            capsys, "build", str(INSTANCES / "flip.json"), "--seminorm", "reg"
        )
        assert code == 0
        assert "dim seminorm kernel = 0" in out
        assert "dim family crossed product = 4" in out

    def test_group_instance_dispatches_the_group_checks(self, capsys):
        code, out, _ = run(capsys, "build", str(INSTANCES / "z2.json"))
        assert code == 0
        assert "group case" in out

    def test_unknown_rep_id(self, capsys):
        code, _, err = run(
            capsys, "build", str(INSTANCES / "flip.json"), "--seminorm", "nope"
        )
        assert code == 2

    def test_report_subcommand(self, capsys):
        code, out, _ = run(capsys, "report", str(INSTANCES / "sim2.json"))
        assert code == 0
        assert "dim ell1 = 8" in out
        assert "dim null = 4" in out
        assert "dim quotient = 4" in out

    def test_matrix_group_action_kernel_strictly_above_null(self, capsys):
        # one 2-dimensional representation cannot see all of the 8-dimensional
        # section algebra of the swap-conjugation action, so its kernel is a
        # proper convolution ideal above the (trivial) difference ideal
        code, out, _ = run(
            capsys, "build", str(INSTANCES / "m2_swap.json"), "--seminorm", "sw"
        )
        assert code == 0
        assert "dim null = 0" in out
        assert "dim seminorm kernel = 4" in out
        assert "null inside kernel: True (equal: False)" in out


class TestEval:
    def test_norm_of_convolution(self, capsys):
        code, out, _ = run(
            capsys, "eval", str(INSTANCES / "flip.json"), "norm1(conv(a, b))"
        )
        assert code == 0
        assert float(out.strip()) == pytest.approx(1.0)

    def test_double_star_is_identity(self, capsys):
        code, out, _ = run(
            capsys, "eval", str(INSTANCES / "flip.json"), "star(star(a)) - a"
        )
        assert code == 0
        assert out.strip() == "0"

    def test_quotient_norm_of_semi_coset(self, capsys):
        code, out, _ = run(capsys, "eval", str(INSTANCES / "semi.json"), "qnorm(a)")
        assert code == 0
        assert float(out.strip()) == pytest.approx(1.0, rel=2e-3)

    def test_seminorm_uses_the_file_representations(self, capsys):
        code, out, _ = run(capsys, "eval", str(INSTANCES / "semi.json"), "snorm(g)")
        assert code == 0
        assert float(out.strip()) == pytest.approx(0.0, abs=1e-9)

    def test_scalar_multiples_and_sums(self, capsys):
        code, out, _ = run(
            capsys, "eval", str(INSTANCES / "flip.json"), "norm1(2*a + a*0.5)"
        )
        assert code == 0
        assert float(out.strip()) == pytest.approx(2.5)

    def test_convolution_via_star_operator(self, capsys):
        code, out, _ = run(capsys, "eval", str(INSTANCES / "flip.json"), "norm1(a*b)")
        assert code == 0
        assert float(out.strip()) == pytest.approx(1.0)

    def test_unknown_name_reports_position(self):
        inst = load_instance(INSTANCES / "flip.json")
        with pytest.raises(EvalError) as err:
            eval_expression("norm1(zzz)", inst)
        assert err.value.position == 6

    def test_rejects_arbitrary_syntax(self):
        inst = load_instance(INSTANCES / "flip.json")
        with pytest.raises(EvalError):
            eval_expression("__import__('os')", inst)
        with pytest.raises(EvalError):
            eval_expression("a + 1", inst)


class TestRoundTrip:
    @pytest.mark.parametrize(
        "name", ["flip", "semi", "sim2", "z2", "semi_table", "m2"]
    )
    def test_serialize_parse_is_bit_for_bit(self, name):
        text = (INSTANCES / f"{name}.json").read_text()
        first = parse_instance(text)
        emitted = serialize_instance(first)
        second = parse_instance(emitted)
        assert np.array_equal(first.semigroup.table, second.semigroup.table)
        assert first.semigroup.labels == second.semigroup.labels
        for t in range(len(first.semigroup)):
            assert np.array_equal(
                first.action.ideal(t).basis, second.action.ideal(t).basis
            )
            assert np.array_equal(
                first.action.paut(t).matrix, second.action.paut(t).matrix
            )
        for key, rep in first.representations.items():
            assert np.array_equal(rep.pi, second.representations[key].pi)
            assert np.array_equal(rep.v, second.representations[key].v)
        for key, f in first.elements.items():
            assert np.array_equal(f.to_dense(), second.elements[key].to_dense())
        assert serialize_instance(second) == emitted

    def test_elements_outside_ideals_are_rejected(self, tmp_path):
        doc = json.loads((INSTANCES / "flip.json").read_text())
        doc["elements"] = {"bad": [["(1>2)", [[1, 0], [0, 0]]]]}  # d1 not in I_t
        with pytest.raises(SchemaError):
            parse_instance(json.dumps(doc))


class TestConsoleScript:
    def test_entry_point_runs(self):
        result = subprocess.run(
            [sys.executable, "-m", "semicross.cli", "validate", str(INSTANCES / "flip.json")],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "PA1: 25/25 pass" in result.stdout
