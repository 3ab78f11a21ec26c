import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.management.commands.sweep import parse_n_range
from core.serializers import load_problem

from .helpers import TWO_BALL


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def write_problem(self, data, name="problem.json"):
        path = self.tmp / name
        text = data if isinstance(data, str) else json.dumps(data)
        path.write_text(text, encoding="utf-8")
        return str(path)

    def run_command(self, name, **options):
        out, err = StringIO(), StringIO()
        call_command(name, stdout=out, stderr=err, **options)
        return out.getvalue(), err.getvalue()


class EstimateCommandTests(CommandTestCase):
    def test_human_output(self):
        out, _ = self.run_command("estimate", input=self.write_problem(TWO_BALL))
        self.assertIn("value      0.353553390593", out)
        self.assertIn("m          2", out)
        self.assertIn("balls      1 2", out)
        self.assertTrue(out.endswith("\n"))

    def test_json_output(self):
        out, _ = self.run_command("estimate", input=self.write_problem(TWO_BALL), format="json")
        data = json.loads(out)
        self.assertAlmostEqual(data["value"], 4 ** -0.75, places=12)

    def test_csv_to_file(self):
        target = self.tmp / "out.csv"
        out, _ = self.run_command("estimate", input=self.write_problem(TWO_BALL), format="csv", output=str(target))
        self.assertEqual(out, "")
        lines = target.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], "log_value,value,m,Z_kind,I,balls,lambda,theta")
        self.assertEqual(len(lines), 2)

    def test_n_override(self):
        out, _ = self.run_command("estimate", input=self.write_problem(TWO_BALL), n=1, format="json")
        self.assertGreaterEqual(json.loads(out)["value"], 4 ** -0.75 - 1e-12)

    def test_malformed_json_is_io_error(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command("estimate", input=self.write_problem("{not json"))
        self.assertEqual(ctx.exception.returncode, 3)

    def test_missing_file_is_io_error(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command("estimate", input=str(self.tmp / "missing.json"))
        self.assertEqual(ctx.exception.returncode, 3)

    def test_validation_error(self):
        bad = dict(TWO_BALL, q=[1.5])
        with self.assertRaises(CommandError) as ctx:
            self.run_command("estimate", input=self.write_problem(bad))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_non_finite_k_is_validation_error(self):
        for token in ("1e400", "NaN", "1" + "0" * 400):
            text = '{"k": [' + token + '], "q": [4], "n": 4, "balls": [{"nu": 1, "p": [1]}]}'
            with self.assertRaises(CommandError) as ctx:
                self.run_command("estimate", input=self.write_problem(text))
            self.assertEqual(ctx.exception.returncode, 2, token)

    def test_n_out_of_range(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command("estimate", input=self.write_problem(TWO_BALL), n=9)
        self.assertEqual(ctx.exception.returncode, 2)


class SweepCommandTests(CommandTestCase):
    def test_parse_n_range(self):
        self.assertEqual(parse_n_range("1..4"), [1, 2, 3, 4])
        self.assertEqual(parse_n_range("3:3"), [3])
        self.assertEqual(parse_n_range("5..4"), [])
        with self.assertRaises(CommandError):
            parse_n_range("1-4")

    def test_full_range(self):
        out, err = self.run_command("sweep", input=self.write_problem(TWO_BALL), n_range="1..8")
        lines = out.splitlines()
        self.assertEqual(lines[0], "n,log_value,value,m,Z_kind,I,lambda,theta")
        self.assertEqual([line.split(",")[0] for line in lines[1:]], [str(n) for n in range(1, 9)])
        self.assertEqual(err, "")

    def test_empty_range(self):
        out, _ = self.run_command("sweep", input=self.write_problem(TWO_BALL), n_range="5..4")
        self.assertEqual(out, "n,log_value,value,m,Z_kind,I,lambda,theta\n")

    def test_inadmissible_n_is_flagged(self):
        out, err = self.run_command("sweep", input=self.write_problem(TWO_BALL), n_values=[4, 99])
        lines = out.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[2].startswith("99,"))
        self.assertIn("n = 99", err)

    def test_n_in_file_is_ignored(self):
        out, err = self.run_command("sweep", input=self.write_problem(dict(TWO_BALL, n=99)), n_range="1..2")
        lines = out.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertEqual([line.split(",")[0] for line in lines[1:]], ["1", "2"])
        self.assertEqual(err, "")


class OracleCommandTests(CommandTestCase):
    def test_fine_grid_passes(self):
        out, _ = self.run_command("oracle", input=self.write_problem(TWO_BALL), grid=400)
        self.assertIn("grid_lambda  0.25 0.75", out)
        self.assertEqual(out.splitlines()[-1], "PASS")

    def test_json_with_phi_check(self):
        out, _ = self.run_command(
            "oracle", input=self.write_problem(TWO_BALL), grid=100, phi_check=50, format="json")
        data = json.loads(out)
        self.assertTrue(data["passed"])
        self.assertEqual(data["phi_check"]["samples"], 50)
        self.assertEqual(data["grid"]["points"], 101)

    def test_degenerate_input_reports_general_position(self):
        problem = {"k": [64, 64], "q": [4, 4], "n": 100,
                   "balls": [{"nu": 1, "x": [0.25, 0.8]}, {"nu": 2, "x": [0.25, 0.1]}]}
        out, _ = self.run_command("oracle", input=self.write_problem(problem), grid=50, scope="off")
        self.assertIn("general_position  false", out)
        self.assertIn(out.splitlines()[-1], ("PASS", "FAIL (not in general position)"))
        out, _ = self.run_command(
            "oracle", input=self.write_problem(problem), grid=50, scope="off", format="json")
        data = json.loads(out)
        self.assertFalse(data["general_position"])
        self.assertNotEqual(data["verdict"], "FAIL")


class GenposCommandTests(CommandTestCase):
    def test_coincident_projection(self):
        problem = {"k": [16], "q": [4], "n": 4, "balls": [{"nu": 1, "p": [3]}, {"nu": 2, "p": [3]}]}
        out, _ = self.run_command("genpos", input=self.write_problem(problem), scope="off")
        self.assertIn("is_general_position  false", out)
        self.assertIn("predicate3_scope     off", out)

    def test_json_report(self):
        problem = {"k": [64, 64], "q": [4, 4], "n": 100,
                   "balls": [{"nu": 1, "x": [0.11, 0.83]}, {"nu": 2, "x": [0.67, 0.21]}]}
        out, _ = self.run_command("genpos", input=self.write_problem(problem), scope="full", format="json")
        data = json.loads(out)
        self.assertTrue(data["is_general_position"])
        self.assertTrue(data["predicate3_checked"])


class PerturbCommandTests(CommandTestCase):
    DEGENERATE = {"k": [64, 64], "q": [4, 4], "n": 100,
                  "balls": [{"nu": 1, "x": [0.25, 0.8]}, {"nu": 2, "x": [0.25, 0.1]}]}

    def test_output_is_reproducible(self):
        source = self.write_problem(self.DEGENERATE)
        first, second = self.tmp / "a.json", self.tmp / "b.json"
        self.run_command("perturb", input=source, epsilon=1e-3, seed=4, scope="off", output=str(first))
        self.run_command("perturb", input=source, epsilon=1e-3, seed=4, scope="off", output=str(second))
        self.assertEqual(first.read_bytes(), second.read_bytes())
        moved = load_problem(first.read_text(encoding="utf-8"))
        self.assertEqual([b.nu for b in moved.balls], [1.0, 2.0])

    def test_epsilon_required(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command("perturb", input=self.write_problem(self.DEGENERATE))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_stability_table(self):
        out, _ = self.run_command("perturb", input=self.write_problem(self.DEGENERATE), probe=[0.0], scope="off")
        self.assertEqual(out, "epsilon,deviation\n0,0\n")


class WitnessCommandTests(CommandTestCase):
    def test_default_alpha_from_winner(self):
        problem = dict(TWO_BALL, balls=[{"nu": 1, "p": [1]}, {"nu": 1e9, "p": ["inf"]}])
        out, _ = self.run_command("witness", input=self.write_problem(problem))
        self.assertIn("alpha        1", out)
        self.assertIn("regime       low", out)
        self.assertIn("inclusion    PASS", out)

    def test_explicit_alpha_failing_inclusion(self):
        out, err = self.run_command("witness", input=self.write_problem(TWO_BALL), alpha=1)
        self.assertIn("inclusion    FAIL", out)
        self.assertIn("β = 2", err)

    def test_multi_ball_winner_needs_alpha(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command("witness", input=self.write_problem(TWO_BALL))
        self.assertEqual(ctx.exception.returncode, 2)
