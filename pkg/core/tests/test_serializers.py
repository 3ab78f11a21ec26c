import json
import math

from django.test import SimpleTestCase

from core.estimator import estimate
from core.forms import ProblemForm
from core.problem import DimensionMismatch, ProblemValidationError, RangeError, WidthIndexError
from core.serializers import dump_problem, fmt, fmt_list, load_problem, result_to_dict

from .helpers import TWO_BALL, two_ball_problem


class LoadProblemTests(SimpleTestCase):
    def test_exponent_document(self):
        problem = load_problem(json.dumps(TWO_BALL))
        self.assertEqual(problem, two_ball_problem())
        self.assertEqual(problem.balls[1].p.x, (0.0,))

    def test_reciprocal_document(self):
        doc = dict(TWO_BALL, balls=[{"nu": 1, "x": [1.0]}, {"nu": 0.25, "x": [0]}])
        self.assertEqual(load_problem(json.dumps(doc)), two_ball_problem())

    def test_n_override(self):
        self.assertEqual(load_problem(json.dumps(TWO_BALL), n=2).n, 2)

    def test_whole_float_n_is_accepted(self):
        self.assertEqual(load_problem(json.dumps(dict(TWO_BALL, n=8.0))).n, 8)

    def test_fractional_n(self):
        with self.assertRaises(WidthIndexError):
            load_problem(json.dumps(dict(TWO_BALL, n=8.5)))

    def test_length_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            load_problem(json.dumps(dict(TWO_BALL, q=[4, 4])))

    def test_ball_needs_exactly_one_coordinate_form(self):
        doc = dict(TWO_BALL, balls=[{"nu": 1, "p": [1], "x": [1]}])
        with self.assertRaises(RangeError):
            load_problem(json.dumps(doc))

    def test_unknown_token(self):
        doc = dict(TWO_BALL, balls=[{"nu": 1, "p": ["infinity-ish"]}])
        with self.assertRaises(ProblemValidationError):
            load_problem(json.dumps(doc))

    def test_missing_field(self):
        doc = {key: value for key, value in TWO_BALL.items() if key != "k"}
        with self.assertRaises(ProblemValidationError):
            load_problem(json.dumps(doc))

    def test_document_must_be_object(self):
        with self.assertRaises(ValueError):
            load_problem("[1, 2]")
        with self.assertRaises(ValueError):
            load_problem("{broken")


class ProblemFormTests(SimpleTestCase):
    def test_cleaned_problem(self):
        form = ProblemForm.from_document(TWO_BALL)
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data["problem"].k, (16,))

    def test_non_finite_k_is_range_error(self):
        for value in (math.inf, math.nan):
            form = ProblemForm.from_document(dict(TWO_BALL, k=[value]))
            with self.assertRaises(RangeError):
                form.problem()

    def test_ball_numbers_outside_float_range(self):
        huge = 10 ** 400
        for ball in ({"nu": huge, "p": [1]}, {"nu": 1, "p": [huge]}, {"nu": math.nan, "x": [0.5]}):
            form = ProblemForm.from_document(dict(TWO_BALL, balls=[ball]))
            with self.assertRaises(RangeError):
                form.problem()

    def test_typed_error_survives_form(self):
        form = ProblemForm.from_document(dict(TWO_BALL, n=0))
        self.assertFalse(form.is_valid())
        with self.assertRaises(WidthIndexError) as ctx:
            form.problem()
        self.assertEqual(ctx.exception.code, "width_index")


class DumpTests(SimpleTestCase):
    def test_dump_is_deterministic_and_reloadable(self):
        problem = two_ball_problem()
        text = dump_problem(problem)
        self.assertTrue(text.endswith("}\n"))
        self.assertIn('"inf"', text)
        self.assertEqual(dump_problem(load_problem(text)), text)

    def test_reciprocal_dump_keeps_points_exact(self):
        problem = load_problem(json.dumps(dict(TWO_BALL, balls=[{"nu": 1, "x": [0.1234567890123]}])))
        text = dump_problem(problem, reciprocal=True)
        self.assertEqual(load_problem(text).balls[0].p.x, (0.1234567890123,))


class FormattingTests(SimpleTestCase):
    def test_fmt(self):
        self.assertEqual(fmt(4 ** -0.75), "0.353553390593")
        self.assertEqual(fmt(math.inf), "inf")
        self.assertEqual(fmt(None), "")
        self.assertEqual(fmt_list([0.25, 0.75]), "0.25 0.75")

    def test_result_dict(self):
        data = result_to_dict(estimate(two_ball_problem()), diagnostics=True)
        self.assertEqual(data["winner"]["m"], 2)
        self.assertEqual(data["winner"]["Z_kind"], "QFace")
        self.assertEqual(data["winner"]["I"], [1])
        self.assertEqual(data["winner"]["ball_indices"], [1, 2])
        for rejection in data["rejections"]:
            self.assertNotIn(0, rejection["ball_indices"])
        self.assertIsInstance(data["rejections"], list)
