import math

from django.test import SimpleTestCase

from core.problem import (
    BallSpec,
    DimensionMismatch,
    LogValue,
    ProblemSpec,
    RangeError,
    ReciprocalVector,
    WidthIndexError,
    build_problem,
    p_of_reciprocal,
    reciprocal_of_p,
    validate,
    with_n,
    with_points,
)


class ReciprocalTests(SimpleTestCase):
    def test_reciprocal_of_p_maps_boundaries(self):
        self.assertEqual(reciprocal_of_p([1, 2, "inf"]).x, (1.0, 0.5, 0.0))
        self.assertEqual(reciprocal_of_p([math.inf, "Infinity"]).x, (0.0, 0.0))

    def test_p_below_one_is_rejected(self):
        with self.assertRaises(RangeError):
            reciprocal_of_p([0.5])
        with self.assertRaises(RangeError):
            reciprocal_of_p(["abc"])

    def test_p_of_reciprocal_inverts(self):
        self.assertEqual(p_of_reciprocal((1.0, 0.5, 0.0)), (1.0, 2.0, math.inf))
        self.assertEqual(ReciprocalVector((0.25,)).p, (4.0,))

    def test_log_value(self):
        self.assertAlmostEqual(LogValue.of(8.0).value, 8.0, places=12)
        self.assertLess(LogValue(-1.0), LogValue(0.0))


class ValidateTests(SimpleTestCase):
    def _spec(self, **overrides):
        base = dict(
            k=(16, 16),
            q=(4.0, 4.0),
            n=8,
            balls=(BallSpec(1.0, ReciprocalVector((1.0, 0.0))),),
        )
        base.update(overrides)
        return ProblemSpec(**base)

    def test_valid_problem_is_canonical_and_idempotent(self):
        once = validate(self._spec())
        self.assertEqual(validate(once), once)
        self.assertEqual(once.d, 2)
        self.assertEqual(once.max_n, 128)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            validate(self._spec(q=(4.0,)))
        with self.assertRaises(DimensionMismatch):
            validate(self._spec(balls=(BallSpec(1.0, ReciprocalVector((1.0,))),)))

    def test_q_below_two_and_bad_k(self):
        with self.assertRaises(RangeError):
            validate(self._spec(q=(1.5, 4.0)))
        with self.assertRaises(RangeError):
            validate(self._spec(k=(0, 16)))
        with self.assertRaises(RangeError):
            validate(self._spec(k=(2.5, 16)))

    def test_nu_must_be_positive(self):
        with self.assertRaises(RangeError) as ctx:
            validate(self._spec(balls=(BallSpec(0.0, ReciprocalVector((1.0, 0.0))),)))
        self.assertEqual(ctx.exception.code, "range")

    def test_width_index_bounds(self):
        with self.assertRaises(WidthIndexError):
            validate(self._spec(n=0))
        with self.assertRaises(WidthIndexError):
            validate(self._spec(n=129))
        self.assertEqual(validate(self._spec(n=128)).n, 128)

    def test_k_product_one_leaves_no_admissible_n(self):
        with self.assertRaises(WidthIndexError):
            build_problem(k=[1], q=[4], n=1, balls=[(1.0, [2])])

    def test_duplicate_balls_are_merged(self):
        problem = build_problem(k=[16], q=[4], n=4, balls=[(1.0, [1]), (1.0, [1]), (2.0, [1])])
        self.assertEqual(len(problem.balls), 2)
        self.assertEqual([b.nu for b in problem.balls], [1.0, 2.0])

    def test_with_n_revalidates(self):
        problem = build_problem(k=[16], q=[4], n=4, balls=[(1.0, [1])])
        self.assertEqual(with_n(problem, 8).n, 8)
        with self.assertRaises(WidthIndexError):
            with_n(problem, 9)

    def test_with_points_keeps_weights(self):
        problem = build_problem(k=[16], q=[4], n=4, balls=[(1.0, [1]), (0.25, ["inf"])])
        moved = with_points(problem, [[0.9], [0.1]])
        self.assertEqual([b.nu for b in moved.balls], [1.0, 0.25])
        self.assertEqual(moved.balls[1].p.x, (0.1,))
