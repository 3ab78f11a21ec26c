import math

import numpy as np
from django.test import SimpleTestCase

from core.estimator import estimate
from core.genpos import Scope, check_general_position
from core.oracle import GridSpec, equivalence_holds, exhaustive_phi_check, grid_min, lipschitz_bound, verdict
from core.problem import CapacityError, RangeError

from .helpers import random_problem, two_ball_problem


class GridSpecTests(SimpleTestCase):
    def test_resolution_must_be_at_least_two(self):
        with self.assertRaises(RangeError):
            GridSpec(1)

    def test_point_count(self):
        self.assertEqual(GridSpec(2).point_count(2), 3)
        self.assertEqual(GridSpec(400).point_count(3), math.comb(402, 2))


class GridMinTests(SimpleTestCase):
    def test_coarse_grid(self):
        result = grid_min(two_ball_problem(), GridSpec(2))
        self.assertAlmostEqual(result.log_value.value, 0.5, places=12)
        self.assertEqual(result.points, 3)

    def test_fine_grid_hits_structured_minimum(self):
        problem = two_ball_problem()
        result = grid_min(problem, GridSpec(400))
        self.assertAlmostEqual(result.log_value.log_value, -0.75 * math.log(4.0), delta=1e-9)
        self.assertEqual(result.weights, (0.25, 0.75))
        self.assertTrue(equivalence_holds(estimate(problem).log_value.log_value, result))

    def test_error_bound_is_lipschitz_times_step(self):
        problem = two_ball_problem()
        result = grid_min(problem, GridSpec(50))
        self.assertAlmostEqual(result.error_bound, lipschitz_bound(problem) / 50, places=12)

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            grid_min(two_ball_problem(), GridSpec(400, max_points=100))

    def test_grid_agrees_with_estimate_on_general_position_instances(self):
        rng = np.random.default_rng(2024)
        checked = 0
        for _ in range(40):
            problem = random_problem(rng, d=int(rng.integers(1, 3)), size=int(rng.integers(1, 4)))
            if not check_general_position(problem, scope=Scope.FULL).is_general_position:
                continue
            est = estimate(problem).log_value.log_value
            grid = grid_min(problem, GridSpec(200))
            self.assertLessEqual(est, grid.log_value.log_value + 1e-9)
            self.assertLessEqual(grid.log_value.log_value, est + grid.error_bound)
            checked += 1
        self.assertGreaterEqual(checked, 20)


class PhiCheckTests(SimpleTestCase):
    def test_report_is_deterministic(self):
        a = exhaustive_phi_check(300, dims=3, seed=5)
        b = exhaustive_phi_check(300, dims=3, seed=5)
        self.assertEqual(a.max_abs_diff, b.max_abs_diff)
        self.assertTrue(a.passed)

    def test_explicit_dimensions(self):
        report = exhaustive_phi_check(200, dims=[1], seed=1)
        self.assertEqual(report.samples, 200)
        self.assertTrue(report.passed)


class VerdictTests(SimpleTestCase):
    def test_labels(self):
        self.assertEqual(verdict(True, True), "PASS")
        self.assertEqual(verdict(True, False), "PASS")
        self.assertEqual(verdict(False, True), "FAIL")
        self.assertEqual(verdict(False, False), "FAIL (not in general position)")
