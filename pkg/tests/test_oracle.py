import math
from unittest import mock

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from voi_selection.bounds import phi, voi_bound_theorem
from voi_selection.oracle import (
    BayesBelief, CheckResult, binomial_tail, equalising_delta,
    hoeffding_violations, optimal_value, phi_by_minimization, phi_objective,
    policy_value, run_checks, theorem_factor_tight, union_bound_terms,
)
from voi_selection.policies import POLICY_NAMES, PolicyKind

from .utils import BeliefMixin


class OptimalValueTest(SimpleTestCase):
    def test_examples(self):
        belief = BayesBelief.uniform(2)
        self.assertEqual(optimal_value(belief, 0, 0.0).value, 0.5)
        self.assertEqual(optimal_value(belief, 0, 0.0).continuation, ())
        self.assertAlmostEqual(optimal_value(belief, 1, 0.0).value, 7 / 12, places=12)

    def test_expensive_samples(self):
        belief = BayesBelief(((3, 1), (1, 2), (2, 2)))
        for budget in (1, 3, 6):
            self.assertEqual(optimal_value(belief, budget, 1.0).value, 0.75)

    def test_value_is_best_of_stop_and_continue(self):
        result = optimal_value(BayesBelief(((2, 1), (1, 1))), 3, 0.01)
        self.assertEqual(result.value, max([2 / 3] + list(result.continuation)))
        self.assertEqual(len(result.continuation), 2)

    def test_monotone(self):
        for arms in (2, 3):
            belief = BayesBelief.uniform(arms)
            values = [optimal_value(belief, budget, 0.0).value for budget in range(9)]
            self.assertEqual(values, sorted(values))
            costs = [optimal_value(belief, 6, cost).value for cost in (0.0, 0.001, 0.01, 0.1)]
            self.assertEqual(costs, sorted(costs, reverse=True))

    def test_memoized_matches_naive(self):
        belief = BayesBelief(((1, 1), (2, 1), (1, 3)))
        for budget in range(5):
            self.assertEqual(optimal_value(belief, budget, 0.02),
                             optimal_value(belief, budget, 0.02, memoize=False))

    def test_guard(self):
        with self.assertRaises(ValidationError) as cm:
            optimal_value(BayesBelief.uniform(4), 2, 0.0)
        self.assertEqual(cm.exception.code, 'oracle_guard')
        with self.assertRaises(ValidationError):
            optimal_value(BayesBelief.uniform(2), 13, 0.0)

    def test_belief_validation(self):
        with self.assertRaises(ValueError):
            BayesBelief(((0, 1), (1, 1)))
        self.assertEqual(BayesBelief(((3, 1), (1, 1))).means, [0.75, 0.5])


class DominanceTest(SimpleTestCase):
    def test_dp_bounds_policy_values(self):
        for arms in (2, 3):
            for budget in (2, 4, 6):
                if budget < arms:
                    continue
                for cost in (0.0, 0.01):
                    optimum = optimal_value(BayesBelief.uniform(arms), budget, cost).value
                    for name in POLICY_NAMES:
                        mean, stderr = policy_value(PolicyKind.from_name(name, cost), arms, budget,
                                                    cost, episodes=100000, master_seed=arms * 100 + budget)
                        self.assertLessEqual(mean, optimum + 3 * stderr,
                                             '%s with %d arms, budget %d, cost %s' % (name, arms, budget, cost))


class BinomialTailTest(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(binomial_tail(10, 0.5, 0.7), 176 / 1024, places=12)
        self.assertEqual(binomial_tail(10, 0.3, 0.0), 1.0)
        self.assertEqual(binomial_tail(10, 0.0, 0.1), 0.0)
        self.assertEqual(binomial_tail(10, 1.0, 1.05), 0.0)
        self.assertAlmostEqual(binomial_tail(10000, 0.5, 0.6), 0.0, places=20)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            binomial_tail(0, 0.5, 0.5)
        with self.assertRaises(ValueError):
            binomial_tail(10001, 0.5, 0.5)

    def test_hoeffding_grid(self):
        self.assertEqual(hoeffding_violations(), [])


class PhiMinimizationTest(SimpleTestCase):
    def test_minimum(self):
        minimum, argmin = phi_by_minimization()
        self.assertAlmostEqual(minimum, phi(), delta=1e-9)
        self.assertAlmostEqual(argmin, 3 - 2 * math.sqrt(2), delta=1e-6)
        self.assertEqual(phi_objective(1.0), 2.0)
        self.assertGreater(phi_objective(1.0), minimum)


class UnionBoundTest(BeliefMixin, SimpleTestCase):
    def test_equalising_delta(self):
        for gap in (0.05, 0.2, 0.5):
            for n, N in ((1, 1), (3, 50), (40, 7)):
                past, future = union_bound_terms(gap, n, N, equalising_delta(gap, n, N))
                self.assertAlmostEqual(past, future, places=14)
                self.assertLessEqual(past + future, 2 * math.exp(-phi() * gap ** 2 * n) * (1 + 1e-12))

    def test_tight_factor(self):
        for state in self.random_states(200, seed=37):
            for i in range(len(state)):
                for N in (1, 10, 1000):
                    self.assertLessEqual(theorem_factor_tight(state, i, N),
                                         voi_bound_theorem(state, i, N, 1.0) * (1 + 1e-12))

    def test_tight_factor_example(self):
        state = self.make_state((25, 17.5), (20, 10.0))
        self.assertAlmostEqual(theorem_factor_tight(state, 0, 100), 100 * 0.5 / 125)


class RunChecksTest(SimpleTestCase):
    @mock.patch('voi_selection.oracle.logger')
    def test_all_pass(self, logger):
        results = run_checks()
        self.assertEqual([result.name for result in results], ['phi', 'hoeffding', 'delta', 'dp'])
        self.assertTrue(all(result.passed for result in results), [str(result) for result in results])
        self.assertEqual(logger.info.call_count, 4)
        logger.warning.assert_not_called()

    def test_str(self):
        self.assertEqual(str(CheckResult('phi', True, 'fine')), 'phi OK (fine)')
        self.assertEqual(str(CheckResult('dp', False, '1 memo mismatches')), 'dp FAILED (1 memo mismatches)')
