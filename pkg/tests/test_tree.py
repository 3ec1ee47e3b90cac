import math
from unittest import mock

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings

from example.games import TrapTree

from voi_selection import signals
from voi_selection.core import SelectionProblem
from voi_selection.policies import PolicyKind, SamplingRule
from voi_selection.simulation import ExperimentConfig, run_experiment, run_trial
from voi_selection.streams import TrialStreams
from voi_selection.tree.games import BanditTree, BanditTreeSpec, GameModel
from voi_selection.tree.search import (
    SearchBudget, SearchTree, UctNode, evaluate_episodes,
    evaluate_tree_policies, hybrid_search, run_episode, uct_search,
    uct_select,
)


def make_node(*children):
    node = UctNode()
    node.expand(children)
    for child, (visits, mean) in zip(node.children, children):
        child.visits, child.payoff_sum = visits, visits * mean
    node.visits = sum(child.visits for child in node.children)
    return node


class CountingTree(BanditTree):
    """Bandit tree that records every terminal payoff it hands out."""
    def __init__(self, *args, **kwargs):
        super(CountingTree, self).__init__(*args, **kwargs)
        self.payoffs = []

    def payoff(self, state, rng):
        value = super(CountingTree, self).payoff(state, rng)
        self.payoffs.append((state, value))
        return value


class BanditTreeTest(SimpleTestCase):
    def test_spec_guards(self):
        for depth, branching in ((0, 2), (5, 2), (2, 0), (2, 9)):
            with self.assertRaises(ValidationError):
                BanditTreeSpec(depth, branching)
        self.assertEqual(BanditTreeSpec(2, 5).leaves, 25)

    def test_moves_and_values(self):
        game = BanditTree(BanditTreeSpec(2, 2), leaf_means=[0.1, 0.4, 0.9, 0.2])
        self.assertEqual(game.legal_moves(()), (0, 1))
        self.assertEqual(game.legal_moves((1, 0)), ())
        self.assertTrue(game.is_terminal((1, 0)))
        self.assertEqual(game.value(()), 0.9)
        self.assertEqual(game.value((0,)), 0.4)
        self.assertEqual(game.value((1, 1)), 0.2)

    def test_depth_one_matches_flat_means(self):
        game = BanditTree(BanditTreeSpec(1, 6), master_seed=3, trial=9)
        np.testing.assert_array_equal(game.leaf_means, TrialStreams(3, 9).means(6))

    def test_leaf_means_validation(self):
        with self.assertRaises(ValueError):
            BanditTree(BanditTreeSpec(2, 2), leaf_means=[0.1, 0.2])

    def test_value_is_abstract_default(self):
        class Coin(GameModel):
            def root(self):
                return 0

            def legal_moves(self, state):
                return (0,)

            def successor(self, state, move):
                return 1

            def is_terminal(self, state):
                return state == 1

            def payoff(self, state, rng):
                return 1.0

        self.assertEqual(Coin().rollout(0, np.random.default_rng(0)), 1.0)
        with self.assertRaises(NotImplementedError):
            Coin().value(0)


class UctSelectTest(SimpleTestCase):
    def test_single_child(self):
        self.assertEqual(uct_select(make_node((3, 0.2)), math.sqrt(2)), 0)

    def test_scores(self):
        self.assertEqual(uct_select(make_node((10, 0.6), (5, 0.5)), math.sqrt(2)), 1)
        self.assertEqual(uct_select(make_node((10, 0.6), (5, 0.5)), 0.0), 0)

    def test_unvisited_first(self):
        self.assertEqual(uct_select(make_node((10, 0.9), (0, 0.0), (0, 0.0)), math.sqrt(2)), 1)

    def test_ties(self):
        self.assertEqual(uct_select(make_node((4, 0.5), (4, 0.5)), 1.0), 0)

    def test_no_children(self):
        with self.assertRaises(ValueError):
            uct_select(UctNode(), 1.0)


class SearchBudgetTest(SimpleTestCase):
    def test_available(self):
        self.assertEqual(SearchBudget(100, 40).available, 140)
        with self.assertRaises(ValueError):
            SearchBudget(0)
        with self.assertRaises(ValueError):
            SearchBudget(10, -1)


class SearchTreeTest(SimpleTestCase):
    def assertConserved(self, node):
        if node.children:
            self.assertEqual(node.visits, sum(child.visits for child in node.children) + node.rollouts)
            self.assertAlmostEqual(node.payoff_sum,
                                   math.fsum(child.payoff_sum for child in node.children) + node.rollout_sum)
            for child in node.children:
                self.assertConserved(child)
        else:
            self.assertEqual(node.visits, node.rollouts)
            self.assertEqual(node.payoff_sum, node.rollout_sum)

    def test_backup_conservation(self):
        game = CountingTree(BanditTreeSpec(3, 3), master_seed=5)
        tree = SearchTree(game, (), math.sqrt(2))
        rng = np.random.default_rng(1)
        for index in range(200):
            tree.rollout(index % 3, rng)
        self.assertEqual(tree.root.visits, 200)
        self.assertEqual(len(game.payoffs), 200)
        self.assertEqual(tree.root.payoff_sum, sum(value for _, value in game.payoffs))
        self.assertConserved(tree.root)

    def test_belief(self):
        game = BanditTree(BanditTreeSpec(1, 2), leaf_means=[1.0, 0.0])
        tree = SearchTree(game, (), 1.0)
        rng = np.random.default_rng(0)
        tree.rollout(0, rng)
        tree.rollout(1, rng)
        belief = tree.belief()
        self.assertEqual(belief.means, [1.0, 0.0])
        self.assertEqual(tree.best_move(), 0)


class HybridSearchTest(SimpleTestCase):
    def test_depth_one_reduction(self):
        policy = PolicyKind(SamplingRule.VOI)
        for case in range(100):
            arms = 2 + case % 7
            budget = arms + 5 + 3 * case
            game = BanditTree(BanditTreeSpec(1, arms), master_seed=77, trial=case)
            streams = TrialStreams(77, case)
            move, used = hybrid_search(game, SearchBudget(budget), 0.0, streams)
            chosen, _, flat_used = run_trial(policy, SelectionProblem(game.leaf_means), budget, streams)
            self.assertEqual((move, used), (chosen, flat_used))

    def test_depth_one_reduction_with_cost(self):
        for case in range(30):
            game = BanditTree(BanditTreeSpec(1, 5), master_seed=78, trial=case)
            streams = TrialStreams(78, case)
            result = hybrid_search(game, SearchBudget(300), 1e-3, streams)
            chosen, _, used = run_trial(PolicyKind(SamplingRule.VOI, 1e-3),
                                        SelectionProblem(game.leaf_means), 300, streams)
            self.assertEqual(result, (chosen, used))

    def test_huge_cost(self):
        game = BanditTree(BanditTreeSpec(2, 4), master_seed=1)
        self.assertEqual(hybrid_search(game, SearchBudget(100), 2.0, TrialStreams(1, 0))[1], 4)

    def test_zero_cost_spends_budget(self):
        game = BanditTree(BanditTreeSpec(3, 3), master_seed=2)
        self.assertEqual(hybrid_search(game, SearchBudget(50, 25), 0.0, TrialStreams(2, 0))[1], 75)
        self.assertEqual(uct_search(game, SearchBudget(50, 25), TrialStreams(2, 0))[1], 75)

    def test_budget_too_small(self):
        game = BanditTree(BanditTreeSpec(2, 5))
        for search in (lambda: hybrid_search(game, SearchBudget(4), 0.0, TrialStreams(0, 0)),
                       lambda: uct_search(game, SearchBudget(4), TrialStreams(0, 0))):
            with self.assertRaises(ValidationError) as cm:
                search()
            self.assertEqual(cm.exception.code, 'budget_too_small')

    def test_terminal_state(self):
        game = BanditTree(BanditTreeSpec(1, 2))
        with self.assertRaises(ValueError):
            hybrid_search(game, SearchBudget(10), 0.0, TrialStreams(0, 0), state=(0,))

    def test_single_move(self):
        game = BanditTree(BanditTreeSpec(3, 1))
        self.assertEqual(hybrid_search(game, SearchBudget(10), 0.0, TrialStreams(0, 0)), (0, 0))
        self.assertEqual(uct_search(game, SearchBudget(10), TrialStreams(0, 0)), (0, 0))

    def test_exploration_setting(self):
        game = BanditTree(BanditTreeSpec(2, 3), master_seed=4)
        with mock.patch('voi_selection.tree.search.SearchTree', wraps=SearchTree) as tree_class:
            with override_settings(VOI_SELECTION_UCT_EXPLORATION=0.5):
                uct_search(game, SearchBudget(20), TrialStreams(4, 0))
            self.assertEqual(tree_class.call_args[0][2], 0.5)
            uct_search(game, SearchBudget(20), TrialStreams(4, 0), exploration=2.0)
            self.assertEqual(tree_class.call_args[0][2], 2.0)


class RunEpisodeTest(SimpleTestCase):
    def test_carryover(self):
        game = BanditTree(BanditTreeSpec(2, 3), master_seed=6)
        budgets = []

        def search(game, budget, cost, streams, state, step, exploration):
            budgets.append(budget.available)
            return 0, 60

        with mock.patch('voi_selection.tree.search.hybrid_search', side_effect=search):
            played = run_episode(game, 100, 0.0, TrialStreams(6, 0))
        self.assertEqual(budgets, [100, 140])
        self.assertEqual(played, [(0, 60), (0, 60)])

    def test_zero_cost_has_no_carryover(self):
        game = BanditTree(BanditTreeSpec(3, 4), master_seed=7)
        played = run_episode(game, 30, 0.0, TrialStreams(7, 0))
        self.assertEqual([used for _, used in played], [30, 30, 30])

    def test_conservation(self):
        for trial in range(10):
            game = BanditTree(BanditTreeSpec(3, 4), master_seed=8, trial=trial)
            played = run_episode(game, 40, 1e-3, TrialStreams(8, trial))
            self.assertEqual(len(played), 3)
            self.assertLessEqual(sum(used for _, used in played), 3 * 40)
            self.assertTrue(game.is_terminal(tuple(move for move, _ in played)))

    def test_uct_episode(self):
        game = BanditTree(BanditTreeSpec(2, 3), master_seed=9)
        played = run_episode(game, 25, 0.5, TrialStreams(9, 0), search='uct')
        self.assertEqual([used for _, used in played], [25, 25])


class EvaluateTreePoliciesTest(SimpleTestCase):
    def test_rows(self):
        receiver = mock.Mock()
        signals.experiment_finished.connect(receiver)
        self.addCleanup(signals.experiment_finished.disconnect, receiver)
        rows = evaluate_tree_policies(BanditTreeSpec(2, 3), 30, 20, master_seed=1)
        self.assertEqual([(row.policy, row.budget, row.trials, row.domain) for row in rows],
                         [('uct', 30, 20, 'tree'), ('voi', 30, 20, 'tree')])
        self.assertEqual(rows[0].mean_samples_used, 30)
        receiver.assert_called_once_with(signal=signals.experiment_finished, sender='tree', rows=rows)

    def test_single_move(self):
        for row in evaluate_tree_policies(BanditTreeSpec(2, 1), 10, 5, master_seed=0):
            self.assertEqual(row.mean_regret, 0.0)

    def test_depth_one_matches_flat(self):
        config = ExperimentConfig(arms=4, budgets=(40,), trials=50, master_seed=12,
                                  policies=(PolicyKind(SamplingRule.VOI),))
        flat = run_experiment(config)[0]
        tree = evaluate_tree_policies(BanditTreeSpec(1, 4), 40, 50, master_seed=12)[1]
        self.assertEqual(tree.mean_regret, flat.mean_regret)
        self.assertEqual(tree.stderr_regret, flat.stderr_regret)

    def test_deterministic(self):
        spec = BanditTreeSpec(2, 3)
        first = evaluate_tree_policies(spec, 30, 20, master_seed=3, cost=1e-4, threads=1)
        self.assertEqual(evaluate_tree_policies(spec, 30, 20, master_seed=3, cost=1e-4, threads=4), first)

    def test_stopping_monotone(self):
        spec = BanditTreeSpec(2, 3)
        used = [evaluate_tree_policies(spec, 200, 40, master_seed=5, cost=cost)[1].mean_samples_used
                for cost in (0.0, 1e-8, 1e-6, 1e-4, 1e-2)]
        self.assertEqual(used[0], 200)
        self.assertEqual(used, sorted(used, reverse=True))

    @override_settings(VOI_SELECTION_GAME='tests.test_tree.CountingTree')
    def test_game_setting(self):
        with mock.patch.object(CountingTree, 'payoff', autospec=True,
                               side_effect=lambda self, state, rng: 0.5) as payoff:
            rows = evaluate_tree_policies(BanditTreeSpec(1, 3), 9, 2, master_seed=0, threads=1)
        self.assertEqual(payoff.call_count, 2 * 2 * 9)
        self.assertEqual(len(rows), 2)

    def test_hybrid_against_uct(self):
        spec = BanditTreeSpec(2, 5)
        uct, voi = evaluate_tree_policies(spec, 1000, 1000, master_seed=2024, cost=0.0)
        blind = []
        for trial in range(1000):
            game = BanditTree(spec, 2024, trial)
            blind.append(game.value(()) - np.mean([game.value((move,)) for move in range(5)]))
        # UCT leads here: root children the bound stops sampling keep the
        # average of their leaves as sample mean.
        self.assertLess(voi.mean_regret, 0.25 * np.mean(blind))
        self.assertLessEqual(uct.mean_regret, voi.mean_regret)
        self.assertLess(voi.mean_regret, 4 * uct.mean_regret)


class EvaluateEpisodesTest(SimpleTestCase):
    def test_rows(self):
        receiver = mock.Mock()
        signals.experiment_finished.connect(receiver)
        self.addCleanup(signals.experiment_finished.disconnect, receiver)
        rows = evaluate_episodes(BanditTreeSpec(2, 3), 30, 10, master_seed=4, cost=1e-3)
        self.assertEqual([row.policy for row in rows], ['uct', 'voi'])
        self.assertEqual(rows[0].mean_samples_used, 30)
        self.assertLessEqual(rows[1].mean_samples_used, 30)
        for row in rows:
            self.assertTrue(0.0 <= row.mean_regret <= 1.0)
        receiver.assert_called_once_with(signal=signals.experiment_finished, sender='episode', rows=rows)

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            evaluate_episodes(BanditTreeSpec(2, 3), 0, 10, master_seed=0)


class TrapTreeTest(SimpleTestCase):
    def test_trap(self):
        game = TrapTree(BanditTreeSpec(2, 4), master_seed=3)
        self.assertEqual(list(game.leaf_means[:4]), [0.05, 0.05, 0.05, 0.95])
        self.assertEqual(game.value(()), 0.95)
        self.assertEqual(game.value((0,)), 0.95)
        for move in range(1, 4):
            self.assertLess(game.value((move,)), 0.95)

    @override_settings(VOI_SELECTION_GAME='example.games.TrapTree')
    def test_evaluate(self):
        uct, voi = evaluate_tree_policies(BanditTreeSpec(2, 4), 60, 5, master_seed=1)
        self.assertTrue(0.0 <= uct.mean_regret <= 0.95)
        self.assertTrue(0.0 <= voi.mean_regret <= 0.95)
