"""
Monte Carlo tree search with VOI-based sampling at the root and UCT below.

Each child of the root is treated as an arm of a flat selection problem: a
rollout through it is one sample of that arm. The hybrid search picks root
children with the VOI policy (including its stopping criterion) and falls
back to UCT at every other node. The pure UCT search used for comparison
shares the node statistics and rollout code.
"""
import logging
import math
from dataclasses import dataclass

from django.core.exceptions import ValidationError

from ..core import ArmStats, BeliefState, select_final
from ..policies import PolicyKind, SamplingRule, decide
from ..simulation import aggregate
from ..streams import TrialStreams
from ..utils import get_game_class, map_ordered, uct_exploration
from ..validators import validate_positive
from .. import signals

logger = logging.getLogger(__name__)


class UctNode(object):
    """
    Visit count and payoff sum of a tree node. ``rollouts`` and
    ``rollout_sum`` count the simulations that left the tree at this node.
    """
    __slots__ = ('visits', 'payoff_sum', 'rollouts', 'rollout_sum', 'children')

    def __init__(self):
        self.visits = 0
        self.payoff_sum = 0.0
        self.rollouts = 0
        self.rollout_sum = 0.0
        self.children = []

    def __repr__(self):
        return '<UctNode(visits={!r}, payoff_sum={!r}, children={!r})>'.format(
            self.visits, self.payoff_sum, len(self.children))

    @property
    def mean(self):
        return self.payoff_sum / self.visits

    def expand(self, moves):
        self.children = [UctNode() for _ in moves]


def uct_select(node, exploration):
    """
    Returns the index of the child to descend into: the first unvisited
    child, otherwise the child maximising
    ``mean + exploration * sqrt(ln(parent visits) / child visits)``.
    """
    if not node.children:
        raise ValueError('Cannot select a move at a node without children')
    for index, child in enumerate(node.children):
        if child.visits == 0:
            return index
    log_visits = math.log(node.visits)
    scores = [child.mean + exploration * math.sqrt(log_visits / child.visits)
              for child in node.children]
    return max(range(len(scores)), key=lambda index: (scores[index], -index))


@dataclass(frozen=True)
class SearchBudget(object):
    """
    Rollouts for one search: the nominal per-move budget plus the unused
    budget carried over from earlier moves.
    """
    nominal: int
    carryover: int = 0

    def __post_init__(self):
        if self.nominal < 1:
            raise ValueError('Nominal budget must be positive, got %r' % (self.nominal,))
        if self.carryover < 0:
            raise ValueError('Carried-over budget must be nonnegative, got %r' % (self.carryover,))

    @property
    def available(self):
        return self.nominal + self.carryover


class SearchTree(object):
    """
    Search statistics rooted at ``state``. Moves are addressed by their
    position in ``game.legal_moves``.
    """
    def __init__(self, game, state, exploration):
        self.game = game
        self.state = state
        self.exploration = exploration
        self.moves = tuple(game.legal_moves(state))
        self.root = UctNode()
        self.root.expand(self.moves)

    def belief(self):
        return BeliefState.from_arms(ArmStats(child.visits, child.payoff_sum)
                                     for child in self.root.children)

    def best_move(self):
        return select_final(self.belief())

    def rollout(self, index, rng):
        """
        Runs one rollout through root child ``index``, consuming ``rng``,
        and backs its payoff up along the visited path.
        """
        game = self.game
        node = self.root.children[index]
        state = game.successor(self.state, self.moves[index])
        path = [self.root, node]
        while not game.is_terminal(state) and node.visits > 0:
            moves = game.legal_moves(state)
            if not node.children:
                node.expand(moves)
            choice = uct_select(node, self.exploration)
            node = node.children[choice]
            state = game.successor(state, moves[choice])
            path.append(node)
        payoff = game.rollout(state, rng)
        node.rollouts += 1
        node.rollout_sum += payoff
        for visited in path:
            visited.visits += 1
            visited.payoff_sum += payoff
        return payoff


def _start(game, budget, state, exploration):
    state = game.root() if state is None else state
    if game.is_terminal(state):
        raise ValueError('Cannot search from a terminal state')
    tree = SearchTree(game, state, uct_exploration() if exploration is None else exploration)
    if len(tree.moves) > 1 and budget.available < len(tree.moves):
        raise ValidationError('Budget %(budget)s cannot visit each of the %(moves)s root moves once',
                              code='budget_too_small',
                              params={'budget': budget.available, 'moves': len(tree.moves)})
    return tree


def _initialise(tree, streams, step):
    rngs = [streams.arm(index, step) for index in range(len(tree.moves))]
    for index, rng in enumerate(rngs):
        tree.rollout(index, rng)
    return rngs


def hybrid_search(game, budget, cost, rng_stream, state=None, step=0, exploration=None):
    """
    Searches from ``state`` (the game's root by default) with VOI sampling
    at the root and UCT below. Rollouts through root child ``i`` consume
    ``rng_stream.arm(i, step)``.

    Stops when the budget is spent or, for a positive ``cost``, when no root
    child's VOI bound per sample exceeds it. Returns the root move with the
    greatest sample mean and the number of rollouts used.
    """
    tree = _start(game, budget, state, exploration)
    if len(tree.moves) == 1:
        return tree.moves[0], 0
    rngs = _initialise(tree, rng_stream, step)
    policy = PolicyKind(SamplingRule.VOI, cost)
    used = len(tree.moves)
    while used < budget.available:
        decision = decide(policy, tree.belief(), budget.available - used, used)
        if decision.is_stop:
            break
        tree.rollout(decision.arm, rngs[decision.arm])
        used += 1
    return tree.moves[tree.best_move()], used


def uct_search(game, budget, rng_stream, state=None, step=0, exploration=None):
    """
    Plain UCT with the same root initialisation, streams and final selection
    as :func:`hybrid_search`; always spends the whole budget.
    """
    tree = _start(game, budget, state, exploration)
    if len(tree.moves) == 1:
        return tree.moves[0], 0
    rngs = _initialise(tree, rng_stream, step)
    for _ in range(budget.available - len(tree.moves)):
        index = uct_select(tree.root, tree.exploration)
        tree.rollout(index, rngs[index])
    return tree.moves[tree.best_move()], budget.available


def run_episode(game, nominal, cost, rng_stream, exploration=None, search='voi'):
    """
    Plays ``game`` to the end, searching afresh before every move. Budget
    left unused by one search is added to the next one.

    ``search`` selects the engine: ``'voi'`` for the hybrid search, ``'uct'``
    for pure UCT. Returns the list of ``(move, used)`` pairs.
    """
    state = game.root()
    carryover = 0
    played = []
    step = 0
    while not game.is_terminal(state):
        budget = SearchBudget(nominal, carryover)
        if search == 'uct':
            move, used = uct_search(game, budget, rng_stream, state, step, exploration)
        else:
            move, used = hybrid_search(game, budget, cost, rng_stream, state, step, exploration)
        carryover = budget.available - used
        logger.debug('Move %d: %d of %d rollouts used, %d carried over',
                     step, used, budget.available, carryover)
        played.append((move, used))
        state = game.successor(state, move)
        step += 1
    return played


def _root_regret(game, move):
    root = game.root()
    return game.value(root) - game.value(game.successor(root, move))


def evaluate_tree_policies(spec, budget, trials, master_seed, cost=0.0, exploration=None, threads=None):
    """
    Compares pure UCT (``'uct'``) with the hybrid search (``'voi'``) on
    ``trials`` bandit trees built from ``spec``, scoring the simple regret of
    the root decision against the true backed-up values.
    """
    validate_positive(budget, 'Budget')
    validate_positive(trials, 'Trials')
    game_class = get_game_class()
    search_budget = SearchBudget(budget)

    def run(trial):
        game = game_class(spec, master_seed, trial)
        streams = TrialStreams(master_seed, trial)
        uct_move, uct_used = uct_search(game, search_budget, streams, exploration=exploration)
        voi_move, voi_used = hybrid_search(game, search_budget, cost, streams, exploration=exploration)
        return (_root_regret(game, uct_move), uct_used), (_root_regret(game, voi_move), voi_used)

    results = map_ordered(run, range(trials), threads)
    rows = [
        aggregate(name, budget, [result[position][0] for result in results],
                  [result[position][1] for result in results], domain='tree')
        for position, name in enumerate(('uct', 'voi'))
    ]
    signals.experiment_finished.send(sender='tree', rows=rows)
    return rows


def evaluate_episodes(spec, nominal, trials, master_seed, cost=0.0, exploration=None, threads=None):
    """
    Plays full episodes on ``trials`` bandit trees and scores the regret of
    the reached leaf. ``mean_samples_used`` is the mean number of rollouts
    per move.
    """
    validate_positive(nominal, 'Nominal budget')
    validate_positive(trials, 'Trials')
    game_class = get_game_class()

    def run(trial):
        game = game_class(spec, master_seed, trial)
        outcome = []
        for search in ('uct', 'voi'):
            played = run_episode(game, nominal, cost, TrialStreams(master_seed, trial), exploration, search)
            leaf = game.root()
            for move, _ in played:
                leaf = game.successor(leaf, move)
            outcome.append((game.value(game.root()) - game.value(leaf),
                            sum(used for _, used in played) / len(played)))
        return outcome

    results = map_ordered(run, range(trials), threads)
    rows = [
        aggregate(name, nominal, [result[position][0] for result in results],
                  [result[position][1] for result in results], domain='tree')
        for position, name in enumerate(('uct', 'voi'))
    ]
    signals.experiment_finished.send(sender='episode', rows=rows)
    return rows
