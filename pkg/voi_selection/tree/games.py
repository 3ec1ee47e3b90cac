"""
Game models searched by the tree engine.

A game only needs to describe its states; the search engine never inspects
them. Payoffs lie in [0, 1] and every path reaches a terminal state after a
finite number of moves.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from ..streams import TrialStreams
from ..validators import validate_tree_shape


class GameModel(ABC):
    @abstractmethod
    def root(self):
        """Returns the initial state."""

    @abstractmethod
    def legal_moves(self, state):
        """Returns the moves available in ``state``, in a fixed order."""

    @abstractmethod
    def successor(self, state, move):
        pass

    @abstractmethod
    def is_terminal(self, state):
        pass

    @abstractmethod
    def payoff(self, state, rng):
        """
        Draws the payoff of the terminal ``state`` using the numpy generator
        ``rng``.
        """

    def rollout(self, state, rng):
        """
        Plays uniformly random moves from ``state`` until the game ends and
        returns the terminal payoff.
        """
        while not self.is_terminal(state):
            moves = self.legal_moves(state)
            state = self.successor(state, moves[rng.integers(len(moves))])
        return self.payoff(state, rng)

    def value(self, state):
        """
        Expected payoff of ``state`` under optimal play; needed for regret
        accounting only.
        """
        raise NotImplementedError('%s does not know its true values' % type(self).__name__)


@dataclass(frozen=True)
class BanditTreeSpec(object):
    depth: int
    branching: int

    def __post_init__(self):
        validate_tree_shape(self.depth, self.branching)

    @property
    def leaves(self):
        return self.branching ** self.depth


class BanditTree(GameModel):
    """
    Single-agent tree of uniform depth whose leaves are Bernoulli arms.

    States are move paths. The leaf means are keyed by the trial's seed and
    the leaf path, so a depth-1 tree with ``K`` branches has exactly the arm
    means of the flat ``K``-arm problem of the same trial.
    """
    def __init__(self, spec, master_seed=0, trial=0, leaf_means=None):
        self.spec = spec
        if leaf_means is None:
            leaf_means = TrialStreams(master_seed, trial).means(spec.leaves)
        self.leaf_means = np.asarray(leaf_means, dtype=np.float64)
        if self.leaf_means.shape != (spec.leaves,):
            raise ValueError('Expected %d leaf means, got %d' % (spec.leaves, self.leaf_means.size))

    def __repr__(self):
        return '<BanditTree(depth={!r}, branching={!r})>'.format(self.spec.depth, self.spec.branching)

    def root(self):
        return ()

    def legal_moves(self, state):
        if self.is_terminal(state):
            return ()
        return tuple(range(self.spec.branching))

    def successor(self, state, move):
        return state + (move,)

    def is_terminal(self, state):
        return len(state) == self.spec.depth

    def _leaf_range(self, state):
        first = 0
        for move in state:
            first = first * self.spec.branching + move
        width = self.spec.branching ** (self.spec.depth - len(state))
        return first * width, (first + 1) * width

    def payoff(self, state, rng):
        start, _ = self._leaf_range(state)
        return 1.0 if rng.random() < self.leaf_means[start] else 0.0

    def value(self, state):
        start, stop = self._leaf_range(state)
        return float(self.leaf_means[start:stop].max())
