"""
Belief-state bookkeeping, final selection and regret accounting shared by
all sampling policies.

Every value in this module is immutable; updates return new objects. Ties
between arms are always resolved in favour of the smallest index.
"""
from dataclasses import dataclass

import numpy as np


def _check_payoff(payoff):
    if not 0.0 <= payoff <= 1.0:
        raise ValueError('Payoff must lie in [0, 1], got %r' % (payoff,))


@dataclass(frozen=True)
class ArmStats(object):
    """
    Number of samples taken from an arm and the sum of the observed payoffs.
    """
    count: int = 0
    sum: float = 0.0

    def __post_init__(self):
        if self.count < 0:
            raise ValueError('Sample count must be nonnegative, got %r' % (self.count,))
        if not 0.0 <= self.sum <= self.count:
            raise ValueError('Payoff sum %r is outside [0, %r]' % (self.sum, self.count))

    @property
    def mean(self):
        if self.count < 1:
            raise ValueError('The mean of an unsampled arm is undefined')
        return self.sum / self.count

    def add(self, payoff):
        _check_payoff(payoff)
        return ArmStats(self.count + 1, self.sum + payoff)


def best_two(stats):
    """
    Returns ``(alpha, beta)``: the arm with the greatest sample mean and the
    best arm among the others, ties broken by the smallest index.
    """
    stats = list(stats)
    if len(stats) < 2:
        raise ValueError('At least two arms are required, got %d' % len(stats))
    means = [arm.mean for arm in stats]
    alpha = max(range(len(means)), key=lambda i: (means[i], -i))
    beta = max((i for i in range(len(means)) if i != alpha),
               key=lambda i: (means[i], -i))
    return alpha, beta


def best_two_arrays(means):
    """
    Vectorised :func:`best_two` over the last axis of a ``(T, K)`` array of
    sample means; returns two integer arrays of length ``T``.
    """
    alpha = means.argmax(axis=1)
    masked = means.copy()
    masked[np.arange(means.shape[0]), alpha] = -np.inf
    return alpha, masked.argmax(axis=1)


@dataclass(frozen=True)
class BeliefState(object):
    """
    Statistics of every arm plus the current best (``alpha``) and runner-up
    (``beta``) arms. Build instances with :meth:`from_arms`.
    """
    arms: tuple
    alpha: int
    beta: int

    @classmethod
    def from_arms(cls, arms):
        arms = tuple(arms)
        if any(arm.count < 1 for arm in arms):
            raise ValueError('Every arm must be sampled at least once')
        alpha, beta = best_two(arms)
        return cls(arms, alpha, beta)

    @classmethod
    def from_payoffs(cls, payoffs):
        """State after the forced initialisation pass, one payoff per arm."""
        return cls.from_arms(ArmStats().add(payoff) for payoff in payoffs)

    def __len__(self):
        return len(self.arms)

    @property
    def means(self):
        return [arm.mean for arm in self.arms]

    @property
    def total(self):
        return sum(arm.count for arm in self.arms)

    def as_arrays(self):
        """Returns ``(counts, sums)`` as ``(1, K)`` arrays."""
        counts = np.array([[arm.count for arm in self.arms]], dtype=np.int64)
        sums = np.array([[arm.sum for arm in self.arms]], dtype=np.float64)
        return counts, sums

    def check_arm(self, arm):
        if not 0 <= arm < len(self.arms):
            raise ValueError('Arm index %r is out of range for %d arms' % (arm, len(self.arms)))


def update(state, arm, payoff):
    state.check_arm(arm)
    _check_payoff(payoff)
    arms = list(state.arms)
    arms[arm] = arms[arm].add(payoff)
    return BeliefState.from_arms(arms)


def select_final(state):
    return state.alpha


@dataclass(frozen=True)
class SelectionProblem(object):
    """
    Ground truth of a Bernoulli selection problem: the mean payoff of every
    arm.
    """
    means: tuple

    def __post_init__(self):
        object.__setattr__(self, 'means', tuple(float(mean) for mean in self.means))
        if len(self.means) < 2:
            raise ValueError('At least two arms are required, got %d' % len(self.means))
        for mean in self.means:
            if not 0.0 <= mean <= 1.0:
                raise ValueError('Arm means must lie in [0, 1], got %r' % (mean,))

    def __len__(self):
        return len(self.means)


def simple_regret(problem, chosen):
    if not 0 <= chosen < len(problem.means):
        raise ValueError('Arm index %r is out of range for %d arms' % (chosen, len(problem.means)))
    return max(problem.means) - problem.means[chosen]
