"""
Sampling policies over belief states and the VOI stopping criterion.

:func:`decide_batch` is the single implementation of every policy; it works
on ``(T, K)`` arrays so that the flat simulator can advance many trials in
lock-step. :func:`decide` evaluates it on a one-row batch built from a
:class:`~voi_selection.core.BeliefState`, which keeps scalar callers (the
tree search) and batched callers on exactly the same arithmetic.
"""
import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from .bounds import erf_bounds, simple_bounds, voi_bound_simple
from .core import best_two_arrays

STOP = -1


class SamplingRule(enum.Enum):
    VOI = 'voi'
    VOI_PLUS = 'voi-plus'
    UCB1 = 'ucb1'
    ROUND_ROBIN = 'round-robin'


VOI_RULES = (SamplingRule.VOI, SamplingRule.VOI_PLUS)

POLICY_NAMES = tuple(rule.value for rule in SamplingRule)


@dataclass(frozen=True)
class PolicyKind(object):
    """
    A sampling rule and, for the VOI rules, the cost of a single sample.

    A cost of ``None`` or ``0`` disables stopping; the policy then spends
    the whole budget.
    """
    rule: SamplingRule
    cost: Optional[float] = None

    def __post_init__(self):
        if self.cost is not None and not self.cost >= 0:
            raise ValueError('Sample cost must be nonnegative, got %r' % (self.cost,))

    @classmethod
    def from_name(cls, name, cost=None):
        """
        Parses a policy name; ``cost`` only applies to the VOI rules.
        """
        try:
            rule = SamplingRule(name)
        except ValueError:
            raise ValidationError('Unknown policy "%(name)s", expected one of %(names)s',
                                  code='unknown_policy',
                                  params={'name': name, 'names': ', '.join(POLICY_NAMES)})
        return cls(rule, cost if rule in VOI_RULES else None)

    @property
    def name(self):
        return self.rule.value

    @property
    def stops(self):
        return self.rule in VOI_RULES and bool(self.cost)


@dataclass(frozen=True)
class PolicyDecision(object):
    """
    Either sample ``arm`` or, when ``arm`` is ``None``, stop and select.
    """
    arm: Optional[int] = None

    @property
    def is_stop(self):
        return self.arm is None


def decide_batch(policy, counts, sums, remaining, elapsed):
    """
    Returns the arm to sample for every row, or :data:`STOP`.

    ``counts`` and ``sums`` are ``(T, K)`` arrays with all counts positive,
    ``remaining`` and ``elapsed`` integer arrays of length ``T``.
    """
    rule = policy.rule
    if rule is SamplingRule.ROUND_ROBIN:
        return elapsed % counts.shape[1]

    means = sums / counts
    if rule is SamplingRule.UCB1:
        total = counts.sum(axis=1, keepdims=True)
        return (means + np.sqrt(2.0 * np.log(total) / counts)).argmax(axis=1)

    alpha, beta = best_two_arrays(means)
    ratios = simple_bounds(means, counts, alpha, beta)
    per_sample = ratios if rule is SamplingRule.VOI else erf_bounds(means, counts, alpha, beta)
    arms = (remaining[:, None] * per_sample).argmax(axis=1)
    if policy.stops:
        arms = np.where(ratios.max(axis=1) <= policy.cost, STOP, arms)
    return arms


def decide(policy, state, remaining, elapsed):
    if remaining < 1:
        raise ValueError('No samples remain; select the final arm instead')
    counts, sums = state.as_arrays()
    arm = int(decide_batch(policy, counts, sums,
                           np.array([remaining], dtype=np.int64),
                           np.array([elapsed], dtype=np.int64))[0])
    return PolicyDecision() if arm == STOP else PolicyDecision(arm)


def stop_ratio(state, i):
    """
    The VOI bound of arm ``i`` divided by the horizon; compared against the
    sample cost by the stopping criterion.
    """
    return voi_bound_simple(state, i, 1)
