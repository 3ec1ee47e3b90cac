"""
Distribution-free upper bounds on the blinkered value of information of
testing one arm ``N`` more times.

The array functions (:func:`simple_bounds`, :func:`erf_bounds`) work on
``(T, K)`` batches of counts and sample means and return the bound per
sample, i.e. for ``N = 1``; every bound is linear in ``N``. The functions
taking a :class:`~voi_selection.core.BeliefState` are thin wrappers around
them so that scalar and batched callers agree bit for bit.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .core import best_two_arrays

# 8 (sqrt(2) - 1) ** 2, the minimum of 2 ((1 + r) / (1 + sqrt(r))) ** 2.
PHI = 24.0 - 16.0 * math.sqrt(2.0)

SQRT_PI = math.sqrt(math.pi)


def phi():
    return PHI


def _hoeffding(gap, count):
    return 2.0 * math.exp(-PHI * gap * gap * count)


def _check_order(upper, lower, count):
    if upper < lower:
        raise ValueError('Mean %r must not exceed the leading mean %r' % (lower, upper))
    if count < 1:
        raise ValueError('Sample count must be positive, got %r' % (count,))


def prob_bound_alpha(mean_alpha, mean_beta, n_alpha):
    """
    Bound on the probability that further samples of the leading arm drop
    its mean below the runner-up. Raw value in (0, 2]; callers needing a
    probability clamp it to 1 themselves.
    """
    _check_order(mean_alpha, mean_beta, n_alpha)
    return _hoeffding(mean_alpha - mean_beta, n_alpha)


def prob_bound_other(mean_alpha, mean_i, n_i):
    """
    Bound on the probability that further samples of arm ``i`` lift its mean
    above the leading arm. Raw value in (0, 2].
    """
    _check_order(mean_alpha, mean_i, n_i)
    return _hoeffding(mean_alpha - mean_i, n_i)


def _leaders(means, alpha, beta):
    rows = np.arange(means.shape[0])
    is_alpha = np.arange(means.shape[1]) == alpha[:, None]
    mean_alpha = means[rows, alpha][:, None]
    mean_beta = means[rows, beta][:, None]
    gap = np.where(is_alpha, mean_alpha - mean_beta, mean_alpha - means)
    return is_alpha, mean_alpha, mean_beta, gap


def simple_bounds(means, counts, alpha, beta):
    """
    Hoeffding bounds per sample for every arm, shape ``(T, K)``:
    ``2 X_beta / n_alpha exp(-phi gap^2 n_alpha)`` for the leading arm and
    ``2 (1 - X_alpha) / n_i exp(-phi gap^2 n_i)`` for the others.
    """
    is_alpha, mean_alpha, mean_beta, gap = _leaders(means, alpha, beta)
    factor = np.where(is_alpha, mean_beta, 1.0 - mean_alpha)
    return 2.0 * factor / counts * np.exp(-PHI * gap * gap * counts)


def erf_bounds(means, counts, alpha, beta):
    """
    The tighter bounds obtained by integrating the Hoeffding tail, per
    sample, shape ``(T, K)``.
    """
    is_alpha, mean_alpha, mean_beta, gap = _leaders(means, alpha, beta)
    root = np.sqrt(counts)
    upper = np.where(is_alpha, mean_alpha, 1.0 - means) * root
    return SQRT_PI / (counts * root) * (erf(upper) - erf(gap * root))


def _state_bounds(bound, state, i, N):
    state.check_arm(i)
    if N < 1:
        raise ValueError('Horizon N must be positive, got %r' % (N,))
    counts, sums = state.as_arrays()
    means = sums / counts
    alpha, beta = best_two_arrays(means)
    return N * bound(means, counts, alpha, beta)[0, i]


def voi_bound_simple(state, i, N):
    return float(_state_bounds(simple_bounds, state, i, N))


def voi_bound_erf(state, i, N):
    return float(_state_bounds(erf_bounds, state, i, N))


def voi_bound_theorem(state, i, N, crossing_prob):
    """
    The bound with a caller-supplied crossing probability in place of the
    Hoeffding estimate.
    """
    state.check_arm(i)
    if not 0.0 <= crossing_prob <= 1.0:
        raise ValueError('Crossing probability must lie in [0, 1], got %r' % (crossing_prob,))
    means = state.means
    if i == state.alpha:
        factor = N * means[state.beta] / state.arms[state.alpha].count
    else:
        factor = N * (1.0 - means[state.alpha]) / state.arms[i].count
    return factor * crossing_prob


@dataclass(frozen=True)
class VoiEstimate(object):
    """
    Bound values of every arm for a horizon of ``N`` further samples.
    """
    values: tuple
    horizon: int

    @classmethod
    def for_state(cls, state, N, refined=False):
        bound = voi_bound_erf if refined else voi_bound_simple
        return cls(tuple(bound(state, i, N) for i in range(len(state))), N)

    @property
    def best(self):
        return max(range(len(self.values)), key=lambda i: (self.values[i], -i))
