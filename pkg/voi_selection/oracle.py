"""
Exact ground truth at desk scale.

* :func:`optimal_value` solves the Beta-Bernoulli metalevel MDP by
  memoised recursion over pseudo-count vectors.
* :func:`binomial_tail` computes Bernoulli mean tail probabilities exactly.
* :func:`phi_by_minimization` recovers the constant of the Hoeffding bounds
  numerically.

:func:`run_checks` bundles the verifications reported by the
``oracle-check`` command.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import logsumexp
from scipy.stats import binom

from .bounds import phi
from .simulation import ExperimentConfig, collect_trials, mean_and_stderr
from .validators import validate_oracle_guard

logger = logging.getLogger(__name__)

MAX_TAIL_SAMPLES = 10000

# Tolerance when converting a mean threshold into a success count, so that
# thresholds such as 0.35 + 0.05 land on the intended integer.
COUNT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BayesBelief(object):
    """
    Beta posterior ``(a, b)`` per arm, starting from the uniform Beta(1, 1)
    prior.
    """
    params: tuple

    def __post_init__(self):
        object.__setattr__(self, 'params', tuple((a, b) for a, b in self.params))
        for a, b in self.params:
            if a < 1 or b < 1:
                raise ValueError('Pseudo-counts must be at least 1, got (%r, %r)' % (a, b))

    @classmethod
    def uniform(cls, arms):
        return cls(((1, 1),) * arms)

    def __len__(self):
        return len(self.params)

    @property
    def means(self):
        return [a / (a + b) for a, b in self.params]


@dataclass(frozen=True)
class MetaValue(object):
    """
    Optimal value ``value`` of a belief state and the value ``continuation[i]``
    of sampling arm ``i`` first (empty when no budget remains).
    """
    value: float
    continuation: tuple


def _observe(params, arm, success):
    a, b = params[arm]
    return params[:arm] + (((a + 1, b) if success else (a, b + 1)),) + params[arm + 1:]


def _backup(params, budget, cost, value):
    """
    One Bellman backup: the stopping value and the value of sampling each
    arm, with ``value(params, budget)`` supplying successor values.
    """
    stop = max(a / (a + b) for a, b in params)
    if budget == 0:
        return stop, ()
    continuation = []
    for arm, (a, b) in enumerate(params):
        mean = a / (a + b)
        continuation.append(-cost
                            + mean * value(_observe(params, arm, True), budget - 1)
                            + (1.0 - mean) * value(_observe(params, arm, False), budget - 1))
    return stop, tuple(continuation)


def optimal_value(belief, budget, cost, memoize=True):
    """
    Exact optimal value of ``belief`` with at most ``budget`` further
    samples, each costing ``cost``. ``memoize=False`` evaluates the plain
    recursion, which is exponential and only useful for cross-checking.
    """
    validate_oracle_guard(len(belief), budget)
    memo = {}

    def value(params, remaining):
        key = (params, remaining)
        if memoize and key in memo:
            return memo[key]
        stop, continuation = _backup(params, remaining, cost, value)
        result = max((stop,) + continuation)
        if memoize:
            memo[key] = result
        return result

    stop, continuation = _backup(belief.params, budget, cost, value)
    return MetaValue(max((stop,) + continuation), continuation)


def binomial_tail(n, p, threshold):
    """
    Exact probability that the mean of ``n`` Bernoulli(``p``) samples is at
    least ``threshold``, accumulated in log space.
    """
    if not 1 <= n <= MAX_TAIL_SAMPLES:
        raise ValueError('Sample count must lie in [1, %d], got %r' % (MAX_TAIL_SAMPLES, n))
    if threshold <= 0:
        return 1.0
    successes = math.ceil(n * threshold - COUNT_TOLERANCE)
    if successes > n:
        return 0.0
    with np.errstate(divide='ignore'):
        log_terms = binom.logpmf(np.arange(successes, n + 1), n, p)
        return float(min(1.0, math.exp(logsumexp(log_terms))))


def phi_objective(ratio):
    return 2.0 * ((1.0 + ratio) / (1.0 + math.sqrt(ratio))) ** 2


def phi_by_minimization():
    """
    Minimises ``2 ((1 + r) / (1 + sqrt(r))) ** 2`` over ``r`` in (0, 16] by
    golden-section search; returns ``(minimum, argmin)``.
    """
    result = minimize_scalar(phi_objective, bracket=(1e-3, 0.5, 16.0), method='golden', tol=1e-12)
    return float(result.fun), float(result.x)


def equalising_delta(gap, n, N):
    """
    The split of ``gap`` that equalises the two Hoeffding terms of the union
    bound: ``gap (1 + n/N) / (1 + sqrt(n/N))``.
    """
    ratio = n / N
    return gap * (1.0 + ratio) / (1.0 + math.sqrt(ratio))


def union_bound_terms(gap, n, N, delta):
    """
    The two Hoeffding terms bounding the crossing probability when the gap
    is split at ``delta``: deviation of the ``n`` past samples and deviation
    of the ``N`` future samples.
    """
    return (math.exp(-2.0 * delta ** 2 * n),
            math.exp(-2.0 * (gap * (1.0 + n / N) - delta) ** 2 * N))


def theorem_factor_tight(state, i, N):
    """
    The factor in front of the crossing probability before relaxing
    ``N / (N + n)`` to ``N / n``.
    """
    state.check_arm(i)
    means = state.means
    if i == state.alpha:
        return N * means[state.beta] / (N + state.arms[state.alpha].count)
    return N * (1.0 - means[state.alpha]) / (N + state.arms[i].count)


def policy_value(policy, arms, budget, cost, episodes, master_seed=0, threads=None):
    """
    Monte Carlo value of ``policy`` on Beta(1, 1) instances: the mean of
    ``U_chosen - cost * samples_used`` over ``episodes`` trials, with its
    standard error.
    """
    config = ExperimentConfig(arms=arms, budgets=(budget,), trials=episodes,
                              policies=(policy,), master_seed=master_seed)
    outcome = collect_trials(config, threads)[policy.name, budget]
    return mean_and_stderr(outcome.chosen_means - cost * outcome.used)


@dataclass(frozen=True)
class CheckResult(object):
    name: str
    passed: bool
    detail: str

    def __str__(self):
        return '%s %s (%s)' % (self.name, 'OK' if self.passed else 'FAILED', self.detail)


def hoeffding_violations(max_n=50):
    """
    Grid points where the exact upper tail exceeds ``exp(-2 delta^2 n)``.
    """
    violations = []
    for n in range(1, max_n + 1):
        for p in np.round(np.arange(21) * 0.05, 2):
            for delta in np.round(np.arange(1, 11) * 0.05, 2):
                tail = binomial_tail(n, p, p + delta)
                if tail > math.exp(-2.0 * delta ** 2 * n):
                    violations.append((n, float(p), float(delta), tail))
    return violations


def check_phi():
    minimum, argmin = phi_by_minimization()
    passed = abs(minimum - phi()) <= 1e-9 and abs(argmin - (3.0 - 2.0 * math.sqrt(2.0))) <= 1e-6
    return CheckResult('phi', passed, 'minimum %.12f, argmin %.9f, closed form %.12f'
                       % (minimum, argmin, phi()))


def check_hoeffding():
    violations = hoeffding_violations()
    return CheckResult('hoeffding', not violations, '%d violations' % len(violations))


def check_delta():
    worst = 0.0
    dominated = True
    for gap in (0.01, 0.1, 0.3, 0.7):
        for n in (1, 5, 25, 100):
            for N in (1, 10, 100, 1000):
                delta = equalising_delta(gap, n, N)
                past, future = union_bound_terms(gap, n, N, delta)
                worst = max(worst, abs(past - future))
                dominated &= past + future <= 2.0 * math.exp(-phi() * gap ** 2 * n) * (1 + 1e-12)
    return CheckResult('delta', worst <= 1e-12 and dominated, 'largest term mismatch %.3g' % worst)


def check_dp():
    mismatches = 0
    monotone = True
    for arms in (2, 3):
        belief = BayesBelief.uniform(arms)
        for cost in (0.0, 0.01):
            previous = None
            for budget in range(5):
                memoized = optimal_value(belief, budget, cost)
                naive = optimal_value(belief, budget, cost, memoize=False)
                mismatches += memoized != naive
                if previous is not None and memoized.value < previous:
                    monotone = False
                previous = memoized.value
    return CheckResult('dp', not mismatches and monotone,
                       '%d memo mismatches, %s in budget' % (mismatches, 'monotone' if monotone else 'NOT monotone'))


def run_checks():
    results = [check_phi(), check_hoeffding(), check_delta(), check_dp()]
    for result in results:
        log = logger.info if result.passed else logger.warning
        log('Oracle check %s', result)
    return results
