"""
Deterministic simulator for Bernoulli selection problems.

Trials are simulated in chunks of ``VOI_SELECTION_CHUNK_SIZE``: all trials of
a chunk share one vectorised run per (policy, budget), and chunks are spread
over a thread pool. The chunk partition does not depend on the number of
workers and results are reassembled in trial order, so the output is a pure
function of the configuration.
"""
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError

from . import signals
from .core import SelectionProblem, best_two_arrays, simple_regret
from .policies import STOP, PolicyKind, SamplingRule, decide_batch
from .streams import TrialStreams
from .utils import chunk_size, chunked, map_ordered
from .validators import (
    validate_arms, validate_budget_covers_arms, validate_budgets,
    validate_positive, validate_seed,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGETS = (200, 400, 800, 1600)

DEFAULT_POLICIES = (
    PolicyKind(SamplingRule.UCB1),
    PolicyKind(SamplingRule.VOI),
    PolicyKind(SamplingRule.VOI_PLUS),
)

CSV_HEADER = ['policy', 'budget', 'trials', 'mean_regret', 'stderr_regret', 'mean_samples_used']


@dataclass(frozen=True)
class ExperimentConfig(object):
    """
    Parameters of a flat experiment. True means are drawn uniformly in
    [0, 1] per trial unless ``fixed_means`` pins them for every trial.
    """
    arms: int = 25
    budgets: tuple = DEFAULT_BUDGETS
    trials: int = 2000
    policies: tuple = DEFAULT_POLICIES
    master_seed: int = 0
    fixed_means: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'budgets', tuple(self.budgets))
        object.__setattr__(self, 'policies', tuple(self.policies))
        validate_arms(self.arms)
        validate_budgets(self.budgets)
        validate_budget_covers_arms(self.budgets[0], self.arms)
        validate_positive(self.trials, 'Trials')
        validate_seed(self.master_seed)
        if not self.policies:
            raise ValidationError('At least one policy is required', code='policies')
        names = [policy.name for policy in self.policies]
        if len(set(names)) != len(names):
            raise ValidationError('Policies must not repeat, got %(names)s', code='policies',
                                  params={'names': ', '.join(names)})
        if self.fixed_means is not None:
            if len(self.fixed_means) != self.arms:
                raise ValidationError('Expected %(arms)s fixed means, got %(count)s', code='fixed_means',
                                      params={'arms': self.arms, 'count': len(self.fixed_means)})
            try:
                SelectionProblem(self.fixed_means)
            except ValueError as error:
                raise ValidationError(str(error), code='fixed_means')

    def trial_means(self, trial):
        if self.fixed_means is not None:
            return np.array(self.fixed_means, dtype=np.float64)
        return TrialStreams(self.master_seed, trial).means(self.arms)


@dataclass(frozen=True)
class ResultRow(object):
    policy: str
    budget: int
    trials: int
    mean_regret: float
    stderr_regret: float
    mean_samples_used: float
    domain: str = 'flat'

    def as_csv(self):
        return [self.policy, str(self.budget), str(self.trials)] + [
            format(value, '.6g')
            for value in (self.mean_regret, self.stderr_regret, self.mean_samples_used)
        ]


def simulate_batch(policy, means, budget, payoffs):
    """
    Runs ``policy`` on every row of ``means`` (shape ``(T, K)``) with the
    pre-drawn Bernoulli ``payoffs`` (shape ``(T, K, H)``, ``H >= budget``).

    Each run samples every arm once in index order, then follows the policy
    until it stops or the budget is spent. Returns the selected arms and the
    number of samples used, both arrays of length ``T``.
    """
    trials, arms = means.shape
    validate_budget_covers_arms(budget, arms)
    counts = np.ones((trials, arms), dtype=np.int64)
    sums = payoffs[:, :, 0].astype(np.float64)
    used = np.full(trials, arms, dtype=np.int64)
    active = np.ones(trials, dtype=bool)

    for _ in range(budget - arms):
        rows = np.flatnonzero(active)
        if not rows.size:
            break
        chosen = decide_batch(policy, counts[rows], sums[rows], budget - used[rows], used[rows])
        stopped = chosen == STOP
        active[rows[stopped]] = False
        rows, chosen = rows[~stopped], chosen[~stopped]
        sums[rows, chosen] += payoffs[rows, chosen, counts[rows, chosen]]
        counts[rows, chosen] += 1
        used[rows] += 1

    return best_two_arrays(sums / counts)[0], used


def run_trial(policy, problem, budget, rng_stream):
    """
    Runs one trial of ``policy`` on ``problem`` with the payoff streams of
    ``rng_stream`` (a :class:`~voi_selection.streams.TrialStreams`).

    Returns ``(chosen, regret, used)``.
    """
    means = np.array([problem.means], dtype=np.float64)
    validate_budget_covers_arms(budget, means.shape[1])
    payoffs = rng_stream.payoffs(problem.means, budget)[None]
    chosen, used = simulate_batch(policy, means, budget, payoffs)
    chosen = int(chosen[0])
    return chosen, simple_regret(problem, chosen), int(used[0])


@dataclass
class TrialOutcomes(object):
    """Per-trial results of one (policy, budget) pair, in trial order."""
    regrets: np.ndarray
    used: np.ndarray
    chosen_means: np.ndarray


def _run_chunk(config, trial_ids):
    means = np.stack([config.trial_means(trial) for trial in trial_ids])
    horizon = config.budgets[-1]
    payoffs = np.stack([
        TrialStreams(config.master_seed, trial).payoffs(trial_means, horizon)
        for trial, trial_means in zip(trial_ids, means)
    ])
    rows = np.arange(len(trial_ids))
    outcomes = {}
    for policy in config.policies:
        for budget in config.budgets:
            chosen, used = simulate_batch(policy, means, budget, payoffs)
            chosen_means = means[rows, chosen]
            outcomes[policy.name, budget] = TrialOutcomes(
                means.max(axis=1) - chosen_means, used, chosen_means)
    logger.debug('Finished trials %d..%d', trial_ids[0], trial_ids[-1])
    return outcomes


def collect_trials(config, threads=None):
    """
    Simulates every trial of ``config`` and returns a mapping from
    ``(policy name, budget)`` to :class:`TrialOutcomes`.
    """
    chunks = map_ordered(lambda trial_ids: _run_chunk(config, trial_ids),
                         chunked(config.trials, chunk_size()), threads)
    return {
        key: TrialOutcomes(*(np.concatenate([getattr(chunk[key], name) for chunk in chunks])
                             for name in ('regrets', 'used', 'chosen_means')))
        for key in chunks[0]
    }


def mean_and_stderr(values):
    """
    Mean and standard error of ``values`` with compensated summation, in the
    given order.
    """
    values = [float(value) for value in values]
    mean = math.fsum(values) / len(values)
    if len(values) < 2:
        return mean, 0.0
    variance = math.fsum((value - mean) ** 2 for value in values) / (len(values) - 1)
    return mean, math.sqrt(variance / len(values))


def aggregate(policy, budget, regrets, used, domain='flat'):
    mean_regret, stderr_regret = mean_and_stderr(regrets)
    return ResultRow(policy, budget, len(regrets), mean_regret, stderr_regret,
                     math.fsum(float(value) for value in used) / len(used), domain)


def run_experiment(config, threads=None):
    logger.info('Running %d trials of %d arms for policies %s and budgets %s',
                config.trials, config.arms, ', '.join(p.name for p in config.policies),
                ', '.join(str(budget) for budget in config.budgets))
    outcomes = collect_trials(config, threads)
    rows = sorted((aggregate(name, budget, result.regrets, result.used)
                   for (name, budget), result in outcomes.items()),
                  key=lambda row: (row.policy, row.budget))
    for row in rows:
        logger.info('%s @ %d: mean regret %.6g (stderr %.2g)',
                    row.policy, row.budget, row.mean_regret, row.stderr_regret)
    signals.experiment_finished.send(sender='flat', rows=rows)
    return rows


def render_csv(rows, domain=False):
    """
    Renders result rows as CSV text; ``domain`` adds the leading ``domain``
    column used by tree output.
    """
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow((['domain'] if domain else []) + CSV_HEADER)
    for row in sorted(rows, key=lambda row: (row.policy, row.budget)):
        writer.writerow(([row.domain] if domain else []) + row.as_csv())
    return output.getvalue()
