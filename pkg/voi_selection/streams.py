"""
Counter-based random streams.

Every stream is a Philox generator whose key is ``(master_seed, trial)`` and
whose counter words carry ``(0, step, index, tag)``. Streams are therefore
addressable without any shared state: the j-th uniform of the payoff stream
of arm ``i`` in trial ``t`` is the same no matter which policy consumes it, in
which order trials are executed, or on which worker.
"""
import numpy as np

PAYOFF_TAG = 0
MEANS_TAG = 1

MAX_SEED = 2 ** 64 - 1


def keyed_generator(master_seed, trial, tag, index=0, step=0):
    key = np.array([master_seed, trial], dtype=np.uint64)
    counter = np.array([0, step, index, tag], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


class TrialStreams(object):
    """
    The streams of a single trial.

    ``step`` distinguishes successive searches of one episode; flat
    selection problems always use step 0.
    """
    def __init__(self, master_seed, trial):
        self.master_seed = master_seed
        self.trial = trial

    def __repr__(self):
        return '<TrialStreams(master_seed={!r}, trial={!r})>'.format(self.master_seed, self.trial)

    def means(self, size):
        """
        True arm means (or leaf means) of the trial, uniform in [0, 1); entry
        ``i`` is keyed by ``(master_seed, trial, MEANS_TAG, i)``.
        """
        return keyed_generator(self.master_seed, self.trial, MEANS_TAG).random(size)

    def arm(self, index, step=0):
        return keyed_generator(self.master_seed, self.trial, PAYOFF_TAG, index, step)

    def payoffs(self, means, horizon):
        """
        Bernoulli payoffs for every arm, shape ``(K, horizon)``: draw ``j`` of
        arm ``i`` is 1 when the j-th uniform of its stream is below the mean.
        """
        return np.stack([
            self.arm(index).random(horizon) < mean
            for index, mean in enumerate(means)
        ])
