import numpy as np

from voi_selection.core import ArmStats, BeliefState


class BeliefMixin(object):
    def make_state(self, *arms):
        """
        Builds a belief state from ``(count, sum)`` pairs.
        """
        return BeliefState.from_arms(ArmStats(count, total) for count, total in arms)

    def random_states(self, number, seed=0, max_arms=8, max_count=50):
        """
        Yields ``number`` random belief states with 2 to ``max_arms`` arms.
        """
        rng = np.random.default_rng(seed)
        for _ in range(number):
            arms = rng.integers(2, max_arms + 1)
            counts = rng.integers(1, max_count + 1, size=arms)
            sums = rng.binomial(counts, rng.random(arms))
            yield self.make_state(*((int(count), float(total)) for count, total in zip(counts, sums)))
