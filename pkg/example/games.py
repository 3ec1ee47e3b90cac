from voi_selection.tree.games import BanditTree


class TrapTree(BanditTree):
    """
    Bandit tree whose first root move hides the single best leaf among poor
    ones. The other moves keep random leaf means, scaled below ``good``.

    Averaging rollouts rate the first move poorly until the search below it
    has found the good leaf. Enable it with::

        VOI_SELECTION_GAME = 'example.games.TrapTree'
    """
    good = 0.95
    poor = 0.05

    def __init__(self, spec, master_seed=0, trial=0, leaf_means=None):
        super(TrapTree, self).__init__(spec, master_seed, trial, leaf_means)
        if leaf_means is None and spec.depth > 1:
            stop = self._leaf_range((0,))[1]
            self.leaf_means[:stop] = self.poor
            self.leaf_means[stop - 1] = self.good
            self.leaf_means[stop:] *= self.good
