from django.core.exceptions import ValidationError

from ...simulation import render_csv
from ...tree.games import BanditTreeSpec
from ...tree.search import evaluate_episodes, evaluate_tree_policies
from ...utils import default_tree_cost
from ...validators import (
    parse_int_list, parse_name_list, validate_budgets, validate_cost,
)
from ..base import ReportCommand

TREE_POLICIES = ('uct', 'voi')

DEFAULT_BUDGETS = '1000'


class Command(ReportCommand):
    """
    Command to compare pure UCT with VOI sampling at the root on synthetic
    bandit trees.

    Without ``--nominal`` it scores the root decision for every budget. With
    ``--nominal`` it plays whole episodes, carrying unused rollouts over to
    the next move, and scores the reached leaf; ``--budgets`` is then
    rejected.

    Example usage::

        manage.py tree --depth 2 --branching 5 --budgets 1000 --trials 1000
        domain,policy,budget,trials,mean_regret,stderr_regret,mean_samples_used
        tree,uct,1000,1000,...
        tree,voi,1000,1000,...
    """
    help = 'Evaluates tree search policies on synthetic bandit trees and prints CSV'

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument('--depth', type=int, default=2,
                            help='Depth of the bandit trees (default: %(default)s)')
        parser.add_argument('--branching', type=int, default=5,
                            help='Moves per internal node (default: %(default)s)')
        parser.add_argument('--budgets', default=None,
                            help='Comma-separated, strictly increasing rollout budgets per search; '
                                 'not combined with --nominal (default: %s)' % DEFAULT_BUDGETS)
        parser.add_argument('--nominal', type=int, default=None,
                            help='Play full episodes with this nominal budget per move instead of '
                                 'scoring root decisions (default: off)')
        parser.add_argument('--trials', type=int, default=1000,
                            help='Number of trees (default: %(default)s)')
        parser.add_argument('--policies', default=','.join(TREE_POLICIES),
                            help='Comma-separated policies out of %s (default: %%(default)s)'
                                 % ', '.join(TREE_POLICIES))
        parser.add_argument('--cost', type=float, default=None,
                            help='Cost per rollout for the VOI stopping rule '
                                 '(default: VOI_SELECTION_DEFAULT_TREE_COST, 1e-06)')
        self.add_run_arguments(parser)

    def render(self, **options):
        cost = default_tree_cost() if options['cost'] is None else options['cost']
        validate_cost(cost)
        policies = parse_name_list(options['policies'])
        unknown = [name for name in policies if name not in TREE_POLICIES]
        if unknown or not policies:
            raise ValidationError('Unknown tree policies %(names)s, expected some of %(choices)s',
                                  code='unknown_policy',
                                  params={'names': ', '.join(unknown) or '(none)',
                                          'choices': ', '.join(TREE_POLICIES)})
        spec = BanditTreeSpec(options['depth'], options['branching'])
        run = dict(trials=options['trials'], master_seed=options['seed'], cost=cost,
                   threads=options['threads'])

        if options['nominal'] is not None:
            if options['budgets'] is not None:
                raise ValidationError('--budgets does not apply to episodes played with --nominal',
                                      code='nominal_budgets')
            rows = evaluate_episodes(spec, options['nominal'], **run)
        else:
            budgets = parse_int_list(DEFAULT_BUDGETS if options['budgets'] is None else options['budgets'])
            validate_budgets(budgets)
            rows = [row for budget in budgets for row in evaluate_tree_policies(spec, budget, **run)]
        return render_csv([row for row in rows if row.policy in policies], domain=True)
