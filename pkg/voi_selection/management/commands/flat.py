from ...policies import POLICY_NAMES, PolicyKind
from ...simulation import ExperimentConfig, render_csv, run_experiment
from ...validators import parse_int_list, parse_name_list, validate_cost
from ..base import ReportCommand


class Command(ReportCommand):
    """
    Command to compare sampling policies on flat Bernoulli selection
    problems.

    Every trial draws fresh arm means uniformly in [0, 1]; all policies and
    budgets of a trial see the same payoff streams. Prints one CSV row per
    (policy, budget).

    Example usage::

        manage.py flat --arms 25 --budgets 200,400,800,1600 --trials 2000 --seed 42
        policy,budget,trials,mean_regret,stderr_regret,mean_samples_used
        ucb1,200,2000,...
    """
    help = 'Simulates flat selection problems and prints simple regret per policy and budget as CSV'

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument('--arms', type=int, default=25,
                            help='Number of Bernoulli arms (default: %(default)s)')
        parser.add_argument('--budgets', default='200,400,800,1600',
                            help='Comma-separated, strictly increasing sample budgets (default: %(default)s)')
        parser.add_argument('--trials', type=int, default=2000,
                            help='Number of trials per budget (default: %(default)s)')
        parser.add_argument('--policies', default='ucb1,voi,voi-plus',
                            help='Comma-separated policies out of %s (default: %%(default)s)'
                                 % ', '.join(POLICY_NAMES))
        parser.add_argument('--cost', type=float, default=0.0,
                            help='Cost per sample; a positive cost lets the VOI policies stop '
                                 'early (default: %(default)s)')
        self.add_run_arguments(parser)

    def render(self, **options):
        validate_cost(options['cost'])
        config = ExperimentConfig(
            arms=options['arms'],
            budgets=parse_int_list(options['budgets']),
            trials=options['trials'],
            policies=tuple(PolicyKind.from_name(name, options['cost'])
                           for name in parse_name_list(options['policies'])),
            master_seed=options['seed'],
        )
        return render_csv(run_experiment(config, options['threads']))
