from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from ..validators import validate_positive, validate_seed


class ReportCommand(BaseCommand):
    """
    Base for commands that produce a single text report.

    Subclasses implement :meth:`render`, returning the complete report. The
    report is written in one go to standard output or to ``--output``, so a
    failing run never leaves a partial file behind. Configuration errors
    exit with status 2.
    """
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('--output', metavar='PATH', default=None,
                            help='Write the report to PATH instead of standard output (default: stdout)')

    def add_run_arguments(self, parser):
        parser.add_argument('--seed', type=int, default=0,
                            help='Master seed, an unsigned 64-bit integer (default: %(default)s)')
        parser.add_argument('--threads', type=int, default=None,
                            help='Maximum number of worker threads; does not affect the output '
                                 '(default: VOI_SELECTION_THREADS or the number of CPUs)')

    def render(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            if options.get('seed') is not None:
                validate_seed(options['seed'])
            if options.get('threads') is not None:
                validate_positive(options['threads'], 'Threads')
            report = self.render(**options)
        except ValidationError as e:
            raise CommandError('; '.join(e.messages), returncode=2)
        self.write_report(report, options['output'])

    def write_report(self, report, path):
        if path:
            with open(path, 'w', encoding='utf-8', newline='') as output:
                output.write(report)
        else:
            self.stdout.write(report, ending='')
