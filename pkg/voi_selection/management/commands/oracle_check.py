from django.core.management.base import CommandError

from ...oracle import run_checks
from ..base import ReportCommand


class Command(ReportCommand):
    """
    Command to verify the bound constants and the exact solver.

    Prints one line per check and exits with status 1 if any check fails.

    Example usage::

        manage.py oracle_check
        phi OK (minimum 1.372583002030, ...)
        hoeffding OK (0 violations)
        delta OK (largest term mismatch 0)
        dp OK (0 memo mismatches, monotone in budget)
    """
    help = 'Runs the exact oracle checks and prints a pass/fail report'

    def render(self, **options):
        self.results = run_checks()
        return ''.join('%s\n' % result for result in self.results)

    def handle(self, *args, **options):
        super(Command, self).handle(*args, **options)
        failed = [result.name for result in self.results if not result.passed]
        if failed:
            raise CommandError('Failed oracle checks: %s' % ', '.join(failed), returncode=1)
