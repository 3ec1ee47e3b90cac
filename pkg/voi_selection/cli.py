"""
Standalone entry point: ``voi-selection <subcommand> [flags]``.

Runs the app's management commands without a Django project. When no
settings module is configured, a minimal configuration is installed that
only enables this app and sends log records to standard error.
"""
import logging
import os
import sys

import django
from django.conf import settings
from django.core.management import load_command_class

logger = logging.getLogger(__name__)

PROG = 'voi-selection'

SUBCOMMANDS = {
    'flat': 'flat',
    'tree': 'tree',
    'oracle-check': 'oracle_check',
}

CONSOLE_LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'voi_selection': {
            'handlers': ['console'],
            'level': 'INFO',
        },
    },
}

USAGE = 'usage: %s {%s} [flags]\n' % (PROG, ','.join(SUBCOMMANDS))


def setup():
    if not settings.configured and not os.environ.get('DJANGO_SETTINGS_MODULE'):
        settings.configure(INSTALLED_APPS=['voi_selection'], LOGGING=CONSOLE_LOGGING)
    django.setup()


def main(argv=None):
    """
    Runs one subcommand and returns its exit status: 0 on success, 2 for an
    invalid configuration and 1 for any other failure.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        sys.stderr.write(USAGE)
        if argv and argv[0] in ('-h', '--help'):
            return 0
        return 2

    setup()
    command = load_command_class('voi_selection', SUBCOMMANDS[argv[0]])
    try:
        command.run_from_argv([PROG, argv[0]] + argv[1:])
    except SystemExit as e:
        if e.code is None or isinstance(e.code, int):
            return e.code or 0
        return 1
    except Exception:
        logger.exception('%s %s failed', PROG, argv[0])
        return 1
    return 0
