import os

DEBUG = True

PROJECT_PATH = os.path.abspath(os.path.dirname(__file__))

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.path.join(PROJECT_PATH, 'database.sqlite'),
    }
}

TIME_ZONE = 'Europe/Amsterdam'

# Make this unique, and don't share it with anybody.
SECRET_KEY = 'DO NOT USE THIS KEY!'

INSTALLED_APPS = (
    'voi_selection',
    'example',
)

LOGGING = {
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
        }
    }
}

VOI_SELECTION_THREADS = 4
VOI_SELECTION_GAME = os.environ.get('VOI_SELECTION_GAME', 'example.games.TrapTree')

try:
    from .settings_private import *  # noqa
except ImportError:
    pass
