# Sphinx configuration for the django-voi-selection documentation.
import os
import sys

import django
from django.conf import settings

sys.path.insert(0, os.path.abspath('..'))

# autodoc imports the app, which needs configured settings.
settings.configure(INSTALLED_APPS=['voi_selection'])
django.setup()

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.mathjax']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'Django VOI Selection'
copyright = '2026, the django-voi-selection developers'

# The full version, including alpha/beta/rc tags.
release = '0.1.0'

# The short X.Y version.
version = '.'.join(release.split('.')[0:2])

exclude_patterns = ['_build']

pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'

htmlhelp_basename = 'DjangoVoiSelectiondoc'

latex_documents = [
    ('index', 'DjangoVoiSelection.tex', 'Django VOI Selection Documentation',
     'the django-voi-selection developers', 'manual'),
]

man_pages = [
    ('index', 'django-voi-selection', 'Django VOI Selection Documentation',
     ['the django-voi-selection developers'], 1),
]
