# -*- coding: utf-8 -*-
#
# Sphinx configuration for the fracsplit docs.
#
import os
import sys

# insert fracsplit into path for autodoc
sys.path.insert(0, os.path.abspath('../../'))

from fracsplit import __VERSION__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
]

source_suffix = ['.rst']
master_doc = 'index'
exclude_patterns = []

project = u'fracsplit'
author = u'fracsplit developers'
copyright = u'2026, {!s}'.format(author)

# Version from the fracsplit module.
version = __VERSION__
release = __VERSION__

pygments_style = 'sphinx'

html_theme = 'alabaster'
htmlhelp_basename = '{!s}doc'.format(project)

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'jinja2': ('https://jinja.palletsprojects.com/en/latest', None),
}
