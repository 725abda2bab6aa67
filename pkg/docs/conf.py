# Sphinx configuration for the eigenladder documentation.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

from eigenladder import __version__  # noqa: E402

# -- Project information -----------------------------------------------------

project = 'eigenladder'
copyright = '2026, eigenladder developers'
author = 'eigenladder developers'
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx.ext.mathjax',
    'sphinx_rtd_theme',
]

templates_path = ['_templates']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
master_doc = 'index'

# -- HTML output -------------------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
    'navigation_depth': 3,
    'collapse_navigation': False,
}
htmlhelp_basename = 'eigenladderdoc'

# -- LaTeX and man pages -----------------------------------------------------

latex_documents = [
    (master_doc, 'eigenladder.tex', 'eigenladder Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'eigenladder', 'eigenladder Documentation', [author], 1),
]

# -- Extension configuration -------------------------------------------------

autodoc_default_options = {
    'members': True,
    'member-order': 'bysource',
    'undoc-members': True,
}

# Google-style docstrings throughout
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_use_rtype = True
