# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see
# http://www.sphinx-doc.org/en/master/config

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

# -- Project information -----------------------------------------------------

project = 'asymray'
copyright = '2026, asymray developers'
author = 'asymray developers'

version = ''
release = ''

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = None

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'asymraydoc'

# -- Options for manual page output ------------------------------------------

man_pages = [(master_doc, 'asymray', 'asymray Documentation', [author], 1)]

# -- Extension configuration -------------------------------------------------

autodoc_member_order = "bysource"
