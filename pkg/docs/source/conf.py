# -*- coding: utf-8 -*-
#
# sopcast documentation build configuration file
#

import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join("..", "..")))

on_rtd = os.environ.get("READTHEDOCS") == 'True'

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'sphinx.ext.autosummary',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'sopcast'
copyright = u'2021, sopcast developers'
author = u'sopcast developers'

version = u'v0.4.0'
release = u'v0.4.0'

language = None
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'default' if on_rtd else 'alabaster'
html_show_sourcelink = not on_rtd
htmlhelp_basename = 'sopcastdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
    (master_doc, 'sopcast.tex', u'sopcast Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'sopcast', u'sopcast Documentation',
     [author], 1)
]

autodoc_member_order = 'groupwise'
autoclass_content = 'both'

intersphinx_mapping = {'https://docs.python.org/': None}

def setup(app):
    """Customizations"""
    app.add_object_type("confval", "confval",
                        objname="sopcast configuration value",
                        indextemplate="pair: %s; sopcast configuration value")
