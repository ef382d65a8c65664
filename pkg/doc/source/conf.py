# -*- coding: utf-8 -*-
"""pencillab documentation build configuration file
"""
import sys
import os

# Tell Sphinx the location of the pencillab Python package
sys.path.insert(0, os.path.abspath('../../'))

# -- General configuration ------------------------------------------------

needs_sphinx = "1.3"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.todo",
    "sphinx.ext.mathjax",
    "sphinx_copybutton",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
]

autodoc_typehints = 'description'

napoleon_numpy_docstring = True
napoleon_include_init_with_doc = True

templates_path = ["_templates"]

source_suffix = ".rst"
source_encoding = "utf-8-sig"

# The master toctree document
master_doc = "index"

# General information about the project
project = "pencillab"
copyright = "2024, pencillab developers"
author = "pencillab developers"

version = os.getenv("READTHEDOCS_VERSION", "latest")
release = version

language = "en"

exclude_patterns = ["_build"]

smartquotes = False

pygments_style = "sphinx"
highlight_language = "python3"

# -- Options for HTML output ----------------------------------------------

html_theme = "sphinx_rtd_theme"

html_theme_options = {
    "collapse_navigation": False,
}

html_title = f"pencillab ({version}) documentation"

htmlhelp_basename = "pencillabdoc"

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (
        master_doc,
        "pencillab.tex",
        "pencillab Documentation",
        "pencillab developers",
        "manual",
    ),
]

linkcheck_anchors = False

linkcheck_timeout = 10
