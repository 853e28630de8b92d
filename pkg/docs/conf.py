# type: ignore

"""Sphinx configuration script."""

from __future__ import annotations

import enum
import importlib.metadata
import inspect

from pycharsub.exceptions import Error
from pycharsub.predicates import AlgebraClass

project = "pycharsub"
author = "pycharsub contributors"
copyright = f"2026, {author}"
release = importlib.metadata.version("pycharsub")  # Needs package installation!
extensions = [
    "hoverxref.extension",
    "m2r2",  # Markdown to reStructuredText conversion (README only)
    "sphinx_copybutton",
    "sphinx_design",
    "sphinxcontrib.svgbob",  # ASCII diagrams -> SVG
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",  # Summary of contents table
    "sphinx.ext.intersphinx",  # Automatic links to Python docs
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",  # Google-style docstrings
    "sphinx.ext.viewcode",
]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
html_theme = "furo"
autodoc_inherit_docstrings = False
autodoc_member_order = "bysource"
autodoc_default_options = {"undoc-members": True}
needs_sphinx = "5.0"
hoverxref_auto_ref = True
napoleon_preprocess_types = True
napoleon_attr_annotations = True
html_permalinks_icon = "<span>#</span>"
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "construct": ("https://construct.readthedocs.io/en/latest", None),
}


def remove_enum_signature(app, what, name, obj, options, signature, return_annotation):
    """Removes erroneous :attr:`signature` = '(value)' for `enum.Enum` subclasses."""
    if inspect.isclass(obj) and issubclass(obj, enum.Enum):
        return ("", return_annotation)


def remove_class_signature(app, what, name, obj, options, signature, return_annotation):
    """Algebra classes are registered and looked up by tag, never constructed by users."""
    if what == "class" and issubclass(obj, AlgebraClass) and obj is not AlgebraClass:
        return ("", return_annotation)


def show_error_bases(app, what, name, obj, skip, options):
    """Always document the exception hierarchy, even undocumented subclasses."""
    if inspect.isclass(obj) and issubclass(obj, Error):
        return False


def setup(app):
    """Connects all callbacks to their event handlers."""
    app.connect("autodoc-process-signature", remove_enum_signature)
    app.connect("autodoc-process-signature", remove_class_signature)
    app.connect("autodoc-skip-member", show_error_bases)
