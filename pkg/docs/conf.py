# Sphinx configuration for kemmer.

import os
import sys

sys.path.insert(0, os.path.abspath("../"))

from kemmer import __version__  # noqa: E402

project = "kemmer"
copyright = "2026, kemmer contributors"
author = "kemmer contributors"
release = __version__

master_doc = "toc"
extensions = ["sphinx.ext.autodoc"]
templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

html_theme = "alabaster"
