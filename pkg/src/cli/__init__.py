"""CLI module - command-line surface"""

from .app import build_parser, run
