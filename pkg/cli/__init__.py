"""
QuarticPell CLI

Command-line interface for QuarticPell.
This module re-exports the main CLI app.
"""

from cli.app import app
from cli.__main__ import main

__all__ = ["app", "main"]
