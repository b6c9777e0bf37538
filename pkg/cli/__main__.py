#!/usr/bin/env python3
"""
QuarticPell CLI Entry Point

This module provides the main entry point for the QuarticPell CLI.
Run with: quarticpell or python -m cli
"""

import sys

import click

from cli.app import app


def main():
    """Main entry point; usage errors exit with code 1."""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.UsageError as exc:
        exc.show()
        sys.exit(1)
    except click.exceptions.Abort:
        sys.exit(1)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
