"""
QuarticPell TUI Components

Rich terminal output for the CLI.
"""

from cli.tui.console import console, out_console, print_error, print_result

__all__ = ["console", "out_console", "print_error", "print_result"]
