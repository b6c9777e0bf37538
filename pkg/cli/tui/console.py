"""
QuarticPell Console Module

Rich consoles for the CLI: diagnostics on stderr, --pretty tables on stdout.
"""

from typing import Any

from rich.console import Console
from rich.table import Table
from rich.theme import Theme

# ============================================================================
# Theme
# ============================================================================

QUARTICPELL_THEME = Theme({
    "brand.primary": "bold cyan",

    # one style per CommandStatus value
    "status.ok": "bold green",
    "status.verification_failed": "bold red",
    "status.undecided": "bold yellow",
    "status.conjecture_violation": "bold white on red",

    "status.error": "bold red",
})

console = Console(theme=QUARTICPELL_THEME, stderr=True)
out_console = Console(theme=QUARTICPELL_THEME)


def print_error(message: str):
    console.print(f"[status.error]✗[/] {message}")


# ============================================================================
# Result Rendering
# ============================================================================

def _flatten(value: Any, prefix: str = "") -> list[tuple[str, str]]:
    """Nested payload -> (dotted key, text) rows."""
    if isinstance(value, dict):
        rows = []
        for key, item in value.items():
            rows.extend(_flatten(item, f"{prefix}.{key}" if prefix else str(key)))
        return rows
    if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        rows = []
        for i, item in enumerate(value):
            rows.extend(_flatten(item, f"{prefix}[{i}]"))
        return rows
    return [(prefix, str(value))]


def print_result(payload: dict[str, Any]):
    """Render one CommandResult (as a dict) as a table on stdout."""
    status = payload.get("status", "ok")
    table = Table(
        title=f"[brand.primary]{payload.get('command', '')}[/] [status.{status}]{status}[/]",
        border_style="cyan",
        header_style="bold white",
        show_header=True,
    )
    table.add_column("Field", style="bold")
    table.add_column("Value", overflow="fold")
    for key, text in _flatten(payload.get("input", {}), "input"):
        table.add_row(key, text)
    for key, text in _flatten(payload.get("result", {}), "result"):
        table.add_row(key, text)
    out_console.print(table)
    out_console.print(f"[dim]⏱️ {payload.get('runtime_ms', 0):.1f}ms[/]")
