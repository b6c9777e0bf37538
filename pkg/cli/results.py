"""
QuarticPell Command Results

The CommandResult schema shared by every command, serialized as one JSON
object per line. Big integers and rationals travel as decimal strings.
"""

import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from pydantic import BaseModel, Field

from src.errors import ErrorClassification


class CommandStatus(str, Enum):
    OK = "ok"
    VERIFICATION_FAILED = "verification_failed"
    UNDECIDED = "undecided"
    CONJECTURE_VIOLATION = "conjecture_violation"

    @classmethod
    def from_classification(cls, classification: ErrorClassification) -> "CommandStatus":
        return cls(classification.value)

    @property
    def exit_code(self) -> int:
        return ErrorClassification(self.value).exit_code


class CommandResult(BaseModel):
    """One line of command output."""
    command: str = Field(..., description="Command name")
    input: Dict[str, Any] = Field(default_factory=dict, description="Echo of the parameters")
    result: Dict[str, Any] = Field(default_factory=dict, description="Structured payload")
    status: CommandStatus = CommandStatus.OK
    runtime_ms: float = 0.0

    def to_line(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True)


def jsonable(value: Any) -> Any:
    """Integers and rationals to decimal strings, recursively; bools and None pass."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    return str(value)


def worst(statuses: list[CommandStatus]) -> CommandStatus:
    """The status with the highest exit code (OK for an empty list)."""
    return max(statuses, key=lambda s: s.exit_code, default=CommandStatus.OK)


class ResultWriter:
    """
    Writes CommandResults as JSON lines on stdout (or rich tables with
    pretty=True), optionally appending the JSON lines to a file.

    Usage:
        writer = ResultWriter(pretty=False, out=Path("runs.jsonl"))
        writer.emit(result)
    """

    def __init__(self, pretty: bool = False, out: Optional[Path] = None):
        self.pretty = pretty
        self.out = out

    def emit(self, result: CommandResult) -> None:
        line = result.to_line()
        if self.pretty:
            from cli.tui.console import print_result
            print_result(json.loads(line))
        else:
            typer.echo(line)
        if self.out is not None:
            with open(self.out, "a", encoding="utf-8") as f:
                f.write(line + "\n")
