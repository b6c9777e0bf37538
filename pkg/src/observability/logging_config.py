"""
QuarticPell Logging Configuration

structlog diagnostics for solver runs and range scans. Everything goes to
stderr (stdout is reserved for JSON-lines results); a rotating JSON file is
optional. Each CLI invocation binds a RunContext so every event from that
run, including pool workers, can be traced back to the command and t.
"""
from __future__ import annotations

import logging
import os
import sys
import uuid
from contextvars import ContextVar
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any

import structlog
from structlog.types import EventDict, Processor

from src.errors import ErrorRecord

SERVICE = "quarticpell"
LOG_FILE = "quarticpell.log"


# =============================================================================
# RUN CONTEXT
# =============================================================================
@dataclass(frozen=True)
class RunContext:
    """What a single CLI invocation is working on."""
    run_id: str
    command: str | None = None
    t: int | None = None


_run: ContextVar[RunContext | None] = ContextVar("quarticpell_run", default=None)


def new_run_id() -> str:
    return uuid.uuid4().hex[:16]


def current_run() -> RunContext | None:
    return _run.get()


def bind_run(command: str, run_id: str | None = None, t: int | None = None) -> RunContext:
    """Start a fresh run context for command."""
    run = RunContext(run_id=run_id or new_run_id(), command=command, t=t)
    _run.set(run)
    return run


def bind_t(t: int) -> None:
    """Attach t to the active run; a no-op outside a run."""
    run = _run.get()
    if run is not None:
        _run.set(replace(run, t=t))


def clear_run() -> None:
    _run.set(None)


# =============================================================================
# PROCESSORS
# =============================================================================
def add_run_context(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    """Copy the active RunContext into the event; explicit fields win."""
    run = _run.get()
    if run is None:
        return event_dict
    event_dict.setdefault("run_id", run.run_id)
    if run.command:
        event_dict.setdefault("command", run.command)
    if run.t is not None:
        event_dict.setdefault("t", run.t)
    return event_dict


def add_origin(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    """Service name, UTC timestamp and pid (scan workers log from their own process)."""
    event_dict["service"] = SERVICE
    event_dict["timestamp"] = datetime.now(timezone.utc).isoformat()
    event_dict["pid"] = os.getpid()
    return event_dict


def render_duration(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    duration_ms = event_dict.get("duration_ms")
    if duration_ms is not None:
        event_dict["duration"] = f"{duration_ms:.2f}ms"
    return event_dict


_PRE_CHAIN: list[Processor] = [
    structlog.stdlib.add_log_level,
    structlog.stdlib.add_logger_name,
    add_origin,
    add_run_context,
    render_duration,
    structlog.stdlib.PositionalArgumentsFormatter(),
    structlog.processors.StackInfoRenderer(),
    structlog.processors.format_exc_info,
    structlog.processors.UnicodeDecoder(),
]


def _formatter(renderer: Processor) -> structlog.stdlib.ProcessorFormatter:
    return structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=_PRE_CHAIN,
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer],
    )


# =============================================================================
# SETUP
# =============================================================================
_configured = False


def configure_logging(
    level: str = "WARNING",
    json_output: bool = False,
    log_dir: str | Path | None = None,
    rotate_bytes: int = 8 * 1024 * 1024,
    rotate_keep: int = 3,
    force: bool = False,
) -> None:
    """
    Route structlog through the stdlib root logger.

    Args:
        level: DEBUG, INFO, WARNING or ERROR
        json_output: JSON lines on stderr instead of the console renderer
        log_dir: If given, also write JSON lines to log_dir/quarticpell.log
        rotate_bytes: File size that triggers rotation
        rotate_keep: Rotated files kept
        force: Reconfigure even if already configured
    """
    global _configured
    if _configured and not force:
        return

    structlog.configure(
        processors=_PRE_CHAIN + [structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    stderr = logging.StreamHandler(sys.stderr)
    stderr.setFormatter(_formatter(
        structlog.processors.JSONRenderer() if json_output
        else structlog.dev.ConsoleRenderer(colors=False)
    ))
    handlers: list[logging.Handler] = [stderr]

    if log_dir is not None:
        path = Path(log_dir)
        path.mkdir(parents=True, exist_ok=True)
        rotating = RotatingFileHandler(
            path / LOG_FILE, maxBytes=rotate_bytes, backupCount=rotate_keep, encoding="utf-8"
        )
        rotating.setFormatter(_formatter(structlog.processors.JSONRenderer()))
        handlers.append(rotating)

    root = logging.getLogger()
    root.handlers = handlers
    root.setLevel(logging.getLevelName(level.upper()))
    _configured = True


def configure_from_settings(level_override: str | None = None) -> None:
    """Apply the logging section of config/settings.yml."""
    from src.config import get_config

    section = get_config().settings.logging
    configure_logging(
        level=level_override or section.level,
        json_output=section.json_output,
        log_dir=section.log_dir if section.file_enabled else None,
        force=True,
    )


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    if not _configured:
        configure_logging()
    return structlog.get_logger(name or SERVICE)


# =============================================================================
# RUN EVENTS
# =============================================================================
def log_run_started(command: str, t: int | None = None, **params: Any) -> RunContext:
    """Bind a new run and log its parameters."""
    run = bind_run(command, t=t)
    get_logger("cli").info("run_started", **params)
    return run


def log_run_finished(status: str, duration_ms: float) -> None:
    """Log the run's final status and clear the context."""
    get_logger("cli").info("run_finished", status=status, duration_ms=round(duration_ms, 3))
    clear_run()


def log_failure(event: str, record: ErrorRecord) -> None:
    get_logger("cli").error(
        event,
        classification=record.classification.value,
        error_type=record.error_type,
        error_message=record.message,
        **record.context,
    )
