"""
QuarticPell Observability Module

Structured diagnostics for long-running scans and verification runs.
"""
from .logging_config import (
    RunContext,
    bind_run,
    bind_t,
    clear_run,
    configure_from_settings,
    configure_logging,
    current_run,
    get_logger,
    log_failure,
    log_run_finished,
    log_run_started,
    new_run_id,
)

__all__ = [
    "RunContext",
    "bind_run",
    "bind_t",
    "clear_run",
    "configure_from_settings",
    "configure_logging",
    "current_run",
    "get_logger",
    "log_failure",
    "log_run_finished",
    "log_run_started",
    "new_run_id",
]
