"""
QuarticPell Errors

Exception hierarchy and error classification shared by the library and the CLI.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


# =============================================================================
# EXCEPTIONS
# =============================================================================
class QuarticPellError(Exception):
    """Base class for every error raised by the toolkit."""


class VerificationError(QuarticPellError):
    """An exact identity or invariant did not hold."""

    def __init__(
        self,
        check: str,
        message: str = "",
        expected: Any = None,
        computed: Any = None,
    ):
        self.check = check
        self.expected = expected
        self.computed = computed
        detail = message or f"{check} failed"
        if expected is not None or computed is not None:
            detail += f" (expected {expected!r}, computed {computed!r})"
        super().__init__(detail)


class UndecidedError(QuarticPellError):
    """An interval comparison could not be decided at the available precision."""

    def __init__(self, context: str, bits: int | None = None):
        self.context = context
        self.bits = bits
        where = f" at {bits} bits" if bits is not None else ""
        super().__init__(f"undecided: {context}{where}")


class ConjectureViolation(QuarticPellError):
    """Three or more verified solutions were found for a single equation."""

    def __init__(self, a: int, b: int, solutions: list[Any]):
        self.a = a
        self.b = b
        self.solutions = solutions
        super().__init__(
            f"{len(solutions)} verified solutions of {a}X^4 - {b}Y^2 = 1"
        )


class PreconditionError(QuarticPellError, ValueError):
    """An operation was called outside its domain."""


class DegeneratePellError(PreconditionError):
    """ab is a perfect square, so aX^2 - bY^2 = 1 has no Pell structure."""


class RingMismatchError(PreconditionError):
    """Two ring elements with different omega^2 were combined."""


# =============================================================================
# ERROR CLASSIFICATION
# =============================================================================
class ErrorClassification(str, Enum):
    """Classification of failures, mirrored by CLI statuses and exit codes."""
    OK = "ok"
    VERIFICATION_FAILED = "verification_failed"
    UNDECIDED = "undecided"
    CONJECTURE_VIOLATION = "conjecture_violation"
    USAGE_ERROR = "usage_error"
    INTERNAL_ERROR = "internal_error"

    @classmethod
    def from_exception(cls, exc: BaseException) -> "ErrorClassification":
        """Classify an exception."""
        if isinstance(exc, ConjectureViolation):
            return cls.CONJECTURE_VIOLATION
        if isinstance(exc, UndecidedError):
            return cls.UNDECIDED
        if isinstance(exc, VerificationError):
            return cls.VERIFICATION_FAILED
        if isinstance(exc, (PreconditionError, ValueError)):
            return cls.USAGE_ERROR
        return cls.INTERNAL_ERROR

    @property
    def exit_code(self) -> int:
        return {
            ErrorClassification.OK: 0,
            ErrorClassification.VERIFICATION_FAILED: 2,
            ErrorClassification.UNDECIDED: 2,
            ErrorClassification.CONJECTURE_VIOLATION: 3,
            ErrorClassification.USAGE_ERROR: 1,
            ErrorClassification.INTERNAL_ERROR: 1,
        }[self]


@dataclass
class ErrorRecord:
    """A classified failure with the context needed to reproduce it."""
    classification: ErrorClassification
    error_type: str
    message: str
    context: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_exception(cls, exc: BaseException, **context: Any) -> "ErrorRecord":
        return cls(
            classification=ErrorClassification.from_exception(exc),
            error_type=type(exc).__name__,
            message=str(exc),
            context=context,
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "classification": self.classification.value,
            "error_type": self.error_type,
            "message": self.message,
            "context": self.context,
        }
