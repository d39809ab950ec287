"""Typed failures raised by the analysis and I/O layers.

Every error carries a short machine-readable ``code`` so that the command
line can map failures to exit statuses and tests can assert on them.
"""

from __future__ import annotations


class TilepumpError(Exception):
    """Base class of all typed failures."""

    code = "ERROR"

    def __init__(self, message: str = "", **details: object) -> None:
        super().__init__(message or self.code)
        self.details = details

    def __str__(self) -> str:
        return f"{self.code}: {self.args[0]}"


class InputError(TilepumpError):
    """Failures caused by malformed input files (exit status 2)."""


class ParseError(InputError):
    code = "PARSE_ERROR"

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}", line=line, reason=reason)
        self.line = line
        self.reason = reason


class UnknownTile(InputError):
    code = "UNKNOWN_TILE"


class DisconnectedSeed(InputError):
    code = "DISCONNECTED_SEED"


class ConflictError(TilepumpError):
    code = "CONFLICT"


class DisconnectedError(TilepumpError):
    code = "DISCONNECTED"


class ConflictDetected(TilepumpError):
    code = "CONFLICT_DETECTED"


class BudgetExceeded(TilepumpError):
    code = "BUDGET_EXCEEDED"


class WindowTooSmall(TilepumpError):
    code = "WINDOW_TOO_SMALL"


class InvalidPath(TilepumpError):
    code = "INVALID_PATH"


class TypeMismatch(TilepumpError):
    code = "TYPE_MISMATCH"


class NullVector(TilepumpError):
    code = "NULL_VECTOR"


class BadIndices(TilepumpError):
    code = "BAD_INDICES"


class InvalidStep(TilepumpError):
    code = "INVALID_STEP"


class NoPath(TilepumpError):
    code = "NO_PATH"


class Collinear(TilepumpError):
    code = "COLLINEAR"


class NotSimple(TilepumpError):
    code = "NOT_SIMPLE"


class NotClosed(TilepumpError):
    code = "NOT_CLOSED"


class NotGoodCandidate(TilepumpError):
    code = "NOT_GOOD_CANDIDATE"


class PreconditionViolated(TilepumpError):
    code = "PRECONDITION_VIOLATED"


class VerificationFailed(TilepumpError):
    code = "VERIFICATION_FAILED"


class ArcFound(TilepumpError):
    code = "ARC_FOUND"


class NoBipumpable(TilepumpError):
    code = "NO_BIPUMPABLE"


class ComplexityTooHigh(TilepumpError):
    code = "COMPLEXITY_TOO_HIGH"


class InternalConflict(TilepumpError):
    code = "INTERNAL_CONFLICT"
