# src/qineq_audit/errors.py
"""Exception hierarchy for the auditor.

Every error also derives from the closest builtin so callers that only
know about ``ValueError`` or ``ArithmeticError`` keep working.
"""


class QAuditError(Exception):
    """Base class for all auditor errors."""


class DomainError(QAuditError, ValueError):
    """A parameter lies outside the domain of an operation."""


class PreconditionError(QAuditError, ValueError):
    """An operation was called without its precondition holding."""


class ConfigurationError(QAuditError, ValueError):
    """A function specification lacks metadata an operation needs."""


class UnsupportedKindError(QAuditError, ValueError):
    """A moment kind has no closed form for the requested variant."""


class UsageError(QAuditError, ValueError):
    """Invalid campaign configuration or command line."""


class EvaluationError(QAuditError, ArithmeticError):
    """A series term or function value was not finite."""

    def __init__(self, message: str, index: int | None = None, node: float | None = None):
        super().__init__(message)
        self.index = index
        self.node = node


class LimitDoesNotExistError(QAuditError, ArithmeticError):
    """A probed limit failed to settle."""
