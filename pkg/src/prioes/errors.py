"""Exception hierarchy. Every error carries a stable machine-readable code."""

from __future__ import annotations


class EsError(Exception):
    code = "ES_ERROR"

    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message)
        self.witness = witness


class ValidationError(EsError):
    code = "INVALID_STRUCTURE"

    def __init__(self, report) -> None:
        lines = "; ".join(str(v) for v in report.violations)
        super().__init__(f"invalid event structure: {lines}", report.violations)
        self.report = report


class UnknownEvent(EsError):
    code = "UNKNOWN_EVENT"


class NotATrace(EsError):
    code = "NOT_A_TRACE"


class NotAConfiguration(EsError):
    code = "NOT_A_CONFIGURATION"


class SizeLimitExceeded(EsError):
    code = "SIZE_LIMIT_EXCEEDED"


class VariantUnsupported(EsError):
    code = "VARIANT_UNSUPPORTED"


class InvalidCauseChoice(EsError):
    code = "INVALID_CAUSE_CHOICE"


class EventSetMismatch(EsError):
    code = "EVENT_SET_MISMATCH"


class NotAPartialOrder(EsError):
    code = "NOT_A_PARTIAL_ORDER"


class TheoremViolation(EsError):
    """A built-in oracle disagreed with a theorem-based computation."""

    code = "THEOREM_VIOLATION"
