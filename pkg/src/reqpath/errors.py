"""Shared error types.

Every raised error carries a stable machine-readable ``code`` plus a human
message; the HTTP layer maps the exception class to a status and serializes
``code``/``message``/``details`` verbatim, so codes are part of the contract.
"""

from __future__ import annotations

from typing import Any


class ReqPathError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, code: str, message: str, **details: Any):
        super().__init__(message)
        self.code = code
        self.message = message
        self.details = details

    def to_payload(self) -> dict:
        return {"code": self.code, "message": self.message, "details": self.details}


class UnknownIdError(ReqPathError):
    """A referenced id does not exist (activity, method, requirement, ...)."""


class DomainError(ReqPathError):
    """Input or state violates a domain rule."""


class PhaseError(ReqPathError):
    """Operation is illegal in the session's current phase, or a gate blocks it."""


class StoreError(ReqPathError):
    """Session persistence failure: missing or corrupt on-disk data."""


class KBParseError(ReqPathError):
    """The knowledge-base document is not structurally well formed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        details = {}
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        super().__init__("parse_error", message, **details)


class KBValidationError(ReqPathError):
    """The knowledge-base document parsed but failed reference validation."""

    def __init__(self, report):
        errors = report.errors
        first = f": first is [{errors[0].code}] {errors[0].message}" if errors else ""
        super().__init__(
            "validation_error",
            f"knowledge base failed validation with {len(errors)} error(s){first}",
            findings=[f.to_payload() for f in report.findings],
        )
        self.report = report
