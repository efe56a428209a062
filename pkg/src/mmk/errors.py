"""Exception taxonomy shared by the library, CLI, and HTTP service."""

from __future__ import annotations


class MmkError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class SchemaError(MmkError):
    """A document does not match its schema; ``path`` names the offending field."""

    code = "validation"

    def __init__(self, message: str, path: str = "") -> None:
        super().__init__(message if not path else f"{path}: {message}")
        self.path = path


class DomainError(MmkError):
    """A domain rule was violated (out-of-range judgment, odd dimension score, ...)."""

    code = "domain_rule"

    def __init__(self, message: str, code: str | None = None, detail: dict | None = None) -> None:
        super().__init__(message)
        if code is not None:
            self.code = code
        self.detail = detail or {}


class NotFoundError(MmkError):
    """A referenced entity (model, session, practice) does not exist."""

    code = "not_found"


class ConflictError(MmkError):
    """Optimistic-concurrency conflict: the caller holds a stale revision."""

    code = "revision_conflict"

    def __init__(self, message: str, expected: int, actual: int) -> None:
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class ConvergenceError(MmkError):
    """Iterative weight derivation failed to converge (pathological input)."""

    code = "no_convergence"
