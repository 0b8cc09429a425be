"""Error types raised by the kernel and the verifier.

Every error carries a human readable ``detail`` and the process exit code the
CLI should use when it escapes to the top level.
"""
from typing import Optional


class SupCompError(Exception):
    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class DimensionError(SupCompError):
    """Operands live on different atomic spaces."""


class DomainError(SupCompError):
    """An operation was applied outside the cone or outside its domain."""


class ContractError(SupCompError):
    """A documented precondition does not hold."""


class BackendError(SupCompError):
    """The scalar backend cannot perform the operation (exp on rationals)."""


class SizeError(SupCompError):
    """An enumeration would exceed its configured bound."""


class InvariantError(SupCompError):
    """An internal invariant failed; this indicates a kernel bug."""

    exit_code = 1


class ModelValidationError(SupCompError):
    def __init__(self, field: str, detail: str):
        super().__init__(f"{field}: {detail}")
        self.field = field


class UsageError(SupCompError):
    pass


def describe(error: Exception, field: Optional[str] = None) -> str:
    if isinstance(error, SupCompError):
        return error.detail
    prefix = f"{field}: " if field else ""
    return f"{prefix}{error}"
