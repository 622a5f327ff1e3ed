"""
achronal Exceptions Module

Centralized exception classes for error handling throughout achronal.
"""

from typing import Any, Dict, List, Optional


class AchronalError(Exception):
    """Base exception for all achronal errors."""
    pass


class InvalidArgumentError(AchronalError):
    """Raised when an argument violates an operation's precondition on its domain."""

    def __init__(self, argument: str, message: Optional[str] = None):
        self.argument = argument
        self.message = message or f"Invalid argument: {argument}"
        super().__init__(self.message)


class NumericFailureError(AchronalError):
    """Raised when an iterative or finite-difference computation fails."""

    def __init__(
        self,
        operation: str,
        diagnostics: Optional[Dict[str, Any]] = None,
        message: Optional[str] = None
    ):
        self.operation = operation
        self.diagnostics = diagnostics or {}
        self.message = message or f"Numeric failure in {operation}"
        super().__init__(self.message)


class PreconditionError(AchronalError):
    """Raised when an input fails a mathematical precondition (e.g. not maximal achronal)."""

    def __init__(self, condition: str, message: Optional[str] = None):
        self.condition = condition
        self.message = message or f"Precondition failed: {condition}"
        super().__init__(self.message)


class ConfigurationError(AchronalError):
    """Raised when there's a configuration error."""

    def __init__(self, setting: Optional[str] = None, message: Optional[str] = None):
        self.setting = setting

        if message:
            self.message = message
        elif setting:
            self.message = f"Configuration error for setting: {setting}"
        else:
            self.message = "Configuration error"

        super().__init__(self.message)


class SchemaError(AchronalError):
    """Raised when an input document does not parse against its schema."""

    def __init__(self, source: Optional[str] = None, message: Optional[str] = None):
        self.source = source

        if message:
            self.message = message
        elif source:
            self.message = f"Schema violation in: {source}"
        else:
            self.message = "Schema violation"

        super().__init__(self.message)


class InconsistencyError(AchronalError):
    """Raised when two computations that must agree do not (e.g. an ill-defined lattice map)."""

    def __init__(
        self,
        subject: str,
        witnesses: Optional[List[Any]] = None,
        message: Optional[str] = None
    ):
        self.subject = subject
        self.witnesses = witnesses or []
        self.message = message or f"Inconsistency detected in: {subject}"
        super().__init__(self.message, self.witnesses)


class StorageError(AchronalError):
    """Raised when a report storage operation fails."""

    def __init__(self, operation: str, key: Optional[str] = None, message: Optional[str] = None):
        self.operation = operation
        self.key = key

        if message:
            self.message = message
        elif key:
            self.message = f"Storage error during {operation} for key: {key}"
        else:
            self.message = f"Storage error during {operation}"

        super().__init__(self.message)


# Export all exceptions
__all__ = [
    "AchronalError",
    "InvalidArgumentError",
    "NumericFailureError",
    "PreconditionError",
    "ConfigurationError",
    "SchemaError",
    "InconsistencyError",
    "StorageError",
]
