"""
Error handling utilities for the achronal command line harness.

This module provides:
- Error categorization and the exit-code contract
- Structured error payloads for JSON reports
- A decorator that turns command exceptions into payload + exit code
"""

import functools
import time
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

from achronal.logger import get_logger

logger = get_logger("utils.error_handler")


class ErrorCategory(Enum):
    """Categories of errors for appropriate handling strategies."""
    VALIDATION = "validation"
    CONFIGURATION = "configuration"
    PRECONDITION = "precondition"
    NUMERIC = "numeric"
    INCONSISTENCY = "inconsistency"
    STORAGE = "storage"
    INTERNAL = "internal"


# Exit codes: 0 pass, 1 assertion failure, 2 config error, 3 precondition failure
EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3

_EXIT_CODES = {
    ErrorCategory.VALIDATION: EXIT_CONFIG,
    ErrorCategory.CONFIGURATION: EXIT_CONFIG,
    ErrorCategory.PRECONDITION: EXIT_PRECONDITION,
    ErrorCategory.NUMERIC: EXIT_ASSERTION,
    ErrorCategory.INCONSISTENCY: EXIT_ASSERTION,
    ErrorCategory.STORAGE: EXIT_CONFIG,
    ErrorCategory.INTERNAL: EXIT_ASSERTION,
}


class ErrorInfo:
    """Structured error information for JSON reports."""

    def __init__(
        self,
        message: str,
        error_type: str,
        category: ErrorCategory,
        details: Optional[Dict[str, Any]] = None,
        suggestions: Optional[List[str]] = None
    ):
        self.message = message
        self.error_type = error_type
        self.category = category
        self.details = details or {}
        self.suggestions = suggestions or []
        self.timestamp = time.time()

    @property
    def exit_code(self) -> int:
        return exit_code_for(self.category)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for the error report."""
        return {
            "success": False,
            "error": self.message,
            "error_type": self.error_type,
            "category": self.category.value,
            "exit_code": self.exit_code,
            "details": self.details if self.details else None,
            "suggestions": self.suggestions if self.suggestions else None,
        }


def exit_code_for(category: ErrorCategory) -> int:
    """Map an error category onto the CLI exit-code contract."""
    return _EXIT_CODES.get(category, EXIT_ASSERTION)


def categorize_exception(exc: Exception) -> ErrorCategory:
    """
    Categorize an exception for appropriate handling.

    Args:
        exc: Exception to categorize

    Returns:
        Error category
    """
    from achronal.errors import (
        ConfigurationError, InconsistencyError, InvalidArgumentError,
        NumericFailureError, PreconditionError, SchemaError, StorageError
    )

    if isinstance(exc, (SchemaError, InvalidArgumentError)):
        return ErrorCategory.VALIDATION
    elif isinstance(exc, ConfigurationError):
        return ErrorCategory.CONFIGURATION
    elif isinstance(exc, PreconditionError):
        return ErrorCategory.PRECONDITION
    elif isinstance(exc, NumericFailureError):
        return ErrorCategory.NUMERIC
    elif isinstance(exc, InconsistencyError):
        return ErrorCategory.INCONSISTENCY
    elif isinstance(exc, StorageError):
        return ErrorCategory.STORAGE
    elif isinstance(exc, (ValueError, TypeError)):
        return ErrorCategory.VALIDATION
    else:
        return ErrorCategory.INTERNAL


def get_error_suggestions(category: ErrorCategory) -> List[str]:
    """
    Get recovery suggestions based on error category.

    Args:
        category: Error category

    Returns:
        List of suggestion strings
    """
    suggestions = {
        ErrorCategory.VALIDATION: [
            "Check the input files against `achronal schemas`",
            "Velocities must satisfy |v| < 1 and spins must be half-integers",
        ],
        ErrorCategory.CONFIGURATION: [
            "Check ACHRONAL_* environment variables and the tolerance file",
        ],
        ErrorCategory.PRECONDITION: [
            "Surfaces must be 1-Lipschitz on all of R^3 (maximal achronal)",
            "Causality checks need a causal base as target surface",
        ],
        ErrorCategory.NUMERIC: [
            "Move velocities away from the light cone or loosen fixed_point_tol",
        ],
        ErrorCategory.INCONSISTENCY: [
            "Inspect the witnesses listed in the report details",
        ],
        ErrorCategory.STORAGE: [
            "Check that the output directory is writable",
        ],
    }
    return suggestions.get(category, ["Re-run with ACHRONAL_LOG_LEVEL=DEBUG for details"])


def error_info_from_exception(exc: Exception) -> ErrorInfo:
    """Build the ErrorInfo payload for an exception."""
    category = categorize_exception(exc)
    details: Dict[str, Any] = {}
    for attribute in ("argument", "setting", "source", "condition", "operation", "key", "subject"):
        value = getattr(exc, attribute, None)
        if value is not None:
            details[attribute] = value
    diagnostics = getattr(exc, "diagnostics", None)
    if diagnostics:
        details["diagnostics"] = diagnostics
    witnesses = getattr(exc, "witnesses", None)
    if witnesses:
        details["witnesses"] = witnesses
    return ErrorInfo(
        message=str(getattr(exc, "message", exc)),
        error_type=type(exc).__name__,
        category=category,
        details=details,
        suggestions=get_error_suggestions(category),
    )


def handle_cli_errors(func: Callable[..., Tuple[int, Dict[str, Any]]]) -> Callable[..., Tuple[int, Dict[str, Any]]]:
    """
    Decorator for CLI commands returning (exit_code, report).

    Exceptions become an error report and the exit code of their category.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Tuple[int, Dict[str, Any]]:
        try:
            return func(*args, **kwargs)
        except Exception as e:
            info = error_info_from_exception(e)
            if info.category == ErrorCategory.INTERNAL:
                logger.error(f"Error in {func.__name__}: {type(e).__name__}: {e}", exc_info=True)
            else:
                logger.error(f"Error in {func.__name__}: {info.message}")
            return info.exit_code, info.to_dict()

    return wrapper
