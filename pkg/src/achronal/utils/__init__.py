"""
Utility modules for achronal.
"""

from achronal.utils.error_handler import (
    ErrorCategory,
    ErrorInfo,
    categorize_exception,
    exit_code_for,
    get_error_suggestions,
    handle_cli_errors,
)
from achronal.utils.parallel import chunk_plan, chunk_rng, map_chunks

__all__ = [
    "ErrorCategory",
    "ErrorInfo",
    "categorize_exception",
    "exit_code_for",
    "get_error_suggestions",
    "handle_cli_errors",
    "chunk_plan",
    "chunk_rng",
    "map_chunks",
]
