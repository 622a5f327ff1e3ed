"""
Invariant suites and their reports.
"""

from achronal.verification.report import PropertyResult, Severity, SuiteReport
from achronal.verification.suites import SUITE_NAMES, SUITES, SuiteOptions, builtin_surfaces, run_suite

__all__ = [
    "PropertyResult",
    "Severity",
    "SuiteReport",
    "SUITE_NAMES",
    "SUITES",
    "SuiteOptions",
    "builtin_surfaces",
    "run_suite",
]
