"""
Test utilities package.
"""

from tests.utils.factories import (
    DocumentFactory,
    GroupFactory,
    LineFactory,
    VectorFactory,
)

from tests.utils.assertions import (
    assert_check_passed,
    assert_close,
    assert_suite_passed,
    assert_unitary,
    assert_within_error,
)

__all__ = [
    "DocumentFactory",
    "GroupFactory",
    "LineFactory",
    "VectorFactory",
    "assert_check_passed",
    "assert_close",
    "assert_suite_passed",
    "assert_unitary",
    "assert_within_error",
]
