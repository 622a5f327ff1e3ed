"""Report storage for achronal."""

from achronal.storage.base import ReportStore
from achronal.storage.json_adapter import JSONReportStore

__all__ = ["ReportStore", "JSONReportStore"]
