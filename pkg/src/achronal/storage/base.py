"""
Abstract report store interface.

Reports are keyed `<command>/<name>` (for example `verify/group` or
`multiplicity/J-3`). A store keeps the JSON report under the key and,
for commands that print tables, a text copy under the same key.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from achronal.errors import StorageError


class ReportStore(ABC):
    """Abstract base class for report persistence."""

    @abstractmethod
    def save(self, key: str, report: Dict[str, Any]) -> bool:
        """
        Save a report.

        Args:
            key: Slash-separated identifier, e.g. "verify/group"
            report: JSON-serializable report

        Returns:
            True if successful, False otherwise
        """

    @abstractmethod
    def save_text(self, key: str, text: str, suffix: str = ".csv") -> bool:
        """Save a rendered table next to the JSON report of the same key."""

    @abstractmethod
    def load(self, key: str) -> Optional[Dict[str, Any]]:
        """Load a report, or None when absent."""

    @abstractmethod
    def delete(self, key: str) -> bool:
        """Delete a report."""

    @abstractmethod
    def exists(self, key: str) -> bool:
        """Check whether a report exists."""

    @abstractmethod
    def list_keys(self, prefix: str = "") -> List[str]:
        """List stored report keys, optionally under a prefix."""

    def batch_save(self, items: Dict[str, Dict[str, Any]]) -> bool:
        """Save several reports in key order; True if every write succeeded."""
        return all([self.save(key, report) for key, report in sorted(items.items())])

    def save_command_report(
        self,
        command: str,
        name: str,
        report: Dict[str, Any],
        table: Optional[str] = None
    ) -> str:
        """
        Save one command's report under `<command>/<name>`.

        Args:
            command: Subcommand that produced the report
            name: Report name within the command
            report: JSON report
            table: Rendered CSV, saved alongside when given

        Returns:
            The key used

        Raises:
            StorageError: If a write fails
        """
        key = f"{command}/{name}"
        if not self.save(key, report):
            raise StorageError("save", key, f"Could not write report '{key}'")
        if table is not None and not self.save_text(key, table):
            raise StorageError("save", key, f"Could not write table for '{key}'")
        return key
