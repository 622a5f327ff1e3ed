"""
JSON file-based report store.
"""

import json
import os
import re
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional

from achronal.errors import StorageError
from achronal.logger import get_logger
from achronal.storage.base import ReportStore

logger = get_logger("storage.json")

_KEY_PATTERN = re.compile(r'^[\w\-/]+$')


def dumps_report(report: Dict[str, Any]) -> str:
    """Canonical report serialization (sorted keys, fixed indentation)."""
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


class JSONReportStore(ReportStore):
    """Stores each report as `<base_dir>/<key>.json`."""

    def __init__(self, base_dir: Path):
        """
        Initialize the store.

        Args:
            base_dir: Output directory, created if missing
        """
        self.base_dir = Path(base_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)
        logger.debug(f"Report store initialized at {self.base_dir}")

    def _get_file_path(self, key: str, suffix: str = ".json") -> Path:
        """Convert key to file path, rejecting traversal and odd characters."""
        if not isinstance(key, str) or not key.strip():
            raise StorageError("resolve", key, "Key must be a non-empty string")
        if ".." in key or key.startswith("/") or key.startswith("\\"):
            raise StorageError("resolve", key, f"Invalid key contains path traversal attempt: {key}")
        if not _KEY_PATTERN.match(key):
            raise StorageError(
                "resolve", key,
                f"Key may only contain alphanumerics, hyphens, underscores and slashes: {key}"
            )

        parts = key.split("/")
        for part in parts:
            if not part:
                raise StorageError("resolve", key, f"Empty path component in key: {key}")
        directory = self.base_dir.joinpath(*parts[:-1])
        return directory / f"{parts[-1]}{suffix}"

    def _atomic_write(self, key: str, path: Path, text: str) -> bool:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, temp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(text)
            # Rename is atomic on POSIX and Windows
            os.replace(temp_name, path)
            logger.debug(f"Saved '{key}' to {path}")
            return True
        except OSError as e:
            logger.error(f"Error saving '{key}': {type(e).__name__}: {e}")
            return False

    def save(self, key: str, report: Dict[str, Any]) -> bool:
        """Save a report with an atomic write."""
        if not isinstance(report, dict):
            raise StorageError("save", key, "Report must be a dictionary")
        return self._atomic_write(key, self._get_file_path(key), dumps_report(report))

    def save_text(self, key: str, text: str, suffix: str = ".csv") -> bool:
        """Save a text artifact with an atomic write."""
        return self._atomic_write(key, self._get_file_path(key, suffix), text)

    def load(self, key: str) -> Optional[Dict[str, Any]]:
        """Load a report."""
        file_path = self._get_file_path(key)
        if not file_path.exists():
            logger.debug(f"No report found for key '{key}'")
            return None
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise StorageError("load", key, f"Corrupted report for key '{key}': {e}")

    def delete(self, key: str) -> bool:
        """Delete a report file if present."""
        file_path = self._get_file_path(key)
        try:
            if file_path.exists():
                file_path.unlink()
                logger.debug(f"Deleted report '{key}'")
            return True
        except OSError as e:
            logger.error(f"Error deleting '{key}': {type(e).__name__}")
            return False

    def exists(self, key: str) -> bool:
        """Check if a report file exists."""
        return self._get_file_path(key).exists()

    def list_keys(self, prefix: str = "") -> List[str]:
        """List report keys, sorted."""
        search_dir = self.base_dir / prefix if prefix else self.base_dir
        if not search_dir.exists():
            return []
        keys = []
        for path in search_dir.rglob("*.json"):
            relative = path.relative_to(self.base_dir).with_suffix("")
            keys.append(relative.as_posix())
        return sorted(keys)
