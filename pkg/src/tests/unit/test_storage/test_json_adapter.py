"""
Unit tests for JSONReportStore functionality.

Tests cover:
- Basic operations (save, load, delete, exists)
- Listing and batch saves
- Text artifacts next to the JSON reports
- Key validation (path traversal prevention)
- Canonical serialization and corrupted files
"""

import pytest

from achronal.errors import StorageError
from achronal.storage import JSONReportStore
from achronal.storage.json_adapter import dumps_report


@pytest.mark.unit
@pytest.mark.storage
class TestJSONReportStoreBasicOperations:
    """Test basic operations."""

    def test_save_creates_file(self, fresh_temp_dir):
        """Test that save creates a JSON file."""
        store = JSONReportStore(fresh_temp_dir)

        result = store.save("verify", {"passed": True})

        assert result is True
        assert (fresh_temp_dir / "verify.json").exists()

    def test_save_creates_nested_directories(self, fresh_temp_dir):
        """Test that slashes in keys become directories."""
        store = JSONReportStore(fresh_temp_dir)

        assert store.save("verify/group", {"passed": True}) is True
        assert (fresh_temp_dir / "verify" / "group.json").exists()

    def test_load_returns_saved_report(self, report_store):
        """Test that load returns the saved report."""
        report = {"property": "additivity", "estimates": [0.5, 0.5], "nested": {"seed": 7}}

        report_store.save("axioms/additivity", report)

        assert report_store.load("axioms/additivity") == report

    def test_load_missing_key_returns_none(self, report_store):
        """Test that load returns None for missing keys."""
        assert report_store.load("nonexistent") is None

    def test_delete_removes_file(self, fresh_temp_dir):
        """Test that delete removes the file."""
        store = JSONReportStore(fresh_temp_dir)
        store.save("report", {"passed": True})

        assert store.delete("report") is True
        assert not (fresh_temp_dir / "report.json").exists()

    def test_delete_nonexistent_returns_true(self, report_store):
        """Test that deleting a missing report is not an error."""
        assert report_store.delete("nonexistent") is True

    def test_exists(self, report_store):
        """Test exists before and after a save."""
        assert report_store.exists("report") is False

        report_store.save("report", {"passed": True})

        assert report_store.exists("report") is True

    def test_overwrite_existing_key(self, report_store):
        """Test that save overwrites an existing report."""
        report_store.save("report", {"passed": False})
        report_store.save("report", {"passed": True})

        assert report_store.load("report") == {"passed": True}


@pytest.mark.unit
@pytest.mark.storage
class TestJSONReportStoreListing:
    """Test listing operations."""

    def test_list_keys_sorted(self, report_store):
        """Test that list_keys returns every key in sorted order."""
        for key in ("z_report", "a_report", "m_report"):
            report_store.save(key, {})

        assert report_store.list_keys() == ["a_report", "m_report", "z_report"]

    def test_list_keys_with_prefix(self, report_store):
        """Test that a prefix restricts the listing to one directory."""
        report_store.save("verify/group", {})
        report_store.save("verify/lattice", {})
        report_store.save("measure/ball", {})

        assert report_store.list_keys("verify") == ["verify/group", "verify/lattice"]

    def test_list_keys_ignores_text_artifacts(self, report_store):
        """Test that CSV files are not listed as reports."""
        report_store.save("table", {})
        report_store.save_text("table", "J,j,nu\n0,0,1\n")

        assert report_store.list_keys() == ["table"]

    def test_list_keys_empty_store(self, report_store):
        """Test list_keys on an empty store and a missing prefix."""
        assert report_store.list_keys() == []
        assert report_store.list_keys("missing") == []

    def test_batch_save(self, report_store):
        """Test that batch_save stores every report."""
        items = {"a": {"n": 1}, "b": {"n": 2}, "c/d": {"n": 3}}

        assert report_store.batch_save(items) is True
        assert all(report_store.exists(key) for key in items)


@pytest.mark.unit
@pytest.mark.storage
class TestJSONReportStoreText:
    """Test text artifacts."""

    def test_save_text_writes_csv(self, fresh_temp_dir):
        """Test that save_text writes the text verbatim with the suffix."""
        store = JSONReportStore(fresh_temp_dir)
        text = "J,j,nu\n1/2,1/2,2\n"

        assert store.save_text("spectrum/table", text) is True
        assert (fresh_temp_dir / "spectrum" / "table.csv").read_text(encoding="utf-8") == text

    def test_custom_suffix(self, fresh_temp_dir):
        """Test a non-default suffix."""
        store = JSONReportStore(fresh_temp_dir)

        store.save_text("notes", "hello", suffix=".txt")

        assert (fresh_temp_dir / "notes.txt").exists()


@pytest.mark.unit
@pytest.mark.storage
class TestCommandReports:
    """Test save_command_report."""

    def test_key_layout(self, fresh_temp_dir):
        """Test that reports land under <command>/<name>."""
        store = JSONReportStore(fresh_temp_dir)

        key = store.save_command_report("verify", "group", {"passed": True})

        assert key == "verify/group"
        assert store.load("verify/group") == {"passed": True}
        assert not (fresh_temp_dir / "verify" / "group.csv").exists()

    def test_table_copy(self, fresh_temp_dir):
        """Test the CSV copy saved next to the JSON report."""
        store = JSONReportStore(fresh_temp_dir)
        table = "J,j,nu\n0,0,1\n"

        store.save_command_report("multiplicity", "J-0", {"rows": []}, table=table)

        assert (fresh_temp_dir / "multiplicity" / "J-0.csv").read_text(encoding="utf-8") == table
        assert store.exists("multiplicity/J-0")

    def test_failed_write_raises(self, fresh_temp_dir, monkeypatch):
        """Test that a failed write becomes a StorageError instead of a silent False."""
        store = JSONReportStore(fresh_temp_dir)
        monkeypatch.setattr(store, "save", lambda key, report: False)

        with pytest.raises(StorageError) as exc_info:
            store.save_command_report("localize", "ball", {"estimate": 0.5})

        assert exc_info.value.key == "localize/ball"

    def test_invalid_name_rejected(self, report_store):
        """Test that names go through key validation."""
        with pytest.raises(StorageError):
            report_store.save_command_report("localize", "../escape", {})


@pytest.mark.unit
@pytest.mark.storage
class TestJSONReportStoreSecurity:
    """Test key validation."""

    @pytest.mark.parametrize("key", ["../outside", "/etc/passwd", "\\\\server\\share"])
    def test_path_traversal_rejected(self, report_store, key):
        """Test that keys escaping the base directory are rejected."""
        with pytest.raises(StorageError, match="path traversal"):
            report_store.save(key, {})

    def test_special_characters_rejected(self, report_store):
        """Test that spaces and dots are rejected."""
        with pytest.raises(StorageError):
            report_store.save("key with spaces", {})
        with pytest.raises(StorageError):
            report_store.save("path/./key", {})

    def test_empty_component_rejected(self, report_store):
        """Test that doubled slashes are rejected."""
        with pytest.raises(StorageError, match="Empty path component"):
            report_store.save("a//b", {})

    @pytest.mark.parametrize("key", ["", "   ", None])
    def test_empty_key_rejected(self, report_store, key):
        """Test that keys must be non-empty strings."""
        with pytest.raises(StorageError):
            report_store.save(key, {})

    def test_non_dict_rejected(self, report_store):
        """Test that only dictionaries are saved as reports."""
        with pytest.raises(StorageError):
            report_store.save("report", ["not", "a", "dict"])


@pytest.mark.unit
@pytest.mark.storage
class TestJSONReportStoreSerialization:
    """Test serialization edge cases."""

    def test_canonical_form(self):
        """Test sorted keys, two-space indent and trailing newline."""
        text = dumps_report({"b": 1, "a": [1, 2]})

        assert text.startswith('{\n  "a"')
        assert text.endswith("}\n")

    def test_identical_reports_identical_bytes(self, fresh_temp_dir):
        """Test that key order does not change the file contents."""
        store = JSONReportStore(fresh_temp_dir)

        store.save("first", {"x": 1, "y": 2})
        store.save("second", {"y": 2, "x": 1})

        first = (fresh_temp_dir / "first.json").read_bytes()
        assert first == (fresh_temp_dir / "second.json").read_bytes()

    def test_corrupted_report_raises(self, fresh_temp_dir):
        """Test that a corrupted file raises StorageError."""
        store = JSONReportStore(fresh_temp_dir)
        (fresh_temp_dir / "corrupted.json").write_text("{ invalid json }")

        with pytest.raises(StorageError, match="Corrupted"):
            store.load("corrupted")

    def test_base_dir_created(self, fresh_temp_dir):
        """Test that a missing base directory is created."""
        new_dir = fresh_temp_dir / "new_reports"

        JSONReportStore(new_dir)

        assert new_dir.exists()

    def test_no_temp_files_left(self, fresh_temp_dir):
        """Test that atomic writes leave no temporary files behind."""
        store = JSONReportStore(fresh_temp_dir)

        store.save("report", {"passed": True})

        assert list(fresh_temp_dir.glob("*.tmp")) == []
        assert (fresh_temp_dir / "report.json").exists()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
