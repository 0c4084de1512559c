"""
Unit tests for settings and logging helpers
"""
import logging
import os
import time

from app.core.config import Settings
from app.core.logging_config import CompactFormatter, setup_logging
from app.core.logging_utils import AnsiStrippingFormatter, get_session_log_file


def _record(message: str, level: int = logging.INFO) -> logging.LogRecord:
    return logging.LogRecord("semigroups.stats", level, __file__, 1, message, None, None)


class TestSettings:
    """Test suite for environment-driven settings"""

    def test_defaults(self):
        """Test defaults without SEMITREE_ variables"""
        settings = Settings(_env_file=None)
        assert settings.workers == 1
        assert settings.default_max_genus == 10
        assert settings.suites_file.name == "suites.yaml"

    def test_env_prefix(self, monkeypatch):
        """Test SEMITREE_ variables override defaults"""
        monkeypatch.setenv("SEMITREE_WORKERS", "4")
        monkeypatch.setenv("SEMITREE_PARTITION_GENUS", "6")
        settings = Settings(_env_file=None)
        assert (settings.workers, settings.partition_genus) == (4, 6)

    def test_test_environment(self, setup_test_env):
        """Test the fixture points output at a temporary directory"""
        settings = Settings(_env_file=None)
        assert settings.output_dir == setup_test_env["output_dir"]
        assert settings.log_level == "WARNING"


class TestCompactFormatter:
    """Test suite for the console formatter"""

    def test_abbreviates(self):
        """Test frequent progress messages are shortened"""
        text = CompactFormatter().format(_record("Aggregated genus 0..8 (exclude-ordinary): 257 semigroups"))
        assert "📊 g 0..8" in text
        assert " I: " in text

    def test_suppresses(self):
        """Test the serial walk message is filtered out"""
        assert not CompactFormatter.keep(_record("Serial walk to genus 8"))
        assert CompactFormatter.keep(_record("Suite passed: bounds"))


class TestSessionLogs:
    """Test suite for session log files"""

    def test_strips_ansi(self):
        """Test ANSI colour codes are removed from file output"""
        formatter = AnsiStrippingFormatter("%(message)s")
        assert formatter.format(_record("\x1b[31mred\x1b[0m")) == "red"

    def test_keeps_recent_files(self, tmp_path):
        """Test old session logs beyond max_files are removed"""
        for i in range(5):
            old = tmp_path / f"semitree_2024-01-0{i + 1}_00-00-00.log"
            old.write_text("x")
            stamp = time.time() - 100 + i
            os.utime(old, (stamp, stamp))
        log_file = get_session_log_file("semitree", tmp_path, max_files=3)
        remaining = sorted(p.name for p in tmp_path.glob("semitree_*.log"))
        assert len(remaining) == 2
        assert remaining == ["semitree_2024-01-04_00-00-00.log", "semitree_2024-01-05_00-00-00.log"]
        assert log_file.parent == tmp_path

    def test_setup_logging_to_file(self, tmp_path):
        """Test setup_logging returns the session file when asked"""
        log_file = setup_logging(level="WARNING", log_to_file=True, logs_dir=tmp_path, max_files=2)
        try:
            assert log_file is not None and log_file.parent == tmp_path
            logging.getLogger("semigroups.tree").debug("written to file only")
        finally:
            for handler in logging.getLogger().handlers:
                handler.close()
            logging.getLogger().handlers.clear()
        assert "written to file only" in log_file.read_text(encoding="utf-8")

    def test_console_only(self, tmp_path):
        """Test no session file is created by default"""
        try:
            assert setup_logging(level="INFO", logs_dir=tmp_path / "logs") is None
        finally:
            logging.getLogger().handlers.clear()
        assert not (tmp_path / "logs").exists()
