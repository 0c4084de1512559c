"""
Logging configuration for Semitree with compact console output.
Structured results go to stdout, so every handler here writes to stderr or a file.
"""
import logging
import sys
from pathlib import Path
from typing import Optional

from app.core.logging_utils import AnsiStrippingFormatter, get_session_log_file


class CompactFormatter(logging.Formatter):
    """Formatter that abbreviates frequent progress messages."""

    # Messages to completely suppress
    SUPPRESS_PATTERNS = [
        "Serial walk to genus",
    ]

    # Messages to abbreviate
    ABBREVIATIONS = {
        "Walking genus <=": "🌳 g <=",
        "Aggregated genus": "📊 g",
        "Suite passed:": "✅",
        "Suite failed:": "❌",
    }

    @classmethod
    def keep(cls, record) -> bool:
        """Handler filter dropping suppressed messages."""
        msg = record.getMessage()
        return not any(pattern in msg for pattern in cls.SUPPRESS_PATTERNS)

    def format(self, record):
        # Abbreviate common messages
        msg = record.getMessage()
        for full, abbrev in self.ABBREVIATIONS.items():
            if full in msg:
                msg = msg.replace(full, abbrev)

        # Format: [TIME] LEVEL: message (no module names for brevity)
        return f"[{self.formatTime(record, '%H:%M:%S')}] {record.levelname[0]}: {msg}"


def setup_logging(
    level: str = "WARNING",
    log_to_file: bool = False,
    logs_dir: Optional[Path] = None,
    max_files: int = 10,
    session_name: str = "semitree",
) -> Optional[Path]:
    """
    Configure the root logger for a CLI session.

    Args:
        level: Console log level
        log_to_file: Also write a detailed session log under logs_dir
        logs_dir: Directory for session logs
        max_files: Number of session logs kept
        session_name: Base name of the session log file

    Returns:
        Path of the session log file, or None when logging to the console only
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG if log_to_file else level.upper())
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level.upper())
    console_handler.setFormatter(CompactFormatter())
    console_handler.addFilter(CompactFormatter.keep)
    root_logger.addHandler(console_handler)

    log_file = None
    if log_to_file and logs_dir is not None:
        log_file = get_session_log_file(session_name, Path(logs_dir), max_files)
        file_handler = logging.FileHandler(str(log_file), encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            AnsiStrippingFormatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
        root_logger.addHandler(file_handler)
        root_logger.debug(f"Logging to: {log_file}")
    return log_file


def log_milestone(message: str, level: str = "INFO"):
    """
    Log a milestone event with emphasis.
    Use this for key events you want to find quickly in logs.
    """
    logger = logging.getLogger("MILESTONE")
    symbols = {"INFO": "🎯", "WARNING": "⚠️", "ERROR": "❌", "SUCCESS": "✅"}
    symbol = symbols.get(level, "📌")

    log_func = getattr(logger, level.lower(), logger.info)
    log_func(f"{symbol} {message}")
