"""
Semitree Entry Point
Loads .env, configures logging and hands the command line to the CLI
"""
import sys

from dotenv import load_dotenv

load_dotenv()

from app.cli import run  # noqa: E402
from app.core.config import settings  # noqa: E402
from app.core.logging_config import setup_logging  # noqa: E402


def main() -> int:
    setup_logging(
        level=settings.log_level,
        log_to_file=settings.log_to_file,
        logs_dir=settings.logs_dir,
        max_files=settings.log_max_files,
    )
    return run(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
