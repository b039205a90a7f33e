"""Logging configuration shared by the CLI and scripts."""
import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

from hlreach.config import settings

LOG_FORMAT = '%(asctime)s | %(levelname)s | %(name)s | %(message)s'


def configure_logging(level: Optional[str] = None, to_file: Optional[bool] = None) -> None:
    """
    Configure root logging once per process.

    Answers go to stdout, so log records always go to stderr. When file
    logging is on, a dated log file is opened under LOG_DIR as well.

    Args:
        level: Log level name; defaults to settings.LOG_LEVEL
        to_file: Also write LOG_DIR/YYYYMMDD.log; defaults to settings.LOG_TO_FILE
    """
    level = (level or settings.LOG_LEVEL).upper()
    to_file = settings.LOG_TO_FILE if to_file is None else to_file

    handlers = [logging.StreamHandler(sys.stderr)]
    if to_file:
        log_dir = Path(settings.LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_dir / f"{datetime.now().strftime('%Y%m%d')}.log"))

    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)
