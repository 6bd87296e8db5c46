import logging
import sys
from pathlib import Path
from typing import Optional, TextIO

from utils.config import get_log_level

# --- CONFIGURATION ---
FILE_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(message)s"
# stderr lines are read next to result tables, so no timestamp
CONSOLE_FORMAT = "[%(name)s] %(levelname)s %(message)s"


def setup_logger(
    log_path: Path,
    logger_name: str = "brauer",
    level: Optional[int] = None,
    stream: Optional[TextIO] = None,
) -> logging.Logger:
    """
    One logger per component (cli, bar, homology, checks, ...): a timestamped
    file under logs/ plus a short console line on stderr, since stdout
    carries the JSON/TSV output. The level defaults to BRAUER_LOG_LEVEL or
    logging.level in params.yaml.
    """
    log_path.parent.mkdir(parents=True, exist_ok=True)

    logger = logging.getLogger(logger_name)
    logger.setLevel(get_log_level() if level is None else level)
    logger.propagate = False

    # Handlers are attached once per logger name
    if not logger.handlers:
        fh = logging.FileHandler(log_path, encoding="utf-8")
        fh.setFormatter(logging.Formatter(FILE_FORMAT))
        logger.addHandler(fh)

        sh = logging.StreamHandler(stream if stream is not None else sys.stderr)
        sh.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        logger.addHandler(sh)

    return logger


def set_level(logger: logging.Logger, level: int) -> None:
    """Re-level a logger and every handler it owns."""
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)
