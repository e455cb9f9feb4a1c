import logging
import os
from datetime import datetime
from logging.handlers import RotatingFileHandler
from typing import Dict

from from_root import from_root

# -------------------------------------------------------------------
# LOGGING CONFIGURATION CONSTANTS
# -------------------------------------------------------------------

LOG_DIR = 'logs'

# One log file per process start
LOG_FILE = f"{datetime.now().strftime('%m_%d_%Y_%H_%M_%S')}.log"

MAX_LOG_SIZE = 5 * 1024 * 1024
BACKUP_COUNT = 3

# Console verbosity can be lowered for long campaigns
CONSOLE_LEVEL = os.getenv("GEOMETRY_CONSOLE_LOG_LEVEL", "INFO").upper()

# Every line carries the plane and seed of the current run
LOG_FORMAT = "[ %(asctime)s ] [%(run_context)s] %(module)s:%(lineno)d - %(levelname)s - %(message)s"

log_dir_path = os.path.join(from_root(), LOG_DIR)
os.makedirs(log_dir_path, exist_ok=True)
log_file_path = os.path.join(log_dir_path, LOG_FILE)

# -------------------------------------------------------------------
# RUN CONTEXT
# -------------------------------------------------------------------

_run_context: Dict[str, object] = {}


def set_run_context(**fields) -> None:
    """Replaces the fields stamped on every record, e.g. ``set_run_context(model="hyperbolic", k=1.0, seed=0)``."""
    _run_context.clear()
    _run_context.update({key: value for key, value in fields.items() if value is not None})


def run_context() -> str:
    if not _run_context:
        return "-"
    return " ".join(f"{key}={value}" for key, value in _run_context.items())


class RunContextFilter(logging.Filter):
    """Stamps ``run_context`` on records; never drops one."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_context = run_context()
        return True


# -------------------------------------------------------------------
# LOGGER CONFIGURATION FUNCTION
# -------------------------------------------------------------------

def configure_logger():
    """
    Configures application-wide logging with:
    - Rotating file handler (every trial seed ends up here)
    - Console handler (campaign progress)
    """
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    # Importing the package twice (e.g. under pytest) must not duplicate output
    if any(isinstance(f, RunContextFilter) for h in logger.handlers for f in h.filters):
        return

    formatter = logging.Formatter(LOG_FORMAT)
    context = RunContextFilter()

    file_handler = RotatingFileHandler(log_file_path, maxBytes=MAX_LOG_SIZE, backupCount=BACKUP_COUNT)
    file_handler.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, CONSOLE_LEVEL, logging.INFO))

    for handler in (file_handler, console_handler):
        handler.setFormatter(formatter)
        handler.addFilter(context)
        logger.addHandler(handler)


configure_logger()
