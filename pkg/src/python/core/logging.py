"""
Logging configuration for the simulator and its command line front end.

Human-friendly single-line records for interactive runs, JSON records for
batch runs whose logs are collected by other tools.
"""
import sys
import logging
from datetime import datetime
from typing import Optional, TextIO

from pythonjsonlogger import jsonlogger


class ConsoleFormatter(logging.Formatter):
    """Compact `HH:MM:SS LEVEL [name] message` formatter."""

    COLORS = {
        logging.WARNING: "\033[93m",
        logging.ERROR: "\033[91m",
        logging.CRITICAL: "\033[91m",
    }
    RESET = "\033[0m"

    def __init__(self, use_color: bool = False):
        super().__init__()
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        timestamp = datetime.fromtimestamp(record.created).strftime("%H:%M:%S")
        line = f"{timestamp} {record.levelname:<7} [{record.name}] {record.getMessage()}"
        if record.exc_info:
            line = f"{line}\n{self.formatException(record.exc_info)}"
        color = self.COLORS.get(record.levelno) if self.use_color else None
        return f"{color}{line}{self.RESET}" if color else line


def setup_logging(
    name: str = "src.python",
    level: str = "INFO",
    json_output: bool = False,
    stream: Optional[TextIO] = None,
) -> logging.Logger:
    """
    Setup logging for a run.

    Args:
        name: Logger to configure; library modules log below it
        level: Level name (DEBUG, INFO, ...)
        json_output: Emit JSON records instead of console lines
        stream: Target stream, stderr by default so stdout stays free for tables

    Returns:
        The configured logger
    """
    logger = logging.getLogger(name)
    logger.handlers.clear()

    level_name = level.upper()
    logger.setLevel(getattr(logging, level_name, logging.INFO))

    stream = stream if stream is not None else sys.stderr
    handler = logging.StreamHandler(stream)

    if json_output:
        formatter: logging.Formatter = jsonlogger.JsonFormatter(
            "%(asctime)s %(levelname)s %(name)s %(message)s",
            rename_fields={"asctime": "@timestamp", "levelname": "severity"},
        )
    else:
        formatter = ConsoleFormatter(use_color=hasattr(stream, "isatty") and stream.isatty())

    handler.setFormatter(formatter)
    logger.addHandler(handler)

    # Prevent duplicate records through the root logger
    logger.propagate = False

    logger.debug(f"Logging initialized at {level_name} level")

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with consistent configuration"""
    return logging.getLogger(name)
