"""Logging configuration for sigma-rcm.

All records go to stderr: stdout carries verdicts, DOT and JSON that callers
pipe into other tools. Verification workers run in separate processes and
are configured through ``configure_worker`` so their records look the same.
"""

import logging
import sys
from pathlib import Path

PACKAGE_LOGGER = "sigma_rcm"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _level(level: str | int) -> int:
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.upper())
    if not isinstance(value, int):
        raise ValueError(f"Unknown log level: {level}")
    return value


def setup_logger(
    name: str = PACKAGE_LOGGER,
    level: str | int = "INFO",
    log_file: str | Path | None = None,
) -> logging.Logger:
    """Install a stderr handler (and optionally a file handler) on ``name``.

    Calling it again replaces the handlers of the previous call, so the CLI
    can reconfigure after reading settings.

    Args:
        name: Logger name
        level: Level name in any case (``debug`` ... ``error``) or number
        log_file: Optional file path for logging output

    Returns:
        Configured logger instance

    Raises:
        ValueError: If ``level`` is not a known level name
    """
    numeric = _level(level)
    logger = logging.getLogger(name)
    logger.setLevel(numeric)
    logger.handlers.clear()

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    for handler in handlers:
        handler.setLevel(numeric)
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger


def configure_worker(level: int) -> None:
    """Process-pool initializer: package logging at the parent's level."""
    setup_logger(level=level)
