"""
Logging Configuration.

Centralized logging setup for the library, CLI and scripts.

This module provides a unified logging configuration that:
    - Formats logs consistently across entry points
    - Supports both console and file output
    - Includes the service name in log messages
"""
from __future__ import annotations

import logging
import sys
from pathlib import Path

_HANDLER_TAG = "_cascades_handler"


def setup_logging(
    level: str = "INFO",
    log_file: Path | None = None,
    service_name: str = "clustered-cascades",
):
    """
    Configure logging for the application.

    Calling it again replaces the handlers installed by the previous call.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional file path for logging output
        service_name: Name that appears in every log line
    """
    log_level = getattr(logging, level.upper(), logging.INFO)

    formatter = logging.Formatter(
        f"%(asctime)s - {service_name} - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    root_logger = logging.getLogger()
    for handler in list(root_logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root_logger.removeHandler(handler)
            handler.close()
    root_logger.setLevel(log_level)

    # Console handler (stdout)
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(formatter)
    setattr(console_handler, _HANDLER_TAG, True)
    root_logger.addHandler(console_handler)

    # File handler (optional)
    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        setattr(file_handler, _HANDLER_TAG, True)
        root_logger.addHandler(file_handler)

    logging.info("Logging configured: level=%s", level)
