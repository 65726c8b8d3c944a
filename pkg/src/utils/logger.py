"""
Logger configuration
"""

import logging
import sys
from typing import Optional

import colorlog

from ..config import get_setting

_LOG_FORMAT = '%(log_color)s%(asctime)s - %(name)s - [%(levelname)s] - %(message)s'
_level_override: Optional[int] = None


def _configured_level() -> int:
    if _level_override is not None:
        return _level_override
    name = str(get_setting('logging', 'level', 'WARNING')).upper()
    return getattr(logging, name, logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """Get configured logger (stderr, colored by level)"""
    logger = logging.getLogger(f"labp.{name}")

    if not logger.handlers:
        # stdout carries reports, diagnostics go to stderr
        console_handler = logging.StreamHandler(sys.stderr)

        formatter = colorlog.ColoredFormatter(
            _LOG_FORMAT,
            datefmt='%H:%M:%S',
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'bold_red',
            }
        )
        console_handler.setFormatter(formatter)

        logger.addHandler(console_handler)
        logger.setLevel(_configured_level())
        logger.propagate = False

    return logger


def set_global_level(level: int) -> None:
    """Apply a level to every solver logger, existing and future"""
    global _level_override
    _level_override = level
    for name, candidate in logging.Logger.manager.loggerDict.items():
        if name.startswith("labp.") and isinstance(candidate, logging.Logger):
            candidate.setLevel(level)
