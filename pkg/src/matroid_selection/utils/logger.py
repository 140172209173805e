"""
Logging Configuration for the Matroid Selection Toolkit
Colored console logging on stderr plus an optional rotating log file
"""
import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Dict, Optional

import colorlog

from ..core.config import config


class LoggerSetup:
    """Setup and manage logging for the toolkit"""

    _loggers: Dict[str, logging.Logger] = {}

    @classmethod
    def get_logger(cls, name: str, log_file: Optional[str] = None) -> logging.Logger:
        """
        Get or create a logger with the specified name

        Args:
            name: Logger name (typically component name)
            log_file: Optional specific log file name

        Returns:
            Configured logger instance
        """
        if name in cls._loggers:
            return cls._loggers[name]

        logger = logging.getLogger(name)
        logger.setLevel(getattr(logging, config.LOG_LEVEL, logging.INFO))
        logger.propagate = False

        # Prevent duplicate handlers
        if logger.handlers:
            cls._loggers[name] = logger
            return logger

        # stdout carries JSON reports, so the console goes to stderr
        console_handler = colorlog.StreamHandler(sys.stderr)
        console_handler.setFormatter(colorlog.ColoredFormatter(
            config.LOG_COLOR_FORMAT,
            datefmt=config.LOG_DATE_FORMAT,
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'bold_red',
            },
        ))
        logger.addHandler(console_handler)

        if config.LOG_TO_FILE:
            log_filename = log_file or f"{name.replace('.', '_')}.log"
            file_handler = RotatingFileHandler(
                config.ensure_logs_dir() / log_filename,
                maxBytes=config.MAX_LOG_SIZE,
                backupCount=config.LOG_BACKUP_COUNT,
            )
            file_handler.setFormatter(logging.Formatter(config.LOG_FORMAT, datefmt=config.LOG_DATE_FORMAT))
            logger.addHandler(file_handler)

        cls._loggers[name] = logger
        return logger

# Pre-configured loggers for common components
def get_policy_logger() -> logging.Logger:
    """Logger for exact policy computations"""
    return LoggerSetup.get_logger("matroid_selection.policy")


def get_lp_logger() -> logging.Logger:
    """Logger for LP assembly and solving"""
    return LoggerSetup.get_logger("matroid_selection.lp")


def get_runner_logger() -> logging.Logger:
    """Logger for the online runner"""
    return LoggerSetup.get_logger("matroid_selection.ptas")


def get_generator_logger() -> logging.Logger:
    """Logger for instance generators"""
    return LoggerSetup.get_logger("matroid_selection.generators")


def get_cli_logger() -> logging.Logger:
    """Logger for the command line"""
    return LoggerSetup.get_logger("matroid_selection.cli")


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger by name (convenience function)

    Args:
        name: Logger name

    Returns:
        Logger instance
    """
    return LoggerSetup.get_logger(name)


# Export
__all__ = [
    'LoggerSetup',
    'get_logger',
    'get_policy_logger',
    'get_lp_logger',
    'get_runner_logger',
    'get_generator_logger',
    'get_cli_logger',
]
