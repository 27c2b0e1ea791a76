import logging
import sys
from typing import Optional

DEFAULT_LOGGER_NAME = "KronformLogger"
# Parent of every library module logger (src.kronecker, src.roots, ...)
LIBRARY_LOGGER_NAME = "src"
DEFAULT_LOG_LEVEL = "INFO"

# Loggers configured by setup_logger, keyed by name
_loggers: dict[str, logging.Logger] = {}


def setup_logger(name: str = DEFAULT_LOGGER_NAME, level_str: str = DEFAULT_LOG_LEVEL) -> logging.Logger:
    """
    Configures and returns a logger instance. Avoids duplicate handlers.

    Records and tables go to stdout, so log lines are written to stderr.

    Args:
        name (str): The name for the logger. Pass "src" to cover every library module.
        level_str (str): The desired logging level as a string (e.g., "DEBUG", "INFO").

    Returns:
        logging.Logger: The configured logger instance.
    """
    log_level = getattr(logging, level_str.upper(), logging.INFO) if level_str else logging.INFO
    if not isinstance(log_level, int):
        log_level = logging.INFO

    if name in _loggers:
        logger = _loggers[name]
        if logger.level != log_level:
            logger.setLevel(log_level)
            logger.debug(f"Logger '{name}' level updated to {logging.getLevelName(log_level)}.")
        return logger

    logger = logging.getLogger(name)
    logger.setLevel(log_level)

    if not logger.handlers:
        log_format = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        stderr_handler = logging.StreamHandler(sys.stderr)
        stderr_handler.setFormatter(log_format)
        logger.addHandler(stderr_handler)

        logger.debug(f"Logger '{name}' configured with level {logging.getLevelName(log_level)}.")

    _loggers[name] = logger
    return logger


def configured_level(name: str = LIBRARY_LOGGER_NAME) -> Optional[str]:
    """
    Level name of a logger set up by setup_logger, or None if it was never configured.

    Worker processes use this to log at the same level as the process that started them.
    """
    configured = _loggers.get(name)
    if configured is None:
        return None
    return logging.getLevelName(configured.level)
