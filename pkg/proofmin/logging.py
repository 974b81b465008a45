"""
Logging utilities and convenience functions for proofmin.

This module provides easy access to logging functionality when using the package.
"""

from typing import Any, Dict, Optional

from .utils.logger import get_logger, get_logging_config, setup_comprehensive_logging

__all__ = [
    "setup_logging",
    "get_logger",
    "get_config",
    "log_info",
    "log_debug",
    "log_warning",
    "log_error",
]


def setup_logging(
    verbose: bool = False,
    log_directory: Optional[str] = None,
    enable_json_logs: bool = True,
) -> Dict[str, Any]:
    """
    Setup logging for proofmin, including rotating log files.

    Args:
        verbose: Enable debug level logging
        log_directory: Custom directory for log files
        enable_json_logs: Enable structured JSON logging

    Returns:
        Dictionary with log file paths and configuration

    Example:
        >>> from proofmin.logging import setup_logging
        >>> log_info = setup_logging(verbose=True)
        >>> print(f"Logs are stored in: {log_info['log_directory']}")
    """
    return setup_comprehensive_logging(
        verbose=verbose,
        log_to_file=True,
        log_directory=log_directory,
        enable_json_logs=enable_json_logs,
    )


def get_config() -> Dict[str, Any]:
    """Get the active logging configuration."""
    return get_logging_config()


def log_info(message: str, **kwargs: Any) -> None:
    """Log an info message."""
    get_logger("proofmin.user").log_search_event("user_info", {"message": message, **kwargs})


def log_debug(message: str, **kwargs: Any) -> None:
    """Log a debug message."""
    get_logger("proofmin.user").log_search_event(
        "user_debug", {"message": message, **kwargs}, level="DEBUG"
    )


def log_warning(message: str, **kwargs: Any) -> None:
    """Log a warning message."""
    get_logger("proofmin.user").log_search_event(
        "user_warning", {"message": message, **kwargs}, level="WARNING"
    )


def log_error(message: str, **kwargs: Any) -> None:
    """Log an error message."""
    get_logger("proofmin.user").log_search_event(
        "user_error", {"message": message, **kwargs}, level="ERROR"
    )
