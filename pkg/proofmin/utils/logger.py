"""
Structured logging utilities for the proofmin package.
"""

import json
import logging
import os
import reprlib
import sys
import time
from datetime import datetime
from enum import Enum
from functools import wraps
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sized

ROOT_LOGGER_NAME = "proofmin"
FIELD_PREFIX = "pm_"


class _BoundedRepr(reprlib.Repr):
    """Size-limited repr that names objects instead of rendering them in full."""

    def __init__(self) -> None:
        super().__init__()
        self.maxlevel = 3
        self.maxlist = self.maxtuple = self.maxset = self.maxfrozenset = 10
        self.maxdict = 10
        self.maxstring = 200
        self.maxlong = 60
        self.maxother = 200

    def repr_instance(self, x: Any, level: int) -> str:
        if x is None or isinstance(x, (bool, float, complex, Enum)):
            return super().repr_instance(x, level)
        name = type(x).__name__
        if isinstance(x, Sized):
            return f"<{name} of {len(x)}>"
        return f"<{name}>"


_bounded_repr = _BoundedRepr()


def preview(value: Any, limit: int = 1000) -> str:
    """At most ``limit`` characters describing ``value`` for a log field."""
    if isinstance(value, str):
        return value[:limit]
    return _bounded_repr.repr(value)[:limit]


class StructuredFormatter(logging.Formatter):
    """Formatter emitting one JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": getattr(record, "module", None),
            "function": getattr(record, "funcName", None),
            "line": getattr(record, "lineno", None),
        }

        for key, value in record.__dict__.items():
            if key.startswith(FIELD_PREFIX):
                log_entry[key] = value

        return json.dumps(log_entry, default=str)


class ProofminLogger:
    """Logger wrapper that tags every record with session and event fields."""

    def __init__(self, name: str):
        self.logger = logging.getLogger(name)
        self.session_id = datetime.now().strftime("%Y%m%d_%H%M%S")

    @property
    def name(self) -> str:
        """Get the logger name."""
        return self.logger.name

    def isEnabledFor(self, level: int) -> bool:  # noqa: N802 - mirrors logging API
        return self.logger.isEnabledFor(level)

    def _emit(self, level: int, event_type: str, message: str,
              extra: Optional[Dict[str, Any]]) -> None:
        fields = dict(extra) if extra else {}
        fields.update({
            f"{FIELD_PREFIX}event_type": event_type,
            f"{FIELD_PREFIX}session_id": self.session_id,
        })
        self.logger.log(level, message, extra=fields)

    def info(self, message: str, extra: Optional[Dict[str, Any]] = None) -> None:
        """Log an info message."""
        self._emit(logging.INFO, "info", message, extra)

    def debug(self, message: str, extra: Optional[Dict[str, Any]] = None) -> None:
        """Log a debug message."""
        if self.logger.isEnabledFor(logging.DEBUG):
            self._emit(logging.DEBUG, "debug", message, extra)

    def warning(self, message: str, extra: Optional[Dict[str, Any]] = None) -> None:
        """Log a warning message."""
        self._emit(logging.WARNING, "warning", message, extra)

    def error(self, message: str, extra: Optional[Dict[str, Any]] = None) -> None:
        """Log an error message."""
        self._emit(logging.ERROR, "error", message, extra)

    def log_function_call(self, func_name: str, args: Optional[tuple] = None,
                          kwargs: Optional[dict] = None,
                          context: Optional[dict] = None,
                          level: str = "DEBUG") -> None:
        """Log a function call with its parameters."""
        if not self.logger.isEnabledFor(getattr(logging, level.upper())):
            return
        extra = {
            "pm_event_type": "function_call",
            "pm_function": func_name,
            "pm_args": preview(args, 500) if args else None,
            "pm_kwargs": {k: preview(v, 200) for k, v in kwargs.items()} if kwargs else None,
            "pm_context": context,
            "pm_session_id": self.session_id,
        }
        self.logger.log(getattr(logging, level.upper()),
                        f"Function call: {func_name}", extra=extra)

    def log_function_result(self, func_name: str, result: Any,
                            execution_time: Optional[float] = None,
                            level: str = "DEBUG") -> None:
        """Log a function result and its wall time."""
        if not self.logger.isEnabledFor(getattr(logging, level.upper())):
            return
        extra = {
            "pm_event_type": "function_result",
            "pm_function": func_name,
            "pm_result": preview(result),
            "pm_execution_time": execution_time,
            "pm_session_id": self.session_id,
        }
        self.logger.log(getattr(logging, level.upper()),
                        f"Function result: {func_name}", extra=extra)

    def log_search_event(self, event_type: str, data: Optional[dict] = None,
                         level: str = "INFO") -> None:
        """Log a search lifecycle event (start, prune summary, halt)."""
        extra = {
            "pm_event_type": "search_event",
            "pm_search_event_type": event_type,
            "pm_data": data,
            "pm_session_id": self.session_id,
        }
        self.logger.log(getattr(logging, level.upper()),
                        f"Search event: {event_type}", extra=extra)

    def log_incumbent(self, length: int, bound: int, nodes: int,
                      elapsed: float) -> None:
        """Log an incumbent or lower-bound improvement."""
        extra = {
            "pm_event_type": "incumbent",
            "pm_length": length,
            "pm_bound": bound,
            "pm_nodes": nodes,
            "pm_elapsed": elapsed,
            "pm_session_id": self.session_id,
        }
        self.logger.info(
            f"Incumbent {length} (bound {bound}) after {nodes} nodes", extra=extra
        )

    def log_solver_call(self, status: str, clauses: int, steps: int,
                        proof_length: Optional[int] = None) -> None:
        """Log a finished DPLL run."""
        if not self.logger.isEnabledFor(logging.DEBUG):
            return
        extra = {
            "pm_event_type": "solver_call",
            "pm_status": status,
            "pm_clauses": clauses,
            "pm_steps": steps,
            "pm_proof_length": proof_length,
            "pm_session_id": self.session_id,
        }
        self.logger.debug(f"DPLL {status} on {clauses} clauses", extra=extra)


def setup_comprehensive_logging(
    verbose: bool = False,
    log_to_file: bool = False,
    log_directory: Optional[str] = None,
    max_log_size: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5,
    enable_json_logs: bool = True,
    quiet: bool = False,
) -> Dict[str, Any]:
    """
    Setup logging for the package.

    Console output goes to stderr so that command results on stdout stay
    parseable.

    Args:
        verbose: Enable debug level logging to console
        log_to_file: Enable file logging
        log_directory: Custom log directory path
        max_log_size: Maximum size per log file in bytes
        backup_count: Number of backup files to keep
        enable_json_logs: Also write a structured JSON log file
        quiet: Only warnings and errors on the console

    Returns:
        Dictionary with paths to log files and configuration info
    """
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    log_info: Dict[str, Any] = {}
    handlers = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    console_handler.setFormatter(logging.Formatter(console_format))
    console_handler.setLevel(level)
    handlers.append(console_handler)

    if log_to_file:
        if log_directory is None:
            log_directory = os.path.join(os.getcwd(), "logs", "proofmin")
        log_path = Path(log_directory)
        log_path.mkdir(parents=True, exist_ok=True)
        log_info["log_directory"] = str(log_path)

        stamp = datetime.now().strftime("%Y%m%d")
        log_file = log_path / f"proofmin_{stamp}.log"
        file_handler = RotatingFileHandler(
            log_file, maxBytes=max_log_size, backupCount=backup_count
        )
        file_handler.setFormatter(logging.Formatter(console_format))
        file_handler.setLevel(logging.DEBUG)
        handlers.append(file_handler)
        log_info["text_log_file"] = str(log_file)

        if enable_json_logs:
            json_log_file = log_path / f"proofmin_{stamp}.json"
            json_handler = RotatingFileHandler(
                json_log_file, maxBytes=max_log_size, backupCount=backup_count
            )
            json_handler.setFormatter(StructuredFormatter())
            json_handler.setLevel(logging.DEBUG)
            handlers.append(json_handler)
            log_info["json_log_file"] = str(json_log_file)

    root = logging.getLogger(ROOT_LOGGER_NAME)
    root.setLevel(logging.DEBUG if (verbose or log_to_file) else level)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    for handler in handlers:
        root.addHandler(handler)
    root.propagate = False

    log_info.update({
        "verbose": verbose,
        "quiet": quiet,
        "log_to_file": log_to_file,
        "max_log_size": max_log_size,
        "backup_count": backup_count,
        "enable_json_logs": enable_json_logs,
        "session_id": datetime.now().strftime("%Y%m%d_%H%M%S"),
    })
    set_logging_config(log_info)
    return log_info


def get_logger(name: str) -> ProofminLogger:
    """Get an enhanced logger instance for the given name."""
    return ProofminLogger(name)


def log_decorator(logger: ProofminLogger) -> Callable:
    """Decorator to log function calls, results and wall time."""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start_time = time.time()
            logger.log_function_call(
                func.__name__,
                args=args,
                kwargs=kwargs,
                context={"module": func.__module__},
            )
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.log_function_result(
                    func.__name__,
                    result=f"ERROR: {e}",
                    execution_time=time.time() - start_time,
                    level="ERROR",
                )
                raise
            logger.log_function_result(
                func.__name__, result=result, execution_time=time.time() - start_time
            )
            return result

        return wrapper
    return decorator


# set by the last setup_comprehensive_logging call
_active_config: Dict[str, Any] = {}


def get_logging_config() -> Dict[str, Any]:
    """A copy of the settings from the last logging setup."""
    return dict(_active_config)


def set_logging_config(config: Dict[str, Any]) -> None:
    _active_config.clear()
    _active_config.update(config)
