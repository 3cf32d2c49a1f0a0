"""Logging utilities for the threshold verification lab."""

import json
import logging
import logging.handlers
import sys
from datetime import datetime
from pathlib import Path
from typing import Any

ROOT_LOGGER = "threshlab"


class LabLogFormatter(logging.Formatter):
    """Formatter producing pipe-separated lines with optional structured context."""

    def __init__(self, include_context: bool = True):
        self.include_context = include_context
        super().__init__()

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with lab-specific information."""
        timestamp = datetime.fromtimestamp(record.created).strftime("%Y-%m-%d %H:%M:%S.%f")[:-3]
        level = record.levelname
        name = record.name.replace(f"{ROOT_LOGGER}.", "")
        message = record.getMessage()

        context_info = ""
        if self.include_context and hasattr(record, "context"):
            context = record.context
            if isinstance(context, dict) and context:
                context_str = json.dumps(context, separators=(",", ":"), default=str)
                context_info = f" | Context: {context_str}"

        run_info = ""
        if hasattr(record, "run_id"):
            run_info = f" | Run: {record.run_id}"

        return f"{timestamp} | {level:8} | {name:15} | {message}{context_info}{run_info}"


class ExperimentLogger:
    """Logger for experiment stages, per-trial records and verification verdicts."""

    def __init__(self, logger: logging.Logger, run_id: str | None = None):
        self.logger = logger
        self.run_id = run_id or datetime.now().strftime("%Y%m%d_%H%M%S")

    def log_stage(self, stage: str, context: dict[str, Any] | None = None):
        """Log the start of an experiment stage."""
        log_context = {"event_type": "stage", "stage": stage, **(context or {})}
        self.logger.info(f"Stage: {stage}", extra={"context": log_context, "run_id": self.run_id})

    def log_trial(self, trial: int, record: dict[str, Any]):
        """Log one trial record at debug level."""
        log_context = {"event_type": "trial", "trial": trial, **record}
        self.logger.debug(f"Trial {trial} done", extra={"context": log_context, "run_id": self.run_id})

    def log_verdict(self, check: str, passed: bool, context: dict[str, Any] | None = None):
        """Log a verification verdict; failures are warnings."""
        log_context = {"event_type": "verdict", "check": check, "passed": passed, **(context or {})}
        level = logging.INFO if passed else logging.WARNING
        self.logger.log(
            level,
            f"Check {check}: {'PASS' if passed else 'FAIL'}",
            extra={"context": log_context, "run_id": self.run_id},
        )

    def log_metric(self, metric_name: str, value: int | float, context: dict[str, Any] | None = None):
        """Log a numeric metric."""
        log_context = {"metric_type": "experiment", "metric_name": metric_name, "value": value, **(context or {})}
        self.logger.debug(
            f"Metric {metric_name}: {value}", extra={"context": log_context, "run_id": self.run_id}
        )


def setup_logging(
    debug: bool = False,
    verbose: bool = False,
    log_file: str | None = None,
    max_log_files: int = 10,
    max_file_size: int = 10 * 1024 * 1024,
) -> logging.Logger:
    """Set up logging for the lab.

    Args:
        debug: Enable debug level logging
        verbose: Enable verbose (info level) logging
        log_file: Optional log file path
        max_log_files: Maximum number of rotated log files to keep
        max_file_size: Maximum size of each log file in bytes

    Returns:
        Configured root lab logger
    """
    if debug:
        log_level = logging.DEBUG
    elif verbose:
        log_level = logging.INFO
    else:
        log_level = logging.WARNING

    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(LabLogFormatter(include_context=False))
    if not debug:
        console_handler.addFilter(lambda record: record.levelno >= logging.INFO)
    logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_formatter = LabLogFormatter(include_context=True)

        file_handler = logging.handlers.RotatingFileHandler(log_file, maxBytes=max_file_size, backupCount=max_log_files)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)

        error_handler = logging.handlers.RotatingFileHandler(
            log_path.parent / f"error_{log_path.name}", maxBytes=max_file_size, backupCount=max_log_files
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(file_formatter)
        logger.addHandler(error_handler)

    logger.propagate = False

    logger.info(f"Logging system initialized - Console Level: {logging.getLevelName(log_level)}")
    if log_file:
        logger.info(f"Log files: {log_file} (main), error_{Path(log_file).name} (errors)")

    return logger


def get_logger(name: str | None = None) -> logging.Logger:
    """Get a logger below the lab root logger."""
    if name:
        return logging.getLogger(f"{ROOT_LOGGER}.{name}")
    return logging.getLogger(ROOT_LOGGER)


def get_experiment_logger(name: str | None = None, run_id: str | None = None) -> ExperimentLogger:
    """Get an experiment logger wrapping ``get_logger(name)``."""
    return ExperimentLogger(get_logger(name), run_id=run_id)


def create_log_filename(prefix: str = "lab") -> str:
    """Create a timestamped log filename under logs/."""
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return f"logs/{prefix}_{timestamp}.log"


def log_exception(logger: logging.Logger, exception: Exception, context: dict[str, Any] | None = None):
    """Log an exception with full traceback and context."""
    log_context = {"exception_type": type(exception).__name__, "exception_message": str(exception), **(context or {})}
    if hasattr(exception, "context") and isinstance(exception.context, dict):
        log_context.update({f"exc_{k}": v for k, v in exception.context.items()})

    logger.error(
        f"Exception occurred: {type(exception).__name__}: {exception}", extra={"context": log_context}, exc_info=True
    )
