"""Tests for the logging utilities."""

import logging
import logging.handlers
import os
import tempfile
from unittest.mock import Mock

from src.utils.exceptions import DomainException
from src.utils.logging import (
    ExperimentLogger,
    LabLogFormatter,
    create_log_filename,
    get_experiment_logger,
    get_logger,
    log_exception,
    setup_logging,
)


class TestLoggingSetup:
    """Test logging setup functionality."""

    def test_setup_logging_default(self):
        """Test default logging setup."""
        logger = setup_logging()

        assert logger.name == "threshlab"
        assert logger.level == logging.DEBUG  # Logger always captures all levels
        assert len(logger.handlers) == 1
        assert isinstance(logger.handlers[0], logging.StreamHandler)
        assert logger.handlers[0].level == logging.WARNING

    def test_setup_logging_verbose(self):
        """Test verbose logging setup."""
        logger = setup_logging(verbose=True)

        assert len(logger.handlers) == 1
        assert logger.handlers[0].level == logging.INFO

    def test_setup_logging_debug_overrides_verbose(self):
        logger = setup_logging(debug=True, verbose=True)

        assert logger.handlers[0].level == logging.DEBUG

    def test_setup_logging_with_file(self):
        """Test logging setup with file output."""
        with tempfile.TemporaryDirectory() as temp_dir:
            log_file = os.path.join(temp_dir, "lab.log")
            logger = setup_logging(debug=True, log_file=log_file)
            try:
                # console, main file and error file
                assert len(logger.handlers) == 3
                assert sum(isinstance(h, logging.handlers.RotatingFileHandler) for h in logger.handlers) == 2
                assert os.path.exists(log_file)
            finally:
                for handler in logger.handlers:
                    handler.close()
                logger.handlers.clear()

    def test_setup_logging_does_not_propagate(self):
        logger = setup_logging()
        assert logger.propagate is False


class TestGetLogger:
    """Test logger naming."""

    def test_named_logger_is_child_of_root(self):
        assert get_logger("harness").name == "threshlab.harness"

    def test_root_logger(self):
        assert get_logger().name == "threshlab"


class TestLabLogFormatter:
    """Test the pipe-separated formatter."""

    def setup_method(self):
        self.record = logging.LogRecord("threshlab.pacbayes", logging.INFO, __file__, 1, "Prior built", None, None)

    def test_format_without_context(self):
        """Test that the root prefix is stripped from the logger name."""
        text = LabLogFormatter(include_context=False).format(self.record)
        parts = [p.strip() for p in text.split("|")]
        assert parts[1] == "INFO"
        assert parts[2] == "pacbayes"
        assert parts[3] == "Prior built"

    def test_format_with_context_and_run_id(self):
        """Test that structured context and run ids are appended."""
        self.record.context = {"atoms": 3}
        self.record.run_id = "run-7"
        text = LabLogFormatter(include_context=True).format(self.record)
        assert 'Context: {"atoms":3}' in text
        assert "Run: run-7" in text

    def test_context_suppressed(self):
        self.record.context = {"atoms": 3}
        assert "Context" not in LabLogFormatter(include_context=False).format(self.record)


class TestExperimentLogger:
    """Test the experiment logger wrapper."""

    def setup_method(self):
        self.mock_logger = Mock()
        self.exp_logger = ExperimentLogger(self.mock_logger, run_id="r1")

    def test_log_stage(self):
        """Test stage logging."""
        self.exp_logger.log_stage("tradeoff", {"n": 64})

        self.mock_logger.info.assert_called_once()
        args, kwargs = self.mock_logger.info.call_args
        assert "tradeoff" in args[0]
        assert kwargs["extra"]["context"] == {"event_type": "stage", "stage": "tradeoff", "n": 64}
        assert kwargs["extra"]["run_id"] == "r1"

    def test_log_trial_is_debug(self):
        self.exp_logger.log_trial(3, {"kl": 0.5})

        self.mock_logger.debug.assert_called_once()
        context = self.mock_logger.debug.call_args[1]["extra"]["context"]
        assert context["trial"] == 3
        assert context["kl"] == 0.5

    def test_log_verdict_pass_is_info(self):
        """Test that a passing verdict logs at info level."""
        self.exp_logger.log_verdict("homogeneity", True)

        level, message = self.mock_logger.log.call_args[0]
        assert level == logging.INFO
        assert "PASS" in message

    def test_log_verdict_fail_is_warning(self):
        """Test that a failing verdict logs at warning level."""
        self.exp_logger.log_verdict("homogeneity", False, {"worst_violation": 0.2})

        level, message = self.mock_logger.log.call_args[0]
        assert level == logging.WARNING
        assert "FAIL" in message
        assert self.mock_logger.log.call_args[1]["extra"]["context"]["worst_violation"] == 0.2

    def test_log_metric(self):
        self.exp_logger.log_metric("median_kl", 1.25, {"n": 64})

        context = self.mock_logger.debug.call_args[1]["extra"]["context"]
        assert context["metric_name"] == "median_kl"
        assert context["value"] == 1.25
        assert context["n"] == 64

    def test_default_run_id(self):
        assert ExperimentLogger(self.mock_logger).run_id

    def test_get_experiment_logger(self):
        exp_logger = get_experiment_logger("sensitivity", run_id="abc")
        assert exp_logger.logger.name == "threshlab.sensitivity"
        assert exp_logger.run_id == "abc"


class TestLoggingHelpers:
    """Test logging helper functions."""

    def test_create_log_filename(self):
        """Test log filename creation."""
        filename = create_log_filename("tradeoff")
        assert filename.startswith("logs/tradeoff_")
        assert filename.endswith(".log")

    def test_log_exception_includes_exception_context(self):
        """Test that a LabException's context is flattened into the log context."""
        mock_logger = Mock()
        exc = DomainException("bad point", argument="x", value=99)

        log_exception(mock_logger, exc, {"command": "profile"})

        mock_logger.error.assert_called_once()
        kwargs = mock_logger.error.call_args[1]
        context = kwargs["extra"]["context"]
        assert context["exception_type"] == "DomainException"
        assert context["command"] == "profile"
        assert context["exc_argument"] == "x"
        assert kwargs["exc_info"] is True
