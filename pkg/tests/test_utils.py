"""Tests for the logging helpers."""

import logging
from pathlib import Path

import pytest

from sigma_rcm.utils.logger import configure_worker, setup_logger


class TestSetupLogger:
    """Test logger setup functionality."""

    def test_defaults(self) -> None:
        """Test the package logger at INFO."""
        logger = setup_logger()

        assert logger.name == "sigma_rcm"
        assert logger.level == logging.INFO

    @pytest.mark.parametrize(
        ("level", "expected"),
        [("debug", logging.DEBUG), ("WARNING", logging.WARNING), ("ErRoR", logging.ERROR)],
    )
    def test_level_case_insensitive(self, level: str, expected: int) -> None:
        """Test levels parse regardless of case."""
        assert setup_logger(name="sigma_rcm.test_level", level=level).level == expected

    def test_console_handler_on_stderr(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test records go to stderr and leave stdout clean."""
        logger = setup_logger(name="sigma_rcm.test_stderr")

        logger.info("grounded")

        captured = capsys.readouterr()
        assert captured.out == ""
        assert "grounded" in captured.err

    def test_file_handler(self, tmp_path: Path) -> None:
        """Test an optional log file receives formatted records."""
        log_file = tmp_path / "rcm.log"
        logger = setup_logger(name="sigma_rcm.test_file", log_file=str(log_file))

        logger.warning("state limit reached")
        for handler in logger.handlers:
            handler.flush()

        content = log_file.read_text()
        assert "state limit reached" in content
        assert "WARNING" in content

    def test_repeated_setup_replaces_handlers(self, tmp_path: Path) -> None:
        """Test a second call drops the handlers of the first."""
        name = "sigma_rcm.test_replace"
        first = setup_logger(name=name, log_file=str(tmp_path / "a.log"))
        count = len(first.handlers)

        second = setup_logger(name=name)

        assert len(second.handlers) == count - 1

    def test_unknown_level(self) -> None:
        """Test a misspelled level is rejected."""
        with pytest.raises(ValueError, match="loud"):
            setup_logger(name="sigma_rcm.test_unknown", level="loud")

    def test_numeric_level(self) -> None:
        """Test numeric levels pass through unchanged."""
        assert setup_logger(name="sigma_rcm.test_numeric", level=logging.DEBUG).level == logging.DEBUG


class TestConfigureWorker:
    """Test the process-pool initializer."""

    def test_package_logger_level(self) -> None:
        """Test workers get one handler at the parent's level."""
        configure_worker(logging.ERROR)

        logger = logging.getLogger("sigma_rcm")
        assert logger.level == logging.ERROR
        assert len(logger.handlers) == 1
