"""
spinner_handler.py – Utility for displaying a spinner during long-running computations.
Implements SpinnerHandler context manager that reports progress steps with logging.
The spinner only runs on an interactive terminal.
"""
import sys

from yaspin import yaspin
from yaspin.spinners import Spinners
from loguru import logger as default_logger


class SpinnerHandler:
    """
    Context manager for displaying a spinner while a subcommand computes.

    Args:
        text (str): Spinner text.
        logger: Logger instance (default: loguru logger).
        enabled (bool): Disable to run silently (tests, non-interactive output).
    """
    def __init__(self, text="", logger=None, enabled=None):
        self.logger = logger or default_logger
        self.enabled = sys.stdout.isatty() if enabled is None else enabled
        self.spinner = yaspin(Spinners.line, text=text) if self.enabled else None
        self.text = text

    def __enter__(self):
        if self.spinner is not None:
            self.spinner.start()
        self.logger.debug(f"Started: {self.text}")
        return self

    def step(self, text):
        """
        Report a progress step.

        Args:
            text (str): Description of the step now running.
        """
        self.logger.debug(f"Step: {text}")
        if self.spinner is not None:
            self.spinner.text = f"{self.text} {text}".strip()

    def __exit__(self, exc_type, exc_value, traceback):
        if self.spinner is not None:
            if exc_type:
                self.spinner.fail("💥")
            else:
                self.spinner.ok("✅")
        if exc_type:
            self.logger.error(f"{self.text} failed: {exc_value}")
        else:
            self.logger.debug(f"Finished: {self.text}")
