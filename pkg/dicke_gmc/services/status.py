"""
status.py – Environment status for dicke-gmc.
Provides the StatusReporter class behind the `status` subcommand: package and
numerical-library versions, the resolved thread cap, CPU and memory figures.
"""
from importlib import metadata

import numpy as np
import psutil
import scipy

from dicke_gmc import __version__
from dicke_gmc.utils.config import Settings
from dicke_gmc.utils.parallel import resolve_threads

LIBRARIES = ("loguru", "psutil", "python-dotenv", "rich", "typer", "yaspin")


class StatusReporter:
    """
    Environment status reporter.

    Args:
        settings (Settings): Loaded settings.
        logger: Logger instance for logging actions and errors.
    """
    def __init__(self, settings: Settings, logger):
        self.settings = settings
        self.logger = logger

    def versions(self) -> dict:
        """
        Versions of dicke-gmc and the libraries it computes with.

        Returns:
            dict: Name → version string ("missing" when not installed).
        """
        found = {"dicke-gmc": __version__, "numpy": np.__version__, "scipy": scipy.__version__}
        for name in LIBRARIES:
            try:
                found[name] = metadata.version(name)
            except metadata.PackageNotFoundError:
                found[name] = "missing"
        return found

    def device_status(self) -> dict:
        """
        CPU and memory figures with the resolved thread cap.

        Returns:
            dict: Resource figures and health status.
        """
        try:
            memory = psutil.virtual_memory()
            status = {
                'health': 'OK',
                'threads': resolve_threads(self.settings.threads),
                'physical_cores': psutil.cpu_count(logical=False),
                'logical_cores': psutil.cpu_count(logical=True),
                'ram_total_gib': round(memory.total / 2 ** 30, 2),
                'ram_used_percent': memory.percent,
            }
        except Exception as e:
            self.logger.error(f"Failed to sample resources: {e}")
            return {'health': 'DEGRADED', 'message': 'Resource usage unavailable'}
        self.logger.info(f"Resource status: {status}")
        return status

    def report(self) -> dict:
        """Everything the `status` subcommand prints."""
        return {
            'versions': self.versions(),
            'device': self.device_status(),
            'log_dir': str(self.settings.log_dir),
            'log_level': self.settings.log_level,
        }
