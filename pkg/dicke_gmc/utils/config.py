"""
config.py – environment-driven settings for dicke-gmc.
Reads a .env file (python-dotenv) and then the process environment.
"""
import os
from dataclasses import dataclass

from dotenv import load_dotenv

THREADS_ENV = "DICKE_GMC_THREADS"
LOG_DIR_ENV = "LOG_DIR"
LOG_LEVEL_ENV = "DICKE_GMC_LOG_LEVEL"


@dataclass(frozen=True)
class Settings:
    """
    Process-wide settings.

    Args:
        log_dir (str): Directory for rotating log files.
        log_level (str): Minimum level of the file sink.
        threads (int): Cap on internal parallelism, 0 meaning auto.
    """
    log_dir: str = "./logs"
    log_level: str = "DEBUG"
    threads: int = 0


def load_settings() -> Settings:
    """
    Load settings from .env and the environment.

    Returns:
        Settings: Parsed settings; a malformed thread count falls back to auto.
    """
    load_dotenv()
    raw_threads = os.getenv(THREADS_ENV, "0").strip() or "0"
    try:
        threads = max(0, int(raw_threads))
    except ValueError:
        threads = 0
    return Settings(
        log_dir=os.getenv(LOG_DIR_ENV, "./logs"),
        log_level=os.getenv(LOG_LEVEL_ENV, "DEBUG"),
        threads=threads,
    )
