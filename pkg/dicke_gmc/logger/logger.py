"""
logger.py – configure a daily-rotating logger that writes:
  [DD-MM-YYYY HH:MM:SS] [LEVEL] [payload]
Logs run parameters, milestones of long computations, surfaced invariant
violations and errors. Warnings and errors are mirrored to standard error.
"""
from loguru import logger
import os
import sys

LOG_FORMAT = ("[<green>{time:DD-MM-YYYY HH:mm:ss}</green>] [<level>{level}</level>] "
              "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | <level>{message}</level>")


def setup_logger(log_dir: str, log_name: str = "dicke_gmc", level: str = "DEBUG"):
    """
    Configure loguru logger with daily rotation and a console sink for warnings.

    Args:
        log_dir (str): Directory where logs are stored.
        log_name (str): Log file name prefix.
        level (str): Minimum level written to the log file.

    Returns:
        loguru.logger: Configured logger instance.
    """
    os.makedirs(log_dir, exist_ok=True)
    log_path = os.path.join(log_dir, f"{log_name}.log")
    logger.remove()  # Remove default handler
    logger.add(log_path, rotation="1 day", retention="7 days", encoding="utf-8",
               level=level.upper(), format=LOG_FORMAT)
    logger.add(sys.stderr, level="WARNING", format="<level>{level}</level> | {message}")
    return logger
