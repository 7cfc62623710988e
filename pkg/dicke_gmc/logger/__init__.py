"""
Logger package for dicke-gmc.
Provides logging setup utilities for the application.
"""
from .logger import setup_logger

__all__ = ['setup_logger']
