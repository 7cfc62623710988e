"""
Utils package for dicke-gmc.
Provides settings loading, thread-pool fan-out and the progress spinner.
"""
from .config import Settings, load_settings
from .parallel import parallel_map, resolve_threads
from .spinner_handler import SpinnerHandler

__all__ = ['Settings', 'load_settings', 'parallel_map', 'resolve_threads', 'SpinnerHandler']
