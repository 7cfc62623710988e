"""
Service layer modules for dicke-gmc.
Includes the subcommand implementations, run configuration, file writers,
the oracle verification suite and the environment status report.
"""
from .commands import CommandResult, cmd_evolve, cmd_gmc_pure, cmd_snapshot, cmd_times, cmd_weaving
from .run_config import RunConfig
from .status import StatusReporter
from .verify import VerificationReport, cmd_verify, format_case, run_verification

__all__ = [
    'CommandResult', 'cmd_evolve', 'cmd_gmc_pure', 'cmd_snapshot', 'cmd_times', 'cmd_weaving',
    'RunConfig', 'StatusReporter', 'VerificationReport', 'cmd_verify', 'format_case', 'run_verification',
]
