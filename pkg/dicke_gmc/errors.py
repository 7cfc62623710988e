"""
errors.py – exception hierarchy for dicke-gmc.
Every failure raised by the library derives from DickeGmcError so the CLI can map
it to exit status 1; malformed command-line input is handled by Typer (status 2).
"""
from typing import Optional


class DickeGmcError(Exception):
    """Base class for all dicke-gmc failures."""


class DomainError(DickeGmcError, ValueError):
    """A precondition on an argument was violated."""


class IntegrationError(DickeGmcError, RuntimeError):
    """
    The rate-equation integrator gave up.

    Args:
        message (str): Integrator message.
        time (float): Time reached when the integrator failed.
    """
    def __init__(self, message: str, time: float):
        super().__init__(f"{message} (failed at t={time:.17g})")
        self.time = time


class CapacityError(DickeGmcError, MemoryError):
    """A dense oracle was asked for more qubits than its guard allows."""


class ConsistencyError(DickeGmcError, ArithmeticError):
    """Two independent evaluations of the same quantity disagree."""


class VerificationError(DickeGmcError):
    """
    An oracle cross-check failed.

    Args:
        message (str): What was compared.
        case (Optional[dict]): The offending (N, n_e, k, t) tuple.
    """
    def __init__(self, message: str, case: Optional[dict] = None):
        super().__init__(message)
        self.case = case or {}
