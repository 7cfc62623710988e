"""
verify.py – oracle-equivalence suite behind the `verify` subcommand.
Compares the closed-form spectra, entropies, correlation measures and populations
with the dense 2^N-dimensional reference and reports the first offending
(N, n_e, k, t) tuple.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from loguru import logger

from dicke_gmc.core.dicke_core import (
    DickeLabel,
    DickeMixture,
    entropy_of_spectrum,
    mixture_entropy,
    reduced_spectrum_mixture,
    reduced_spectrum_pure,
)
from dicke_gmc.core.gmc import gmc_higher_pure
from dicke_gmc.core.superradiance import RateModel, evolve
from dicke_gmc.errors import DomainError
from dicke_gmc.oracle import (
    MAX_MATRIX_QUBITS,
    MAX_VECTOR_QUBITS,
    dense_dicke_state,
    dense_mixture_state,
    dense_partial_trace,
    dense_reduced_eigenvalues,
    eigen_entropy,
    oracle_gmc_higher,
    rate_matrix_exponential,
)
from dicke_gmc.utils.spinner_handler import SpinnerHandler
from .run_config import RunConfig

SPECTRUM_TOL = 1e-10
ENTROPY_TOL = 1e-9
POPULATION_TOL = 1e-9
MIXTURE_SIZES = (4, 6, 8)
MIXTURE_TIMES = np.geomspace(1e-2, 1.0, 5)   # in units of 1/γ


@dataclass
class CheckResult:
    """
    One family of comparisons.

    Args:
        name (str): What was compared.
        cases (int): Number of comparisons made.
        max_error (float): Largest deviation seen.
        tolerance (float): Allowed deviation.
        first_failure (Optional[dict]): First (N, n_e, k, t) beyond tolerance.
    """
    name: str
    tolerance: float
    cases: int = 0
    max_error: float = 0.0
    first_failure: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def record(self, error: float, **case) -> None:
        self.cases += 1
        self.max_error = max(self.max_error, error)
        if error > self.tolerance and self.first_failure is None:
            self.first_failure = {"N": None, "n_e": None, "k": None, "t": None, **case, "error": error}
            logger.error(f"{self.name}: mismatch {error:.3e} at {format_case(self.first_failure)}")


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def first_failure(self) -> Optional[dict]:
        for check in self.checks:
            if not check.passed:
                return check.first_failure
        return None


def format_case(case: Dict) -> str:
    """(N, n_e, k, t) tuple as printed on failure."""
    return f"(N={case.get('N')}, n_e={case.get('n_e')}, k={case.get('k')}, t={case.get('t')})"


def _multiset_error(expected: np.ndarray, found: np.ndarray) -> float:
    """Largest gap between two eigenvalue multisets, zero-padded to equal length."""
    size = max(expected.size, found.size)
    a = np.sort(np.pad(expected, (0, size - expected.size)))[::-1]
    b = np.sort(np.pad(found, (0, size - found.size)))[::-1]
    return float(np.max(np.abs(a - b)))


def _check_pure(max_n: int, spectra: CheckResult, correlations: CheckResult, spinner) -> None:
    for N in range(2, max_n + 1):
        spinner.step(f"pure N={N}")
        for n_e in range(N + 1):
            label = DickeLabel(N, n_e)
            state = dense_dicke_state(label)
            for k in range(1, N):
                weights = reduced_spectrum_pure(label, k).weights
                eigenvalues = dense_reduced_eigenvalues(state, k)
                spectra.record(_multiset_error(weights, eigenvalues), N=N, n_e=n_e, k=k)
                error = abs(gmc_higher_pure(label, k) - oracle_gmc_higher(state, k, global_entropy=0.0))
                correlations.record(error, N=N, n_e=n_e, k=k)


def _check_mixtures(sizes: List[int], gamma: float, populations: CheckResult,
                    entropies: CheckResult, spinner) -> None:
    for N in sizes:
        spinner.step(f"mixture N={N}")
        model = RateModel(N, gamma=gamma)
        times = MIXTURE_TIMES / gamma
        trajectory = evolve(model, times=times)
        for t, integrated in zip(times, trajectory.populations):
            exact = rate_matrix_exponential(model, t)
            populations.record(float(np.max(np.abs(integrated - exact))), N=N, t=float(t))
            mix = DickeMixture(exact)
            state = dense_mixture_state(mix.populations)
            entropies.record(abs(mixture_entropy(mix) - eigen_entropy(state)), N=N, k=N, t=float(t))
            for k in range(1, N):
                closed = entropy_of_spectrum(reduced_spectrum_mixture(mix, k))
                dense = eigen_entropy(dense_partial_trace(state, k))
                entropies.record(abs(closed - dense), N=N, k=k, t=float(t))


def run_verification(max_n: int = 10, gamma: float = 1.0) -> VerificationReport:
    """
    Run every oracle comparison.

    Pure states are checked for 2 <= N <= max_n on the vector path (capped at
    MAX_VECTOR_QUBITS); mixtures for N in {4, 6, 8} up to MAX_MATRIX_QUBITS at five
    log-spaced times in [10^−2, 1]/γ.

    Returns:
        VerificationReport: All check families with their first failure, if any.
    """
    if max_n < 2:
        raise DomainError(f"max-n must be at least 2, got {max_n}")
    report = VerificationReport()
    vector_n = min(max_n, MAX_VECTOR_QUBITS)
    if max_n > MAX_VECTOR_QUBITS:
        report.warnings.append(f"vector paths capped at N={MAX_VECTOR_QUBITS}")
    if max_n > MAX_MATRIX_QUBITS:
        report.warnings.append(f"matrix paths capped at N={MAX_MATRIX_QUBITS}; pure checks above it use vectors only")
    for message in report.warnings:
        logger.warning(message)
    sizes = [N for N in MIXTURE_SIZES if N <= min(max_n, MAX_MATRIX_QUBITS)]

    spectra = CheckResult("pure reduced spectra", SPECTRUM_TOL)
    correlations = CheckResult("pure S^(k→N)", ENTROPY_TOL)
    populations = CheckResult("populations vs expm", POPULATION_TOL)
    entropies = CheckResult("mixture entropies", ENTROPY_TOL)
    with SpinnerHandler("Verifying against the dense oracle", logger=logger) as spinner:
        _check_pure(vector_n, spectra, correlations, spinner)
        _check_mixtures(sizes, gamma, populations, entropies, spinner)
    report.checks.extend([spectra, correlations, populations, entropies])
    logger.info(f"Verification {'passed' if report.passed else 'FAILED'} "
                f"({sum(c.cases for c in report.checks)} comparisons)")
    return report


def cmd_verify(config: RunConfig) -> VerificationReport:
    return run_verification(max_n=config.max_n, gamma=config.gamma)
