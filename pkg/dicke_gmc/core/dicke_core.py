"""
dicke_core.py – pure Dicke states, incoherent Dicke mixtures and their reduced states.
Reduced states of permutation-invariant states are diagonal in the Dicke basis of
the cluster, so they are stored and manipulated by spectrum only.
"""
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from loguru import logger

from dicke_gmc.errors import DomainError
from .stable_math import (
    ROUNDOFF_EPS,
    flush_exp,
    h,
    hypergeometric_spectrum,
    log_binomial,
    stable_sum,
)

NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class DickeLabel:
    """
    The pure Dicke state |N, n_e⟩.

    Args:
        N (int): Number of qubits, N >= 1.
        n_e (int): Number of excitations, 0 <= n_e <= N.
    """
    N: int
    n_e: int

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"Dicke state needs N >= 1, got {self.N}")
        if not 0 <= self.n_e <= self.N:
            raise DomainError(f"Dicke state needs 0 <= n_e <= N, got |{self.N},{self.n_e}⟩")

    def mirrored(self) -> "DickeLabel":
        """|N, N − n_e⟩, which carries the same correlations."""
        return DickeLabel(self.N, self.N - self.n_e)

    def __str__(self):
        return f"|{self.N},{self.n_e}⟩"


@dataclass(frozen=True, eq=False)
class DickeMixture:
    """
    A state diagonal in the Dicke basis, ρ_N = Σ P_j |N,j⟩⟨N,j|.

    Populations in [-negative_tol, 0) are clamped to 0 and the vector is
    renormalised when the total is within tolerance of 1; anything further off
    is rejected. The stored array is read-only.

    Args:
        populations (np.ndarray): P_0..P_N.
        tolerance (float): Allowed deviation of Σ P_j from 1.
        negative_tol (float): Allowed negative round-off per entry.
    """
    populations: np.ndarray
    tolerance: float = field(default=NORMALIZATION_TOL, repr=False)
    negative_tol: float = field(default=ROUNDOFF_EPS, repr=False)

    def __post_init__(self):
        p = np.array(self.populations, dtype=float).reshape(-1)
        if p.size < 2:
            raise DomainError(f"a mixture needs N >= 1, got {p.size} populations")
        if not np.all(np.isfinite(p)):
            raise DomainError("populations must be finite")
        if np.any(p < -self.negative_tol):
            raise DomainError(f"population {p.min()!r} below -{self.negative_tol}")
        p = np.where(p < 0.0, 0.0, p)
        total = stable_sum(p)
        if abs(total - 1.0) > self.tolerance:
            raise DomainError(f"populations sum to {total!r}, not 1 within {self.tolerance}")
        if total != 1.0:
            p = p / total
        p.setflags(write=False)
        object.__setattr__(self, "populations", p)

    @property
    def N(self) -> int:
        return self.populations.size - 1

    @classmethod
    def pure(cls, label: DickeLabel) -> "DickeMixture":
        """The single-term mixture |N,n_e⟩⟨N,n_e|."""
        p = np.zeros(label.N + 1)
        p[label.n_e] = 1.0
        return cls(p)


@dataclass(frozen=True, eq=False)
class ReducedSpectrum:
    """
    Eigenvalues of a k-qubit reduced state, indexed by local excitation i = 0..k.

    Args:
        k (int): Cluster size.
        weights (np.ndarray): Non-negative weights summing to 1.
    """
    k: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.size != self.k + 1:
            raise DomainError(f"spectrum of a {self.k}-cluster needs {self.k + 1} weights, got {w.size}")
        if np.any(w < -ROUNDOFF_EPS):
            raise DomainError(f"negative weight {w.min()!r} in reduced spectrum")
        w = np.where(w < 0.0, 0.0, w)
        total = stable_sum(w)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DomainError(f"reduced spectrum sums to {total!r}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def reversed(self) -> "ReducedSpectrum":
        return ReducedSpectrum(self.k, self.weights[::-1])


DickeSource = Union[DickeLabel, DickeMixture]


def _check_cluster(N: int, k: int) -> None:
    if not 1 <= k <= N:
        raise DomainError(f"cluster size k={k} outside 1..{N}")


def reduced_spectrum_pure(state: DickeLabel, k: int) -> ReducedSpectrum:
    """
    Spectrum of Tr_{N−k} |N,n_e⟩⟨N,n_e|: hypergeometric weights over i = 0..k.

    Args:
        state (DickeLabel): The pure Dicke state.
        k (int): Cluster size, 1 <= k <= N.

    Returns:
        ReducedSpectrum: Weights C(k,i) C(N−k,n_e−i) / C(N,n_e).
    """
    _check_cluster(state.N, k)
    if k == state.N:
        weights = np.zeros(k + 1)
        weights[state.n_e] = 1.0
        return ReducedSpectrum(k, weights)
    return ReducedSpectrum(k, hypergeometric_spectrum(state.N, state.n_e, k))


def reduced_spectrum_mixture(mix: DickeMixture, k: int) -> ReducedSpectrum:
    """
    Spectrum of the k-qubit reduced state of a Dicke mixture.

    weights[j] = Σ_l C(k,j) C(N−k,l) / C(N,j+l) · P_{j+l}, each coefficient
    formed in log space, exponentiated, and the sum over ascending l accumulated
    with compensation once it exceeds PLAIN_SUM_LIMIT terms.

    Args:
        mix (DickeMixture): The mixture.
        k (int): Cluster size, 1 <= k <= N.

    Returns:
        ReducedSpectrum: The k+1 weights.
    """
    N = mix.N
    _check_cluster(N, k)
    j = np.arange(k + 1)
    l = np.arange(N - k + 1)
    total = j[:, None] + l[None, :]
    log_row = log_binomial(N, np.arange(N + 1))
    log_coeff = (log_binomial(k, j)[:, None] + log_binomial(N - k, l)[None, :]) - log_row[total]
    terms = flush_exp(log_coeff) * mix.populations[total]
    return ReducedSpectrum(k, stable_sum(terms, axis=1))


def entropy_of_spectrum(spec: ReducedSpectrum) -> float:
    """von Neumann entropy −Σ h(w_i) of a reduced spectrum, in nats."""
    return max(0.0, -float(stable_sum(h(spec.weights))))


def mixture_entropy(mix: DickeMixture) -> float:
    """von Neumann entropy −Σ h(P_j) of a Dicke mixture, in nats."""
    return max(0.0, -float(stable_sum(h(mix.populations))))


def reduced_entropy(source: DickeSource, k: int) -> float:
    """
    S(ρ_k) for a pure Dicke state or a mixture; S(ρ_N) of a pure state is 0.

    Args:
        source: DickeLabel or DickeMixture.
        k (int): Cluster size, 1 <= k <= N.

    Returns:
        float: Entropy in nats.
    """
    if isinstance(source, DickeLabel):
        return entropy_of_spectrum(reduced_spectrum_pure(source, k))
    if isinstance(source, DickeMixture):
        if k == source.N:
            return mixture_entropy(source)
        return entropy_of_spectrum(reduced_spectrum_mixture(source, k))
    logger.error(f"Unsupported source type {type(source).__name__}")
    raise DomainError(f"expected DickeLabel or DickeMixture, got {type(source).__name__}")
