"""
oracle.py – dense reference implementation in the full 2^N-dimensional space.
Builds Dicke states qubit by qubit, traces out qubits by index contraction and
takes entropies from eigendecompositions. Deliberately naive and independent of
the closed forms in dicke_gmc.core; only usable for small N.
"""
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np
from scipy.linalg import expm
from scipy.special import xlogy

from dicke_gmc.errors import CapacityError, DomainError

MAX_VECTOR_QUBITS = 14
MAX_MATRIX_QUBITS = 10
MAX_RATE_LEVELS = 64
HERMITIAN_TOL = 1e-10
EIGEN_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class DenseState:
    """
    A state of N qubits as an amplitude vector or a density matrix.

    Qubit 0 is the most significant bit of the computational-basis index.

    Args:
        data (np.ndarray): Length 2^N vector or 2^N × 2^N matrix.
        n_qubits (int): N.
    """
    data: np.ndarray
    n_qubits: int

    def __post_init__(self):
        dim = 2 ** self.n_qubits
        if self.data.shape not in ((dim,), (dim, dim)):
            raise DomainError(f"shape {self.data.shape} does not describe {self.n_qubits} qubits")

    @property
    def is_vector(self) -> bool:
        return self.data.ndim == 1

    def density_matrix(self) -> np.ndarray:
        if not self.is_vector:
            return self.data
        if self.n_qubits > MAX_MATRIX_QUBITS:
            raise CapacityError(f"{self.n_qubits}-qubit density matrix exceeds guard {MAX_MATRIX_QUBITS}")
        return np.outer(self.data, self.data.conj())


def _guard(n_qubits: int, limit: int, what: str) -> None:
    if n_qubits > limit:
        raise CapacityError(f"{what} on {n_qubits} qubits exceeds guard of {limit}")


def dense_dicke_state(label) -> DenseState:
    """
    |N, n_e⟩ as an amplitude vector: 1/√C(N, n_e) on every basis string of weight n_e.

    Args:
        label (DickeLabel): The state.

    Raises:
        CapacityError: If N > MAX_VECTOR_QUBITS.
    """
    return DenseState(_dicke_amplitudes(label.N, label.n_e), label.N)


def _dicke_amplitudes(N: int, n_e: int) -> np.ndarray:
    _guard(N, MAX_VECTOR_QUBITS, "Dicke vector")
    if not 0 <= n_e <= N:
        raise DomainError(f"need 0 <= n_e <= N, got N={N}, n_e={n_e}")
    amplitude = 1.0 / math.sqrt(math.comb(N, n_e))
    psi = np.zeros(2 ** N, dtype=complex)
    for excited in combinations(range(N), n_e):
        index = sum(1 << (N - 1 - q) for q in excited)
        psi[index] = amplitude
    return psi


def dense_mixture_state(populations: Sequence[float]) -> DenseState:
    """Σ_n P_n |N,n⟩⟨N,n| as a density matrix."""
    p = np.asarray(populations, dtype=float)
    N = p.size - 1
    _guard(N, MAX_MATRIX_QUBITS, "Dicke mixture matrix")
    rho = np.zeros((2 ** N, 2 ** N), dtype=complex)
    for n, weight in enumerate(p):
        if weight != 0.0:
            psi = _dicke_amplitudes(N, n)
            rho += weight * np.outer(psi, psi.conj())
    return DenseState(rho, N)


def _keep_list(n_qubits: int, keep: Union[int, Sequence[int]]) -> list:
    kept = list(range(keep)) if isinstance(keep, (int, np.integer)) else sorted(int(q) for q in keep)
    if not 1 <= len(kept) < n_qubits or len(set(kept)) != len(kept) \
            or any(not 0 <= q < n_qubits for q in kept):
        raise DomainError(f"cannot keep qubits {keep} of {n_qubits}")
    return kept


def _split(state: DenseState, kept: list) -> np.ndarray:
    """Amplitudes reshaped to (kept, traced) after moving the kept qubits first."""
    N = state.n_qubits
    traced = [q for q in range(N) if q not in kept]
    tensor = state.data.reshape([2] * N).transpose(kept + traced)
    return tensor.reshape(2 ** len(kept), 2 ** len(traced))


def dense_partial_trace(state: DenseState, keep: Union[int, Sequence[int]]) -> DenseState:
    """
    Reduced density matrix on the kept qubits (the first k when keep is an int).

    Raises:
        CapacityError: If the kept register exceeds MAX_MATRIX_QUBITS, or a
            density-matrix input exceeds it.
    """
    kept = _keep_list(state.n_qubits, keep)
    _guard(len(kept), MAX_MATRIX_QUBITS, "reduced matrix")
    if state.is_vector:
        amplitudes = _split(state, kept)
        return DenseState(amplitudes @ amplitudes.conj().T, len(kept))
    N = state.n_qubits
    _guard(N, MAX_MATRIX_QUBITS, "density-matrix partial trace")
    traced = [q for q in range(N) if q not in kept]
    order = kept + traced + [q + N for q in kept] + [q + N for q in traced]
    dk, dt = 2 ** len(kept), 2 ** len(traced)
    tensor = state.data.reshape([2] * (2 * N)).transpose(order).reshape(dk, dt, dk, dt)
    return DenseState(np.einsum("ajbj->ab", tensor), len(kept))


def dense_reduced_eigenvalues(state: DenseState, keep: Union[int, Sequence[int]]) -> np.ndarray:
    """
    Nonzero-capable eigenvalues of the reduced state on the kept qubits.

    For pure vectors the smaller Gram matrix of the (kept, traced) split is
    diagonalised, which shares its nonzero spectrum with the reduced state.
    """
    kept = _keep_list(state.n_qubits, keep)
    if state.is_vector:
        amplitudes = _split(state, kept)
        if amplitudes.shape[0] > amplitudes.shape[1]:
            amplitudes = amplitudes.T
        gram = amplitudes @ amplitudes.conj().T
        return np.linalg.eigvalsh(gram)
    return np.linalg.eigvalsh(dense_partial_trace(state, kept).data)


def _entropy_of_eigenvalues(eigenvalues: np.ndarray) -> float:
    lam = np.where(eigenvalues < EIGEN_FLOOR, 0.0, eigenvalues)
    return float(-np.sum(xlogy(lam, lam)))


def eigen_entropy(matrix: Union[DenseState, np.ndarray]) -> float:
    """
    von Neumann entropy −Σ λ ln λ from an eigendecomposition, eigenvalues below
    1e−12 treated as 0.

    Raises:
        DomainError: If the matrix is not Hermitian within 1e−10.
    """
    rho = matrix.density_matrix() if isinstance(matrix, DenseState) else np.asarray(matrix)
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise DomainError("eigen_entropy needs a Hermitian matrix")
    return _entropy_of_eigenvalues(np.linalg.eigvalsh(rho))


def oracle_gmc_higher(state: DenseState, k: int, global_entropy: Optional[float] = None) -> float:
    """
    ⌊N/k⌋ S(ρ_k) − S(ρ_N) + S(ρ_{N mod k}) from dense partial traces.

    Args:
        state (DenseState): Pure vector or density matrix.
        k (int): Largest cluster size.
        global_entropy (Optional[float]): Precomputed S(ρ_N), reused across k.
    """
    N = state.n_qubits
    if not 1 <= k <= N:
        raise DomainError(f"cluster size k={k} outside 1..{N}")
    if k == N:
        return 0.0
    if global_entropy is None:
        global_entropy = 0.0 if state.is_vector else eigen_entropy(state)
    value = (N // k) * _entropy_of_eigenvalues(dense_reduced_eigenvalues(state, k)) - global_entropy
    if N % k:
        value += _entropy_of_eigenvalues(dense_reduced_eigenvalues(state, N % k))
    return value


def rate_matrix_exponential(model, t: float, initial: Optional[np.ndarray] = None) -> np.ndarray:
    """
    exp(G t) P(0) with the dense (N+1)×(N+1) generator and scipy's
    scaling-and-squaring Padé expm.

    Args:
        model (RateModel): Rate model, N <= 64.
        t (float): Time.
        initial (Optional[np.ndarray]): P(0), default |N, N⟩.
    """
    N = model.N
    _guard(N, MAX_RATE_LEVELS, "rate-matrix exponential")
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    n = np.arange(N + 1, dtype=float)
    nu = 2.0 * model.gamma * n * (N - n + 1.0)
    generator = np.diag(-nu) + np.diag(nu[1:], k=1)
    p0 = np.zeros(N + 1)
    p0[-1] = 1.0
    if initial is not None:
        p0 = np.asarray(initial, dtype=float)
    return expm(generator * t) @ p0
