"""
stable_math.py – numerically stable scalar kernels.
Log-gamma binomials, the entropy summand h(x), log-space hypergeometric weights
and compensated summation. Natural logarithms throughout; every kernel accepts
scalars or numpy arrays and returns a float for scalar input.
"""
import math
from typing import Union

import numpy as np
from scipy.special import gammaln, xlogy

from dicke_gmc.errors import DomainError

ArrayLike = Union[float, int, np.ndarray]

NEG_INFINITY = -math.inf        # log(0)
ROUNDOFF_EPS = 1e-12            # tolerated negative round-off in probabilities
UNDERFLOW_FLUSH = 1e-300        # weights below this are flushed to exactly 0
PLAIN_SUM_LIMIT = 64            # longer accumulations are compensated


def _as_output(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


def log_binomial(n: ArrayLike, m: ArrayLike):
    """
    Natural log of the binomial coefficient C(n, m) via log-gamma.

    C(n, m) = exp[lnΓ(n+1) − lnΓ(m+1) − lnΓ(n−m+1)]. The two subtracted terms are
    added first so that ln C(n, m) and ln C(n, n−m) are bitwise identical.

    Args:
        n: Non-negative integer(s).
        m: Integer(s); outside [0, n] the coefficient is zero.

    Returns:
        float or np.ndarray: ln C(n, m), NEG_INFINITY where m is out of range.
    """
    n_arr = np.asarray(n, dtype=float)
    m_arr = np.asarray(m, dtype=float)
    if np.any(n_arr < 0):
        raise DomainError(f"log_binomial needs n >= 0, got {n}")
    inside = (m_arr >= 0) & (m_arr <= n_arr)
    m_safe = np.where(inside, m_arr, 0.0)
    value = gammaln(n_arr + 1.0) - (gammaln(m_safe + 1.0) + gammaln(n_arr - m_safe + 1.0))
    return _as_output(np.where(inside, value, NEG_INFINITY))


def h(x: ArrayLike):
    """
    Entropy summand h(x) = x ln x with h(0) = 0.

    Args:
        x: Probabilities; values in [-ROUNDOFF_EPS, 0] count as 0.

    Returns:
        float or np.ndarray: x ln x.

    Raises:
        DomainError: If any x is below -ROUNDOFF_EPS.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -ROUNDOFF_EPS):
        raise DomainError(f"h(x) needs x >= -{ROUNDOFF_EPS}, got min {np.min(arr)!r}")
    arr = np.where(arr > 0.0, arr, 0.0)
    return _as_output(xlogy(arr, arr))


def _check_hypergeometric(N: int, n_e: int, k: int) -> None:
    if not 0 <= n_e <= N:
        raise DomainError(f"need 0 <= n_e <= N, got N={N}, n_e={n_e}")
    if not 1 <= k <= N:
        raise DomainError(f"need 1 <= k <= N, got N={N}, k={k}")


def hypergeometric_log_weights(N: int, n_e: int, k: int) -> np.ndarray:
    """Log-weights ln[C(k,i) C(N−k, n_e−i) / C(N, n_e)] for i = 0..k."""
    _check_hypergeometric(N, n_e, k)
    i = np.arange(k + 1)
    return log_binomial(k, i) + log_binomial(N - k, n_e - i) - log_binomial(N, n_e)


def flush_exp(log_values: ArrayLike):
    """exp() with results below UNDERFLOW_FLUSH flushed to exactly 0."""
    values = np.exp(np.asarray(log_values, dtype=float))
    return _as_output(np.where(values < UNDERFLOW_FLUSH, 0.0, values))


def hypergeometric_weight(N: int, n_e: int, k: int, i: int) -> float:
    """
    Weight C(k,i) C(N−k, n_e−i) / C(N, n_e) of local excitation i in a k-cluster.

    Args:
        N (int): Number of qubits.
        n_e (int): Number of excitations, 0 <= n_e <= N.
        k (int): Cluster size, 1 <= k <= N.
        i (int): Local excitation number; outside 0..k the weight is 0.

    Returns:
        float: The weight in [0, 1].
    """
    _check_hypergeometric(N, n_e, k)
    log_weight = log_binomial(k, i) + log_binomial(N - k, n_e - i) - log_binomial(N, n_e)
    return flush_exp(log_weight)


def hypergeometric_spectrum(N: int, n_e: int, k: int) -> np.ndarray:
    """All k+1 hypergeometric weights of |N, n_e⟩ restricted to k qubits."""
    return flush_exp(hypergeometric_log_weights(N, n_e, k))


def compensated_sum(terms, axis=None):
    """
    Sum with error-free TwoSum transformations on a pairwise tree.

    Each level adds neighbours and keeps the exact rounding error of every
    addition; the errors are accumulated separately and folded in at the end.
    The work is vectorised, so reducing one axis of a matrix costs O(log L)
    numpy passes.

    Args:
        terms: Sequence or array of finite reals.
        axis (Optional[int]): Axis to reduce; None flattens.

    Returns:
        float or np.ndarray: The compensated sum (0.0 for no terms).
    """
    values = np.asarray(terms, dtype=float)
    if axis is None:
        values = values.reshape(-1)
        axis = 0
    values = np.moveaxis(values, axis, -1)
    if values.shape[-1] == 0:
        return _as_output(np.zeros(values.shape[:-1]))
    error = np.zeros(values.shape[:-1])
    while values.shape[-1] > 1:
        if values.shape[-1] % 2:
            pad = np.zeros(values.shape[:-1] + (1,))
            values = np.concatenate([values, pad], axis=-1)
        a = values[..., 0::2]
        b = values[..., 1::2]
        s = a + b
        b_virtual = s - a
        error = error + np.sum((a - (s - b_virtual)) + (b - b_virtual), axis=-1)
        values = s
    return _as_output(values[..., 0] + error)


def stable_sum(terms, axis=None):
    """Plain summation for short accumulations, compensated above PLAIN_SUM_LIMIT terms."""
    values = np.asarray(terms, dtype=float)
    length = values.size if axis is None else values.shape[axis]
    if length > PLAIN_SUM_LIMIT:
        return compensated_sum(values, axis=axis)
    return _as_output(np.sum(values, axis=axis))
