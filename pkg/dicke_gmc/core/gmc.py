"""
gmc.py – genuine multipartite correlation measures for Dicke states and mixtures.

For permutation-invariant states the closest product of clusters of size at most k
is the homogeneous partition (⌊N/k⌋ clusters of size k plus one of size N mod k),
which turns the relative-entropy minimisation into

    S^(k→N) = ⌊N/k⌋ S(ρ_k) − S(ρ_N) + (1 − δ_{N mod k,0}) S(ρ_{N mod k}).

Genuine k-partite correlations are S^k = S^(k−1→N) − S^(k→N), total correlations
T = S^(1→N), and weaving is a weighted sum of either.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from dicke_gmc.errors import ConsistencyError, DomainError
from dicke_gmc.utils.parallel import parallel_map
from .dicke_core import DickeLabel, DickeMixture, DickeSource, reduced_entropy
from .stable_math import compensated_sum

NEGATIVE_TOL = 1e-9       # S^(k→N) round-off band clamped at report time
MONOTONE_TOL = 1e-9
WEAVING_TOL = 1e-9


def _check_source(source) -> int:
    if isinstance(source, (DickeLabel, DickeMixture)):
        return source.N
    raise DomainError(f"expected DickeLabel or DickeMixture, got {type(source).__name__}")


def _assemble(N: int, k: int, entropies: Dict[int, float], global_entropy: float) -> float:
    if k == N:
        return 0.0
    remainder = N % k
    value = (N // k) * entropies[k] - global_entropy
    if remainder:
        value += entropies[remainder]
    return value


def _needed_clusters(N: int, k: int) -> List[int]:
    clusters = [k] if k < N else []
    if k < N and N % k:
        clusters.append(N % k)
    return clusters


def gmc_higher_pure(state: DickeLabel, k: int) -> float:
    """
    S^(k→N) of the pure Dicke state |N, n_e⟩ (S(ρ_N) = 0).

    Args:
        state (DickeLabel): The state.
        k (int): Largest cluster size, 1 <= k <= N.

    Returns:
        float: Correlations of order higher than k, in nats.
    """
    if not 1 <= k <= state.N:
        raise DomainError(f"cluster size k={k} outside 1..{state.N}")
    entropies = {c: reduced_entropy(state, c) for c in _needed_clusters(state.N, k)}
    return _assemble(state.N, k, entropies, 0.0)


def gmc_higher_mixture(mix: DickeMixture, k: int) -> float:
    """
    S^(k→N) of a Dicke mixture; raw value, may dip below 0 by round-off.

    Args:
        mix (DickeMixture): The mixture.
        k (int): Largest cluster size, 1 <= k <= N.

    Returns:
        float: Correlations of order higher than k, in nats.
    """
    if not 1 <= k <= mix.N:
        raise DomainError(f"cluster size k={k} outside 1..{mix.N}")
    entropies = {c: reduced_entropy(mix, c) for c in _needed_clusters(mix.N, k)}
    global_entropy = reduced_entropy(mix, mix.N) if k < mix.N else 0.0
    return _assemble(mix.N, k, entropies, global_entropy)


def gmc_higher(source: DickeSource, k: int) -> float:
    """Dispatch to gmc_higher_pure or gmc_higher_mixture."""
    _check_source(source)
    if isinstance(source, DickeLabel):
        return gmc_higher_pure(source, k)
    return gmc_higher_mixture(source, k)


def cluster_entropies(source: DickeSource, clusters: Sequence[int],
                      threads: Optional[int] = None) -> Dict[int, float]:
    """
    S(ρ_c) for each requested cluster size, evaluated concurrently.

    Args:
        source: DickeLabel or DickeMixture.
        clusters (Sequence[int]): Cluster sizes in 1..N.
        threads (Optional[int]): Worker cap.

    Returns:
        Dict[int, float]: Entropy per cluster size.
    """
    sizes = sorted(set(clusters))
    values = parallel_map(lambda c: reduced_entropy(source, c), sizes, threads)
    return dict(zip(sizes, values))


@dataclass(frozen=True, eq=False)
class GmcProfile:
    """
    S^(k→N) for k = 1..N, S^k for k = 2..N and the total correlations.

    Arrays are zero-based: s_higher[k−1] holds S^(k→N), s_k[k−2] holds S^k.

    Args:
        N (int): Number of qubits.
        s_higher (np.ndarray): Length N.
        s_k (np.ndarray): Length N−1.
        total (float): T = S^(1→N).
    """
    N: int
    s_higher: np.ndarray
    s_k: np.ndarray
    total: float

    @classmethod
    def from_higher(cls, s_higher: Sequence[float]) -> "GmcProfile":
        values = np.array(s_higher, dtype=float)
        values[-1] = 0.0
        genuine = values[:-1] - values[1:]
        values.setflags(write=False)
        genuine.setflags(write=False)
        return cls(N=values.size, s_higher=values, s_k=genuine, total=float(values[0]))

    def higher(self, k: int) -> float:
        """S^(k→N) for 1 <= k <= N."""
        if not 1 <= k <= self.N:
            raise DomainError(f"k={k} outside 1..{self.N}")
        return float(self.s_higher[k - 1])

    def genuine(self, k: int) -> float:
        """S^k for 2 <= k <= N."""
        if not 2 <= k <= self.N:
            raise DomainError(f"k={k} outside 2..{self.N}")
        return float(self.s_k[k - 2])

    def monotonicity_violations(self, tol: float = MONOTONE_TOL) -> List[int]:
        """Cluster sizes k where S^(k→N) exceeds S^(k−1→N) by more than tol."""
        rises = np.flatnonzero(self.s_higher[1:] > self.s_higher[:-1] + tol)
        return [int(i) + 2 for i in rises]

    def clamped(self) -> "GmcProfile":
        """
        Report-time profile: values in [−1e−9, 0) become 0, S^k recomputed.

        Raises:
            ConsistencyError: If any S^(k→N) is below −1e−9.
        """
        worst = float(np.min(self.s_higher))
        if worst < -NEGATIVE_TOL:
            k = int(np.argmin(self.s_higher)) + 1
            logger.error(f"S^({k}→{self.N}) = {worst!r} is negative beyond round-off")
            raise ConsistencyError(f"S^({k}→{self.N}) = {worst!r} below -{NEGATIVE_TOL}")
        return GmcProfile.from_higher(np.where(self.s_higher < 0.0, 0.0, self.s_higher))


def gmc_profile(source: DickeSource, threads: Optional[int] = None) -> GmcProfile:
    """
    Full correlation profile of a pure Dicke state or a mixture.

    Every S(ρ_k) is computed once (concurrently over k) and reused for the
    remainder clusters, so the profile costs one reduced entropy per k.

    Args:
        source: DickeLabel or DickeMixture.
        threads (Optional[int]): Worker cap.

    Returns:
        GmcProfile: Raw (unclamped) profile; monotonicity violations are logged.
    """
    N = _check_source(source)
    entropies = cluster_entropies(source, range(1, N), threads) if N > 1 else {}
    global_entropy = reduced_entropy(source, N) if isinstance(source, DickeMixture) else 0.0
    s_higher = [_assemble(N, k, entropies, global_entropy) for k in range(1, N + 1)]
    profile = GmcProfile.from_higher(s_higher)
    violations = profile.monotonicity_violations()
    if violations:
        logger.warning(f"S^(k→N) increases with k at k={violations[:10]} (N={N})")
    logger.debug(f"Profile assembled for N={N}: T={profile.total:.6g}")
    return profile


def total_correlations(source: DickeSource) -> float:
    """T = S^(1→N) = N S(ρ_1) − S(ρ_N)."""
    return gmc_higher(source, 1)


def divisor_profile(profile: GmcProfile) -> List[Tuple[int, float, Optional[float]]]:
    """
    Rows restricted to divisors of N.

    The genuine column is the drop S^(k'→N) − S^(k→N) from the previous divisor k'
    of N, i.e. the correlations gained by moving between consecutive homogeneous
    partitions. None for k = 1.

    Returns:
        List[Tuple[int, float, Optional[float]]]: (k, S^(k→N), drop).
    """
    rows = []
    previous = None
    for k in range(1, profile.N + 1):
        if profile.N % k:
            continue
        value = profile.higher(k)
        rows.append((k, value, None if previous is None else previous - value))
        previous = value
    return rows


@dataclass(frozen=True, eq=False)
class WeightScheme:
    """
    Weaving weights: Ω_k for k = 1..N−1 and the derived ω_k = Σ_{i<k} Ω_i, k = 2..N.

    Args:
        big_omega (np.ndarray): Ω_1..Ω_{N−1}.
        name (str): Label written to output headers.
    """
    big_omega: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        omega = np.array(self.big_omega, dtype=float).reshape(-1)
        if not np.all(np.isfinite(omega)):
            raise DomainError("weights must be finite")
        omega.setflags(write=False)
        object.__setattr__(self, "big_omega", omega)
        if np.any(self.small_omega < -WEAVING_TOL):
            raise DomainError(f"weaving weights ω_k must be non-negative ({self.name})")

    @property
    def N(self) -> int:
        return self.big_omega.size + 1

    @property
    def small_omega(self) -> np.ndarray:
        """ω_2..ω_N."""
        return np.cumsum(self.big_omega)

    @classmethod
    def from_small_omega(cls, small_omega: Sequence[float], name: str = "custom") -> "WeightScheme":
        omega = np.asarray(small_omega, dtype=float).reshape(-1)
        big = np.diff(np.concatenate([[0.0], omega]))
        return cls(big, name=name)

    @classmethod
    def k_minus_one(cls, N: int) -> "WeightScheme":
        """ω_k = k − 1, equivalently Ω_k = 1."""
        return cls(np.ones(max(N - 1, 0)), name="k-minus-1")

    @classmethod
    def uniform(cls, N: int) -> "WeightScheme":
        """ω_k = 1: weaving equals the total correlations."""
        return cls.from_small_omega(np.ones(max(N - 1, 0)), name="uniform")

    @classmethod
    def delta(cls, N: int, l: int) -> "WeightScheme":
        """ω_k = δ_kl: weaving equals S^l."""
        omega = np.zeros(max(N - 1, 0))
        if 2 <= l <= N:
            omega[l - 2] = 1.0
        return cls.from_small_omega(omega, name=f"delta:{l}")

    @classmethod
    def from_file(cls, path: Union[str, Path], N: int) -> "WeightScheme":
        """
        Read ω_2, ω_3, ... one per line ('#' starts a comment) and keep the first N−1.

        Raises:
            DomainError: If the file holds fewer than N−1 values.
        """
        values = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            text = line.split("#", 1)[0].strip()
            if text:
                values.append(float(text.split(",")[-1]))
        if len(values) < N - 1:
            raise DomainError(f"{path} holds {len(values)} weights, N={N} needs {N - 1}")
        return cls.from_small_omega(values[:max(N - 1, 0)], name=f"file:{Path(path).name}")


def weaving(profile: GmcProfile, weights: WeightScheme) -> float:
    """
    Weaving W = Σ_{k=2}^{N} ω_k S^k = Σ_{k=1}^{N−1} Ω_k S^(k→N).

    Both forms are evaluated with compensated summation and must agree to
    WEAVING_TOL relative to the magnitude of the terms.

    Raises:
        DomainError: If the weights are sized for another N.
        ConsistencyError: If the two forms disagree.
    """
    if weights.N != profile.N:
        raise DomainError(f"weights sized for N={weights.N}, profile has N={profile.N}")
    if profile.N == 1:
        return 0.0
    genuine_terms = weights.small_omega * profile.s_k
    higher_terms = weights.big_omega * profile.s_higher[:-1]
    by_genuine = float(compensated_sum(genuine_terms))
    by_higher = float(compensated_sum(higher_terms))
    scale = max(1.0, float(np.sum(np.abs(genuine_terms))), float(np.sum(np.abs(higher_terms))))
    if abs(by_genuine - by_higher) > WEAVING_TOL * scale:
        logger.error(f"Weaving forms disagree: {by_genuine!r} vs {by_higher!r}")
        raise ConsistencyError(f"weaving forms disagree: {by_genuine!r} vs {by_higher!r}")
    return by_genuine
