"""
superradiance.py – superradiant decay of N two-level atoms prepared in |N, N⟩.

The state stays diagonal in the Dicke basis and its populations follow the rate
equations

    dP_n/dt = ν_{n+1} P_{n+1} − ν_n P_n,    ν_n = 2γ n (N − n + 1),

with radiated power 𝒫 = 2γω Σ n (1 + N − n) P_n. This module integrates the
rates, evaluates correlation time series and locates the times of maximum power,
correlation and entropy.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy import sparse
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from dicke_gmc.errors import DomainError, IntegrationError
from dicke_gmc.utils.parallel import parallel_map
from .dicke_core import DickeLabel, DickeMixture, mixture_entropy, reduced_entropy
from .gmc import MONOTONE_TOL, gmc_higher_mixture

RTOL = 1e-10
ATOL = 1e-14
CONSERVATION_TOL = 1e-9     # |Σ P − 1| allowed on emitted samples
POSITIVITY_TOL = 1e-10      # negative population allowed before clamping
DEFAULT_WINDOW = 10.0       # in units of 1/γ
DEFAULT_SAMPLES = 400
SCAN_POINTS = 200
SCAN_START = 1e-3           # in units of 1/(Nγ)
TIME_XTOL = 1e-6
EXPLICIT_STEP_BUDGET = 20_000
EXPLICIT_STABILITY = 6.0    # DOP853 stability interval on the negative real axis
METHODS = ("auto", "DOP853", "RK45", "Radau", "LSODA")


@dataclass(frozen=True)
class RateModel:
    """
    Parameters of the superradiant rate equations.

    Args:
        N (int): Number of atoms.
        gamma (float): Spontaneous decay rate γ.
        omega_freq (float): Transition frequency ω; only scales the power.
    """
    N: int
    gamma: float = 1.0
    omega_freq: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"RateModel needs N >= 1, got {self.N}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if not self.omega_freq > 0:
            raise DomainError(f"omega_freq must be positive, got {self.omega_freq}")

    @property
    def rates(self) -> np.ndarray:
        """ν_0..ν_N (ν_0 = 0)."""
        n = np.arange(self.N + 1, dtype=float)
        return 2.0 * self.gamma * n * (self.N - n + 1.0)

    @property
    def initial_populations(self) -> np.ndarray:
        p = np.zeros(self.N + 1)
        p[-1] = 1.0
        return p

    def generator(self) -> sparse.csc_matrix:
        """Sparse (N+1)×(N+1) rate matrix G with dP/dt = G P."""
        nu = self.rates
        return sparse.diags([-nu, nu[1:]], [0, 1], format="csc")

    def pick_method(self, duration: float, method: str = "auto") -> str:
        """Explicit DOP853 while its stability budget allows, Radau beyond."""
        if method not in METHODS:
            raise DomainError(f"unknown integrator {method!r}, choose from {METHODS}")
        if method != "auto":
            return method
        steps = float(np.max(self.rates)) * duration / EXPLICIT_STABILITY
        return "DOP853" if steps <= EXPLICIT_STEP_BUDGET else "Radau"


def rate_derivative(model: RateModel, P: Sequence[float]) -> np.ndarray:
    """
    dP/dt of the rate equations, with ν_{N+1} = 0.

    Raises:
        DomainError: If P does not have N+1 entries.
    """
    p = np.asarray(P, dtype=float)
    if p.shape != (model.N + 1,):
        raise DomainError(f"population vector of length {p.size}, model needs {model.N + 1}")
    flow = model.rates * p
    derivative = -flow
    derivative[:-1] += flow[1:]
    return derivative


def radiated_power(model: RateModel, P) -> np.ndarray:
    """
    𝒫 = 2γω Σ_n n (1 + N − n) P_n for one population vector or a matrix of rows.
    """
    p = np.asarray(P, dtype=float)
    n = np.arange(model.N + 1, dtype=float)
    weights = (2.0 * model.gamma * model.omega_freq) * n * (1.0 + model.N - n)
    power = p @ weights
    return float(power) if np.ndim(power) == 0 else power


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Sampled solution of the rate equations.

    Args:
        model (RateModel): The model integrated.
        times (np.ndarray): Strictly increasing sample times.
        populations (np.ndarray): [time × (N+1)] populations, renormalised.
        power (np.ndarray): Radiated power at each sample.
        conservation_error (float): max |Σ P − 1| before renormalisation.
        min_population (float): Smallest population before clamping.
    """
    model: RateModel
    times: np.ndarray
    populations: np.ndarray
    power: np.ndarray
    conservation_error: float = 0.0
    min_population: float = 0.0

    def mixture(self, index: int) -> DickeMixture:
        return DickeMixture(self.populations[index])

    @property
    def gamma_t(self) -> np.ndarray:
        return self.times * self.model.gamma


def sample_times(model: RateModel, t_end: float, samples: int, spacing: str = "log",
                 t_start: Optional[float] = None) -> np.ndarray:
    """
    Sample grid on [0, t_end].

    Log spacing puts t = 0 first and samples−1 geometric points from t_start
    (default 10^−3/(Nγ)) to t_end; linear spacing is an even grid from 0.
    """
    if not t_end > 0:
        raise DomainError(f"t_end must be positive, got {t_end}")
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    if spacing == "linear":
        return np.linspace(0.0, t_end, samples)
    if spacing != "log":
        raise DomainError(f"unknown spacing {spacing!r}")
    start = SCAN_START / (model.N * model.gamma) if t_start is None else t_start
    start = min(start, t_end / 10.0)
    if samples == 2:
        return np.array([0.0, t_end])
    return np.concatenate([[0.0], np.geomspace(start, t_end, samples - 1)])


def integrate_populations(model: RateModel, times: Sequence[float], initial: Optional[np.ndarray] = None,
                          t0: float = 0.0, method: str = "auto") -> np.ndarray:
    """
    Raw populations at the requested times, integrated from (t0, initial).

    Args:
        model (RateModel): The model.
        times (Sequence[float]): Non-decreasing times >= t0.
        initial (Optional[np.ndarray]): State at t0, default |N, N⟩.
        t0 (float): Start time.
        method (str): Integrator, see METHODS.

    Returns:
        np.ndarray: [len(times) × (N+1)] populations, not renormalised.

    Raises:
        IntegrationError: If the integrator fails.
    """
    t_eval = np.asarray(times, dtype=float)
    y0 = model.initial_populations if initial is None else np.asarray(initial, dtype=float)
    if t_eval.size == 0:
        return np.empty((0, model.N + 1))
    if np.any(np.diff(t_eval) < 0) or t_eval[0] < t0:
        raise DomainError("sample times must be non-decreasing and start at or after t0")
    t_end = float(t_eval[-1])
    if t_end == t0:
        return np.tile(y0, (t_eval.size, 1))
    chosen = model.pick_method(t_end - t0, method)
    options = {}
    if chosen == "Radau":
        options["jac"] = model.generator()
    elif chosen == "LSODA":
        options["jac"] = model.generator().toarray()
    solution = solve_ivp(lambda _t, y: rate_derivative(model, y), (t0, t_end), y0, method=chosen,
                         t_eval=t_eval, rtol=RTOL, atol=ATOL, **options)
    if not solution.success:
        failed_at = float(solution.t[-1]) if solution.t.size else t0
        logger.error(f"{chosen} failed for N={model.N} at t={failed_at!r}: {solution.message}")
        raise IntegrationError(solution.message, time=failed_at)
    logger.debug(f"{chosen} integrated N={model.N} on [{t0:.6g}, {t_end:.6g}] in {solution.nfev} evaluations")
    return solution.y.T


def _normalise_rows(raw: np.ndarray) -> Tuple[np.ndarray, float, float]:
    totals = raw.sum(axis=1)
    conservation_error = float(np.max(np.abs(totals - 1.0))) if raw.size else 0.0
    min_population = float(np.min(raw)) if raw.size else 0.0
    rows = [DickeMixture(row, tolerance=CONSERVATION_TOL, negative_tol=POSITIVITY_TOL).populations
            for row in raw]
    return np.array(rows).reshape(raw.shape), conservation_error, min_population


def evolve(model: RateModel, t_end: float = DEFAULT_WINDOW, samples: int = DEFAULT_SAMPLES,
           spacing: str = "log", method: str = "auto",
           times: Optional[Sequence[float]] = None) -> Trajectory:
    """
    Integrate from P_N(0) = 1 and sample the populations and the radiated power.

    Args:
        model (RateModel): The model.
        t_end (float): End of the window (same time units as 1/γ).
        samples (int): Number of samples, >= 2.
        spacing (str): "log" (default) or "linear".
        method (str): Integrator, see METHODS.
        times (Optional[Sequence[float]]): Explicit grid overriding t_end/samples.

    Returns:
        Trajectory: Renormalised samples with conservation diagnostics.
    """
    grid = sample_times(model, t_end, samples, spacing) if times is None else np.asarray(times, dtype=float)
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise DomainError("sample times must be strictly increasing")
    raw = integrate_populations(model, grid, method=method)
    populations, conservation_error, min_population = _normalise_rows(raw)
    logger.info(f"Trajectory for N={model.N}: {grid.size} samples up to t={grid[-1]:.6g}")
    return Trajectory(model=model, times=grid, populations=populations,
                      power=np.asarray(radiated_power(model, populations), dtype=float),
                      conservation_error=conservation_error, min_population=min_population)


def population_snapshot(model: RateModel, t: float, method: str = "auto") -> DickeMixture:
    """The mixture ρ_N(t), integrated from |N, N⟩."""
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    if t == 0:
        return DickeMixture.pure(DickeLabel(model.N, model.N))
    raw = integrate_populations(model, [t], method=method)[0]
    return DickeMixture(raw, tolerance=CONSERVATION_TOL, negative_tol=POSITIVITY_TOL)


@dataclass(frozen=True, eq=False)
class GmcSeries:
    """
    Correlations along a trajectory.

    Args:
        times (np.ndarray): Sample times.
        ks (Tuple[int, ...]): Cluster sizes evaluated (requested set closed under k → k−1).
        requested (Tuple[int, ...]): Cluster sizes asked for.
        s_higher (np.ndarray): [time × len(ks)] S^(k→N), clamped at 0 within round-off.
        s_k (np.ndarray): [time × len(ks)] S^k, NaN where k−1 was not evaluated.
    """
    times: np.ndarray
    ks: Tuple[int, ...]
    requested: Tuple[int, ...]
    s_higher: np.ndarray
    s_k: np.ndarray

    def column(self, k: int) -> int:
        return self.ks.index(k)

    def monotonicity_violations(self, tol: float = MONOTONE_TOL) -> List[Tuple[int, int]]:
        """
        (sample index, k) pairs where S^(k→N) exceeds the value at the next
        smaller evaluated cluster size by more than tol.
        """
        rises = np.argwhere(self.s_higher[:, 1:] > self.s_higher[:, :-1] + tol)
        return [(int(i), self.ks[int(col) + 1]) for i, col in rises]


def close_cluster_set(k_list: Iterable[int], N: int) -> Tuple[int, ...]:
    """Add k−1 for every requested k >= 2 so that S^k is available."""
    requested = sorted(set(int(k) for k in k_list))
    for k in requested:
        if not 1 <= k <= N:
            raise DomainError(f"cluster size k={k} outside 1..{N}")
    closed = set(requested)
    closed.update(k - 1 for k in requested if k >= 2)
    return tuple(sorted(closed))


def gmc_time_series(model: RateModel, trajectory: Trajectory, k_list: Iterable[int],
                    threads: Optional[int] = None) -> GmcSeries:
    """
    S^(k→N)(t) and S^k(t) at every sample of a trajectory.

    Samples are evaluated concurrently; each sample is independent, so the result
    does not depend on scheduling.
    """
    requested = tuple(sorted(set(int(k) for k in k_list)))
    ks = close_cluster_set(requested, model.N)

    def evaluate(index: int) -> List[float]:
        mix = trajectory.mixture(index)
        clusters = set()
        for k in ks:
            if k < model.N:
                clusters.add(k)
                if model.N % k:
                    clusters.add(model.N % k)
        entropies = {c: reduced_entropy(mix, c) for c in sorted(clusters)}
        global_entropy = mixture_entropy(mix)
        values = []
        for k in ks:
            if k == model.N:
                values.append(0.0)
                continue
            value = (model.N // k) * entropies[k] - global_entropy
            if model.N % k:
                value += entropies[model.N % k]
            values.append(value)
        return values

    raw = np.array(parallel_map(evaluate, range(len(trajectory.times)), threads), dtype=float)
    raw = raw.reshape(len(trajectory.times), len(ks))
    worst = float(np.min(raw)) if raw.size else 0.0
    if worst < -1e-9:
        logger.warning(f"S^(k→N)(t) reached {worst!r} for N={model.N}")
    s_higher = np.where((raw < 0.0) & (raw >= -1e-9), 0.0, raw)
    s_k = np.full_like(s_higher, np.nan)
    for col, k in enumerate(ks):
        if k >= 2 and (k - 1) in ks:
            s_k[:, col] = s_higher[:, ks.index(k - 1)] - s_higher[:, col]
    series = GmcSeries(times=trajectory.times, ks=ks, requested=requested, s_higher=s_higher, s_k=s_k)
    violations = series.monotonicity_violations()
    if violations:
        index, k = violations[0]
        logger.warning(f"S^(k→N)(t) not monotone in k for N={model.N}: {len(violations)} rises, "
                       f"first at t={trajectory.times[index]!r}, k={k}")
    logger.info(f"Correlation series for N={model.N}: {len(ks)} cluster sizes × {len(trajectory.times)} samples")
    return series


@dataclass(frozen=True)
class Quantity:
    """
    A scalar observable of ρ_N(t) whose time of maximum can be located.

    Args:
        kind (str): "power", "entropy" or "gmc_higher".
        k (int): Cluster size for "gmc_higher".
    """
    kind: str
    k: int = 2

    def __post_init__(self):
        if self.kind not in ("power", "entropy", "gmc_higher"):
            raise DomainError(f"unknown quantity {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "Quantity":
        """Parse "power", "entropy", "gmc_higher:3" or "gmc_higher(3)"."""
        name = text.strip().lower()
        if name in ("power", "entropy"):
            return cls(name)
        for opener, closer in ((":", ""), ("(", ")")):
            head, sep, tail = name.partition(opener)
            if sep and head == "gmc_higher" and tail.endswith(closer):
                digits = tail[:len(tail) - len(closer)] if closer else tail
                if digits.isdigit():
                    return cls("gmc_higher", int(digits))
        raise DomainError(f"cannot parse quantity {text!r}")

    def label(self) -> str:
        return f"gmc_higher:{self.k}" if self.kind == "gmc_higher" else self.kind

    def evaluate(self, model: RateModel, populations: np.ndarray) -> float:
        if self.kind == "power":
            return float(radiated_power(model, populations))
        mix = DickeMixture(populations, tolerance=CONSERVATION_TOL, negative_tol=POSITIVITY_TOL)
        if self.kind == "entropy":
            return mixture_entropy(mix)
        return gmc_higher_mixture(mix, self.k)


@dataclass(frozen=True)
class ExtremumReport:
    """
    Location of a maximum in time.

    Args:
        t_max (float): Time of the maximum.
        value (float): Quantity at t_max.
        bracket (Tuple[float, float]): Coarse bracket (t_lo, t_hi).
        refinement_iterations (int): Golden-section iterations spent.
        at_boundary (bool): True when the coarse maximum sits on the scan edge.
        flat_width (float): Width of the coarse plateau tied with the maximum.
    """
    t_max: float
    value: float
    bracket: Tuple[float, float]
    refinement_iterations: int
    at_boundary: bool = False
    flat_width: float = 0.0


def _plateau_width(grid: np.ndarray, values: np.ndarray, index: int) -> float:
    peak = values[index]
    tied = np.abs(values - peak) <= 1e-12 * max(1.0, abs(peak))
    lo = hi = index
    while lo > 0 and tied[lo - 1]:
        lo -= 1
    while hi < len(values) - 1 and tied[hi + 1]:
        hi += 1
    return float(grid[hi] - grid[lo])


def find_time_of_max(model: RateModel, quantity: Quantity, scan_points: int = SCAN_POINTS,
                     xtol: float = TIME_XTOL, method: str = "auto") -> ExtremumReport:
    """
    Time at which quantity(ρ_N(t)) peaks.

    A coarse scan over scan_points log-spaced times in [10^−3/(Nγ), 10/γ] brackets
    the leftmost maximum; golden-section search then refines it to relative
    tolerance xtol. Every evaluation integrates a fresh segment from the left end of
    the bracket, so no interpolation error enters the refinement.

    Returns:
        ExtremumReport: Refined maximum, or the coarse one flagged at_boundary
        when the quantity is monotone over the scan.
    """
    grid = np.geomspace(SCAN_START / (model.N * model.gamma), DEFAULT_WINDOW / model.gamma, scan_points)
    raw = integrate_populations(model, grid, method=method)
    values = np.array([quantity.evaluate(model, row) for row in raw])
    index = int(np.argmax(values))
    width = _plateau_width(grid, values, index)
    if index == 0 or index == len(grid) - 1:
        logger.warning(f"{quantity.label()} for N={model.N} peaks on the scan boundary")
        lo, hi = grid[max(index - 1, 0)], grid[min(index + 1, len(grid) - 1)]
        return ExtremumReport(t_max=float(grid[index]), value=float(values[index]), bracket=(float(lo), float(hi)),
                              refinement_iterations=0, at_boundary=True, flat_width=width)

    t_lo, t_mid, t_hi = (float(t) for t in grid[index - 1:index + 2])
    start = raw[index - 1]

    def objective(t: float) -> float:
        state = integrate_populations(model, [t], initial=start, t0=t_lo, method=method)[0]
        return -quantity.evaluate(model, state)

    try:
        result = minimize_scalar(objective, bracket=(t_lo, t_mid, t_hi), method="golden",
                                 options={"xtol": xtol})
    except ValueError:
        # Ties at grid resolution break the strict bracket; fall back to a bounded search.
        logger.debug(f"Golden bracket rejected for {quantity.label()}, using bounded search")
        result = minimize_scalar(objective, bounds=(t_lo, t_hi), method="bounded",
                                 options={"xatol": xtol * t_mid})
    t_max = float(min(max(result.x, np.nextafter(t_lo, t_hi)), np.nextafter(t_hi, t_lo)))
    value = -float(result.fun)
    iterations = int(getattr(result, "nit", 0) or 0)
    logger.info(f"{quantity.label()} for N={model.N} peaks at t={t_max:.10g} ({iterations} iterations)")
    return ExtremumReport(t_max=t_max, value=value, bracket=(t_lo, t_hi),
                          refinement_iterations=iterations, flat_width=width)


def correlation_cluster(N: int) -> int:
    """Cluster size whose S^(k→N)(t) defines t^C_max: 2, or 1 when N <= 2."""
    return 2 if N > 2 else 1


def time_of_max_correlation(model: RateModel, method: str = "auto") -> ExtremumReport:
    """t^C_max, the argmax of S^(k→N)(t) with k = correlation_cluster(N)."""
    return find_time_of_max(model, Quantity("gmc_higher", correlation_cluster(model.N)), method=method)
