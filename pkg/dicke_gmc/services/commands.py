"""
commands.py – subcommand implementations for dicke-gmc.
Each cmd_* function takes a RunConfig, computes, writes its data files and
returns their paths plus a small summary for the console. No plotting: the files
are the figure data.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
from loguru import logger

from dicke_gmc.core.dicke_core import DickeLabel
from dicke_gmc.core.gmc import divisor_profile, gmc_profile, weaving
from dicke_gmc.core.superradiance import (
    Quantity,
    RateModel,
    evolve,
    find_time_of_max,
    gmc_time_series,
    population_snapshot,
    time_of_max_correlation,
)
from dicke_gmc.errors import DomainError
from dicke_gmc.utils.spinner_handler import SpinnerHandler
from .run_config import RunConfig, parse_weights
from .writers import write_table


@dataclass
class CommandResult:
    """
    Outcome of a subcommand.

    Args:
        files (List[Path]): Files written.
        summary (Dict[str, float]): Headline numbers for the console.
        entropic (List[str]): Summary keys measured in nats (rescaled by --bits).
    """
    files: List[Path] = field(default_factory=list)
    summary: Dict[str, float] = field(default_factory=dict)
    entropic: List[str] = field(default_factory=list)

    def add(self, key: str, value: float, entropic: bool = False) -> None:
        self.summary[key] = float(value)
        if entropic:
            self.entropic.append(key)


def _resolved_excitations(config: RunConfig, N: int) -> Tuple[List[int], List[str]]:
    """n_e values that fit N, plus comment lines for rounded or skipped specs."""
    resolved, notes = [], []
    for spec in config.excitations:
        n_e, rounded = spec.resolve(N)
        if n_e is None:
            logger.warning(f"n_e={spec.text} exceeds N={N}; skipped")
            notes.append(f"skipped: N={N} n_e={spec.text} exceeds N")
            continue
        if rounded:
            logger.warning(f"n_e={spec.text} rounded down to {n_e} for N={N}")
            notes.append(f"n_e rounded down: N={N} {spec.text} -> {n_e}")
        if n_e not in resolved:
            resolved.append(n_e)
    return resolved, notes


def cmd_gmc_pure(config: RunConfig) -> CommandResult:
    """
    Correlation profiles of pure Dicke states: one gmc_pure_N{N}_ne{n_e}.csv per
    (N, n_e) with columns k,s_higher,s_k.
    """
    result = CommandResult()
    with SpinnerHandler("Computing Dicke-state profiles", logger=logger) as spinner:
        for N in config.n_values:
            excitations, notes = _resolved_excitations(config, N)
            for n_e in excitations:
                spinner.step(f"|{N},{n_e}⟩")
                profile = gmc_profile(DickeLabel(N, n_e), threads=config.threads).clamped()
                comments = list(notes)
                if config.mod_zero:
                    rows = divisor_profile(profile)
                    comments.append("rows restricted to k dividing N; s_k is the drop from the previous divisor")
                else:
                    rows = [(k, profile.higher(k), profile.genuine(k) if k >= 2 else None)
                            for k in range(1, N + 1)]
                result.files.append(write_table(config, f"gmc_pure_N{N}_ne{n_e}.csv",
                                                ("k", "s_higher", "s_k"), rows, comments))
                result.add(f"T |{N},{n_e}⟩", profile.total, entropic=True)
    logger.info(f"gmc-pure wrote {len(result.files)} files")
    return result


def cmd_weaving(config: RunConfig) -> CommandResult:
    """Weaving W for every (N, n_e) pair: weaving.csv with columns N,ne,W."""
    scheme_for = parse_weights(config.weights)
    rows, comments = [], [f"weights: {config.weights}"]
    with SpinnerHandler("Computing weaving", logger=logger) as spinner:
        for N in config.n_values:
            excitations, notes = _resolved_excitations(config, N)
            comments.extend(notes)
            for n_e in excitations:
                spinner.step(f"|{N},{n_e}⟩")
                profile = gmc_profile(DickeLabel(N, n_e), threads=config.threads).clamped()
                rows.append((N, n_e, weaving(profile, scheme_for(N))))
    result = CommandResult(files=[write_table(config, "weaving.csv", ("N", "ne", "W"), rows, comments)])
    for N, n_e, w in rows[-4:]:
        result.add(f"W |{N},{n_e}⟩", w, entropic=True)
    return result


def cmd_evolve(config: RunConfig) -> CommandResult:
    """
    Superradiant trajectory: populations.csv, power.csv and gmc_t.csv, times as γt.
    """
    model = RateModel(config.N, gamma=config.gamma, omega_freq=config.omega_freq)
    with SpinnerHandler(f"Integrating N={model.N}", logger=logger) as spinner:
        trajectory = evolve(model, t_end=config.t_end / model.gamma, samples=config.samples,
                            spacing=config.spacing, method=config.method)
        spinner.step("correlations")
        k_list = config.k_list or range(1, model.N + 1)
        series = gmc_time_series(model, trajectory, k_list, threads=config.threads)
    gamma_t = trajectory.gamma_t
    peak = int(np.argmax(trajectory.power))
    result = CommandResult()
    result.files.append(write_table(config, "populations.csv",
                                    ["gamma_t"] + [f"P_{n}" for n in range(model.N + 1)],
                                    ([t, *row] for t, row in zip(gamma_t, trajectory.populations)),
                                    [f"conservation error: {trajectory.conservation_error!r}"]))
    result.files.append(write_table(config, "power.csv", ("gamma_t", "power"), zip(gamma_t, trajectory.power),
                                    [f"omega: {config.omega_freq!r}"]))
    gmc_rows = [(t, k, series.s_higher[i, col], series.s_k[i, col])
                for i, t in enumerate(gamma_t) for col, k in enumerate(series.ks) if k in series.requested]
    result.files.append(write_table(config, "gmc_t.csv", ("gamma_t", "k", "s_higher", "s_k"), gmc_rows))
    result.add("γt at sampled power maximum", gamma_t[peak])
    result.add("power maximum", trajectory.power[peak])
    result.add("conservation error", trajectory.conservation_error)
    return result


def cmd_times(config: RunConfig) -> CommandResult:
    """times.csv: N,t_power_max,t_corr_max,t_entropy_max in units of 1/γ."""
    rows = []
    with SpinnerHandler("Locating maxima", logger=logger) as spinner:
        for N in config.n_values:
            spinner.step(f"N={N}")
            model = RateModel(N, gamma=config.gamma, omega_freq=config.omega_freq)
            power = find_time_of_max(model, Quantity("power"), method=config.method)
            corr = time_of_max_correlation(model, method=config.method)
            entropy = find_time_of_max(model, Quantity("entropy"), method=config.method)
            rows.append((N, *(report.t_max * model.gamma for report in (power, corr, entropy))))
    result = CommandResult(files=[write_table(config, "times.csv",
                                              ("N", "t_power_max", "t_corr_max", "t_entropy_max"), rows)])
    for N, _, t_corr, _ in rows:
        result.add(f"γ t_C (N={N})", t_corr)
    return result


def cmd_snapshot(config: RunConfig) -> CommandResult:
    """
    State at t^C_max: snapshot_populations.csv (ne,P) and snapshot_gmc.csv comparing
    the mixture with |N,⌊N/2⌋⟩ and |N,1⟩.
    """
    model = RateModel(config.N, gamma=config.gamma, omega_freq=config.omega_freq)
    if model.N < 2:
        raise DomainError("snapshot needs N >= 2")
    with SpinnerHandler(f"Snapshot at maximum correlation, N={model.N}", logger=logger) as spinner:
        report = time_of_max_correlation(model, method=config.method)
        mixture = population_snapshot(model, report.t_max, method=config.method)
        spinner.step("profiles")
        profiles = [gmc_profile(source, threads=config.threads).clamped()
                    for source in (mixture, DickeLabel(model.N, model.N // 2), DickeLabel(model.N, 1))]
    comment = f"gamma_t_corr_max: {report.t_max * model.gamma!r}"
    result = CommandResult()
    result.files.append(write_table(config, "snapshot_populations.csv", ("ne", "P"),
                                    enumerate(mixture.populations), [comment]))
    rows = [(k, *(p.higher(k) for p in profiles), *(p.genuine(k) if k >= 2 else None for p in profiles))
            for k in range(1, model.N + 1)]
    result.files.append(write_table(config, "snapshot_gmc.csv",
                                    ("k", "s_higher_mix", "s_higher_half", "s_higher_one",
                                     "s_k_mix", "s_k_half", "s_k_one"),
                                    rows, [comment]))
    result.add("γ t_C", report.t_max * model.gamma)
    result.add("most populated n_e", int(np.argmax(mixture.populations)))
    result.add("T mixture", profiles[0].total, entropic=True)
    return result
