"""
dicke-gmc Main Entry Point

This module provides the command-line interface for dicke-gmc. It uses Typer for
subcommand management and rich for console output. Each subcommand builds a
RunConfig from its flags, runs the matching service and prints a summary table;
the data files it writes carry everything the figures need.
Logging is set up at startup, and failures map to exit status 1.
"""
import math
import sys
from pathlib import Path
from typing import Callable, Optional

import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from .errors import DickeGmcError, VerificationError
from .logger import setup_logger
from .services import run_config as rc
from .services.commands import (
    CommandResult,
    cmd_evolve,
    cmd_gmc_pure,
    cmd_snapshot,
    cmd_times,
    cmd_weaving,
)
from .services.status import StatusReporter
from .services.verify import cmd_verify, format_case
from .utils import load_settings

console = Console()

app = typer.Typer(add_completion=False, help="""
dicke-gmc: genuine multipartite correlations of Dicke states and superradiant decay.

Subcommands:\n
  gmc-pure   Correlation profiles of pure Dicke states |N, n_e⟩.\n
  weaving    Weaving of Dicke states over N and excitation families.\n
  evolve     Populations, radiated power and correlations along the decay.\n
  times      Times of maximum power, correlation and entropy.\n
  snapshot   The decaying state at its time of maximum correlation.\n
  verify     Cross-check the closed forms against the dense oracle.\n
  status     Versions, thread cap and resources.\n

Use -h or --help with any command to see more details.\n
""")

OUTPUT_OPTION = typer.Option(Path("."), "--output", "-o", help="Output directory")
FORMAT_OPTION = typer.Option("csv", "--format", "-f", help="Output format: csv or json")
THREADS_OPTION = typer.Option(None, "--threads", help="Worker cap (default: DICKE_GMC_THREADS, 0 = auto)")
GAMMA_OPTION = typer.Option(1.0, "--gamma", help="Decay rate γ")
OMEGA_OPTION = typer.Option(1.0, "--omega", help="Transition frequency ω (power scale)")
METHOD_OPTION = typer.Option("auto", "--method", help="Integrator: auto, DOP853, RK45, Radau or LSODA")


@app.callback(invoke_without_command=True)
def main_callback(
    ctx: typer.Context,
    bits: bool = typer.Option(False, "--bits", help="Show console summaries in bits (files stay in nats)"),
    help: bool = typer.Option(False, "--help", "-h", is_eager=True, help="Show this message and exit."),
):
    settings = load_settings()
    setup_logger(settings.log_dir, "dicke_gmc", settings.log_level)
    ctx.obj = {"bits": bits, "settings": settings}
    if help or ctx.invoked_subcommand is None:
        print_rich_help()
        raise typer.Exit()
    logger.info(f"dicke-gmc {ctx.invoked_subcommand} started.")


def print_rich_help():
    console.print("\n[bold magenta]" + "=" * 60 + "[/bold magenta]")
    console.print("[bold cyan]dicke-gmc[/bold cyan]")
    console.print("[bold magenta]" + "=" * 60 + "[/bold magenta]\n")
    console.print("[green]Genuine multipartite correlations of Dicke states and superradiant decay.[/green]\n")
    console.print("[yellow bold]Pure states:[/yellow bold]")
    console.print("[green]  gmc-pure   --n 1000 --ne 1,5,50,500 [--mod-zero][/green]")
    console.print("[green]  weaving    --n 4..100 --ne 1,N/2 [--weights k-minus-1|uniform|delta:l|file:PATH][/green]")
    console.print("[yellow bold]Superradiance:[/yellow bold]")
    console.print("[blue]  evolve     --n 7 [--k all] [--t-end 10] [--samples 400] [--linear][/blue]")
    console.print("[blue]  times      --n 10,20,50,100,200,500,1000[/blue]")
    console.print("[blue]  snapshot   --n 1000[/blue]")
    console.print("[yellow bold]Checks:[/yellow bold]")
    console.print("[cyan]  verify     --max-n 10[/cyan]")
    console.print("[cyan]  status[/cyan]\n")
    console.print("[cyan]Common flags: --output/-o DIR, --format csv|json, --threads N, --gamma γ; "
                  "global --bits before the subcommand.[/cyan]")
    console.print("[cyan]Use -h or --help with any command to see more details.[/cyan]")
    console.print("[bold magenta]" + "=" * 60 + "[/bold magenta]\n")


def _parse(parser: Callable, text: str, flag: str):
    try:
        return parser(text)
    except DickeGmcError as e:
        raise typer.BadParameter(str(e), param_hint=flag) from e


def _command_line(ctx: typer.Context) -> str:
    """The invocation as recorded in file headers, rebuilt from the parsed flags."""
    parts = ["dicke-gmc"]
    if ctx.obj and ctx.obj.get("bits"):
        parts.append("--bits")
    parts.append(ctx.info_name)
    for param in ctx.command.params:
        value = ctx.params.get(param.name)
        if value is None or value is False:
            continue
        flag = max(param.opts, key=len)
        parts.append(flag if value is True else f"{flag} {value}")
    return " ".join(parts)


def _config(ctx: typer.Context, **fields) -> rc.RunConfig:
    try:
        return rc.RunConfig(subcommand=ctx.info_name, command_line=_command_line(ctx), **fields)
    except DickeGmcError as e:
        raise typer.BadParameter(str(e)) from e


def _run(service: Callable, config: rc.RunConfig):
    logger.info(f"Running {config.subcommand}: {config.command_line}")
    try:
        return service(config)
    except DickeGmcError as e:
        logger.error(f"{config.subcommand} failed: {e}")
        typer.secho(f"💥 Error: {e}", fg=typer.colors.RED, err=True)
        raise typer.Exit(1)


def _print_summary(ctx: typer.Context, title: str, result: CommandResult) -> None:
    bits = bool(ctx.obj and ctx.obj.get("bits"))
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right", style="green")
    for key, value in result.summary.items():
        if key in result.entropic:
            scaled = value / math.log(2) if bits else value
            table.add_row(key, f"{scaled:.10g} {'bits' if bits else 'nats'}")
        else:
            table.add_row(key, f"{value:.10g}")
    console.print(table)
    for path in result.files:
        console.print(f"[blue]wrote[/blue] {path}", soft_wrap=True)


@app.command("gmc-pure")
def gmc_pure(
    ctx: typer.Context,
    n: str = typer.Option(..., "--n", help="N or N-list, e.g. 1000 or 4..20"),
    ne: str = typer.Option(..., "--ne", help="Excitations: counts and fractions, e.g. 1,5,N/2"),
    mod_zero: bool = typer.Option(False, "--mod-zero", help="Only rows with N mod k = 0"),
    output: Path = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    gamma: float = GAMMA_OPTION,
):
    """
    Correlation profiles S^(k→N) and S^k of pure Dicke states.
    """
    config = _config(ctx, n_values=tuple(_parse(rc.parse_int_list, n, "--n")),
                     excitations=tuple(_parse(rc.parse_excitations, ne, "--ne")),
                     mod_zero=mod_zero, output=output, fmt=fmt, threads=threads, gamma=gamma)
    _print_summary(ctx, "Dicke-state profiles", _run(cmd_gmc_pure, config))


@app.command()
def weaving(
    ctx: typer.Context,
    n: str = typer.Option("4..100", "--n", help="N-list"),
    ne: str = typer.Option("1,2,5,10", "--ne", help="Excitation family: counts and fractions of N"),
    weights: str = typer.Option("k-minus-1", "--weights", help="k-minus-1, uniform, delta:l or file:PATH"),
    output: Path = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    gamma: float = GAMMA_OPTION,
):
    """
    Weaving of Dicke states across N and excitation families.
    """
    _parse(rc.parse_weights, weights, "--weights")
    config = _config(ctx, n_values=tuple(_parse(rc.parse_int_list, n, "--n")),
                     excitations=tuple(_parse(rc.parse_excitations, ne, "--ne")),
                     weights=weights, output=output, fmt=fmt, threads=threads, gamma=gamma)
    _print_summary(ctx, "Weaving", _run(cmd_weaving, config))


@app.command()
def evolve(
    ctx: typer.Context,
    n: int = typer.Option(..., "--n", min=1, help="Number of qubits N"),
    k: str = typer.Option("all", "--k", help="Cluster sizes for gmc_t.csv, or 'all'"),
    t_end: float = typer.Option(10.0, "--t-end", help="End of the window in units of 1/γ"),
    samples: int = typer.Option(400, "--samples", help="Number of time samples"),
    linear: bool = typer.Option(False, "--linear", help="Linear instead of log-spaced times"),
    method: str = METHOD_OPTION,
    omega: float = OMEGA_OPTION,
    output: Path = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    gamma: float = GAMMA_OPTION,
):
    """
    Superradiant decay from |N, N⟩: populations, power and correlations in time.
    """
    k_list = _parse(rc.parse_k_list, k, "--k")
    config = _config(ctx, n_values=(n,), k_list=tuple(k_list) if k_list else None, t_end=t_end,
                     samples=samples, spacing="linear" if linear else "log", method=method,
                     omega_freq=omega, output=output, fmt=fmt, threads=threads, gamma=gamma)
    _print_summary(ctx, f"Decay of N={n}", _run(cmd_evolve, config))


@app.command()
def times(
    ctx: typer.Context,
    n: str = typer.Option("10,20,50,100,200,500,1000", "--n", help="N-list"),
    method: str = METHOD_OPTION,
    omega: float = OMEGA_OPTION,
    output: Path = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    gamma: float = GAMMA_OPTION,
):
    """
    Times of maximum radiated power, correlation and entropy, in units of 1/γ.
    """
    config = _config(ctx, n_values=tuple(_parse(rc.parse_int_list, n, "--n")), method=method,
                     omega_freq=omega, output=output, fmt=fmt, threads=threads, gamma=gamma)
    _print_summary(ctx, "Times of maximum", _run(cmd_times, config))


@app.command()
def snapshot(
    ctx: typer.Context,
    n: int = typer.Option(..., "--n", min=2, help="Number of qubits N"),
    method: str = METHOD_OPTION,
    omega: float = OMEGA_OPTION,
    output: Path = OUTPUT_OPTION,
    fmt: str = FORMAT_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    gamma: float = GAMMA_OPTION,
):
    """
    Populations and correlation profile at the time of maximum correlation.
    """
    config = _config(ctx, n_values=(n,), method=method, omega_freq=omega, output=output, fmt=fmt,
                     threads=threads, gamma=gamma)
    _print_summary(ctx, f"Snapshot of N={n}", _run(cmd_snapshot, config))


@app.command()
def verify(
    ctx: typer.Context,
    max_n: int = typer.Option(10, "--max-n", help="Largest N for the pure-state checks"),
    gamma: float = GAMMA_OPTION,
):
    """
    Cross-check spectra, correlations and populations against the dense oracle.
    """
    config = _config(ctx, max_n=max_n, gamma=gamma)
    report = _run(cmd_verify, config)
    table = Table(title="Oracle verification")
    for column in ("Check", "Cases", "Max error", "Tolerance", "Result"):
        table.add_column(column)
    for check in report.checks:
        table.add_row(check.name, str(check.cases), f"{check.max_error:.3e}", f"{check.tolerance:.0e}",
                      "[green]pass[/green]" if check.passed else "[red]FAIL[/red]")
    console.print(table)
    for message in report.warnings:
        typer.secho(f"capacity warning: {message}", fg=typer.colors.YELLOW, err=True)
    if not report.passed:
        case = report.first_failure
        error = VerificationError(f"verification failed at {format_case(case)}", case=case)
        logger.error(str(error))
        typer.secho(f"💥 {error}", fg=typer.colors.RED, err=True)
        raise typer.Exit(1)
    typer.secho("✅ all oracle checks passed", fg=typer.colors.GREEN)


@app.command()
def status(ctx: typer.Context):
    """
    Versions, resolved thread cap, CPU and memory figures, log directory.
    """
    report = StatusReporter(ctx.obj["settings"], logger).report()
    table = Table(title="dicke-gmc status")
    table.add_column("Item", style="cyan")
    table.add_column("Value", style="green")
    for name, version in report["versions"].items():
        table.add_row(name, version)
    for name, value in report["device"].items():
        table.add_row(name, str(value))
    table.add_row("log_dir", report["log_dir"])
    table.add_row("log_level", report["log_level"])
    console.print(table)


def main():
    if len(sys.argv) == 1:
        print_rich_help()
        sys.exit(0)
    app()


if __name__ == "__main__":
    main()
