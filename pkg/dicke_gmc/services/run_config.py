"""
run_config.py – run configuration shared by the subcommands.
Parses the compact list syntaxes accepted on the command line (N lists, excitation
specs, cluster lists, weight schemes) into typed values.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Tuple

from dicke_gmc.core.gmc import WeightScheme
from dicke_gmc.core.superradiance import DEFAULT_SAMPLES, DEFAULT_WINDOW
from dicke_gmc.errors import DomainError

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ExcitationSpec:
    """
    Number of excitations: a fixed count or a fraction of N.

    Args:
        fixed (Optional[int]): Fixed n_e.
        fraction (Optional[Fraction]): n_e = ⌊fraction · N⌋.
        text (str): The token as given.
    """
    fixed: Optional[int] = None
    fraction: Optional[Fraction] = None
    text: str = ""

    def resolve(self, N: int) -> Tuple[Optional[int], bool]:
        """
        n_e for a given N.

        Returns:
            Tuple[Optional[int], bool]: (n_e or None when it exceeds N, rounded flag).
        """
        if self.fixed is not None:
            return (self.fixed if self.fixed <= N else None), False
        exact = self.fraction * N
        n_e = exact.numerator // exact.denominator
        return n_e, exact.denominator != 1


def parse_excitation(token: str) -> ExcitationSpec:
    """'5' → fixed; 'N/2', 'N/10' or '0.5' → fraction of N."""
    text = token.strip()
    if not text:
        raise DomainError("empty excitation token")
    upper = text.upper()
    if upper.startswith("N/"):
        denominator = upper[2:]
        if not denominator.isdigit() or int(denominator) == 0:
            raise DomainError(f"bad excitation fraction {token!r}")
        return ExcitationSpec(fraction=Fraction(1, int(denominator)), text=text)
    if upper.isdigit():
        return ExcitationSpec(fixed=int(upper), text=text)
    try:
        value = Fraction(text)
    except ValueError:
        raise DomainError(f"bad excitation token {token!r}") from None
    if not 0 <= value <= 1:
        raise DomainError(f"excitation fraction {token!r} outside [0, 1]")
    return ExcitationSpec(fraction=value, text=text)


def parse_excitations(text: str) -> List[ExcitationSpec]:
    return [parse_excitation(token) for token in text.split(",") if token.strip()]


def parse_int_list(text: str, minimum: int = 1) -> List[int]:
    """
    Comma list of integers and inclusive ranges 'a..b' or 'a..b:step'.

    Returns:
        List[int]: Values in first-seen order without duplicates.
    """
    values: List[int] = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        try:
            if ".." in token:
                span, _, step = token.partition(":")
                lo, hi = (int(part) for part in span.split("..", 1))
                values.extend(range(lo, hi + 1, int(step) if step else 1))
            else:
                values.append(int(token))
        except ValueError:
            raise DomainError(f"bad integer list item {token!r}") from None
    if not values:
        raise DomainError(f"empty integer list {text!r}")
    if min(values) < minimum:
        raise DomainError(f"values in {text!r} must be >= {minimum}")
    return list(dict.fromkeys(values))


def parse_k_list(text: str) -> Optional[List[int]]:
    """'all' → None, otherwise an integer list."""
    return None if text.strip().lower() == "all" else parse_int_list(text)


def parse_weights(text: str) -> Callable[[int], WeightScheme]:
    """
    Weight-scheme selector: 'k-minus-1' (default), 'uniform', 'delta:l', 'file:PATH'
    or a bare path to a weights file.

    Returns:
        Callable[[int], WeightScheme]: Factory building the scheme for a given N.
    """
    name = text.strip()
    lowered = name.lower()
    if lowered in ("k-minus-1", "k-1", "default"):
        return WeightScheme.k_minus_one
    if lowered == "uniform":
        return WeightScheme.uniform
    if lowered.startswith("delta:"):
        level = lowered.split(":", 1)[1]
        if not level.isdigit() or int(level) < 2:
            raise DomainError(f"delta weights need an integer l >= 2, got {text!r}")
        return lambda N: WeightScheme.delta(N, int(level))
    path = Path(name[5:] if lowered.startswith("file:") else name)
    if not path.is_file():
        raise DomainError(f"unknown weight scheme or missing file {text!r}")
    return lambda N: WeightScheme.from_file(path, N)


@dataclass(frozen=True)
class RunConfig:
    """
    Parameters of one subcommand run. All computations are deterministic.

    Args:
        subcommand (str): Subcommand name.
        n_values (Tuple[int, ...]): N or N-list.
        excitations (Tuple[ExcitationSpec, ...]): Excitation specs.
        gamma (float): Decay rate γ.
        omega_freq (float): Transition frequency ω.
        k_list (Optional[Tuple[int, ...]]): Cluster sizes, None for all.
        t_end (float): End of the time window in units of 1/γ.
        samples (int): Number of time samples.
        spacing (str): "log" or "linear".
        weights (str): Weight-scheme selector.
        mod_zero (bool): Restrict rows to divisors of N.
        output (Path): Output directory.
        fmt (str): "csv" or "json".
        method (str): Integrator.
        threads (Optional[int]): Worker cap.
        max_n (int): Largest N for verification.
        command_line (str): Invocation recorded in file headers.
    """
    subcommand: str
    n_values: Tuple[int, ...] = ()
    excitations: Tuple[ExcitationSpec, ...] = ()
    gamma: float = 1.0
    omega_freq: float = 1.0
    k_list: Optional[Tuple[int, ...]] = None
    t_end: float = DEFAULT_WINDOW
    samples: int = DEFAULT_SAMPLES
    spacing: str = "log"
    weights: str = "k-minus-1"
    mod_zero: bool = False
    output: Path = field(default_factory=lambda: Path("."))
    fmt: str = "csv"
    method: str = "auto"
    threads: Optional[int] = None
    max_n: int = 10
    command_line: str = ""

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if not self.gamma > 0 or not self.omega_freq > 0:
            raise DomainError("gamma and omega_freq must be positive")
        if not self.t_end > 0:
            raise DomainError(f"time window must be positive, got {self.t_end}")
        if self.samples < 2:
            raise DomainError(f"need at least 2 samples, got {self.samples}")
        if self.spacing not in ("log", "linear"):
            raise DomainError(f"spacing must be 'log' or 'linear', got {self.spacing!r}")

    @property
    def N(self) -> int:
        """The single N of single-N subcommands."""
        if len(self.n_values) != 1:
            raise DomainError(f"{self.subcommand} needs exactly one N, got {list(self.n_values)}")
        return self.n_values[0]
