"""End-to-end tests of the dicke-gmc command line through Typer's CliRunner."""

import json
import math
import sys
from pathlib import Path
from types import SimpleNamespace

import numpy as np
import pandas as pd
import pytest
from loguru import logger
from typer.testing import CliRunner

from dicke_gmc import __version__
from dicke_gmc.core import superradiance
from dicke_gmc.core.dicke_core import reduced_spectrum_pure
from dicke_gmc.main import app, main
from dicke_gmc.services import verify as verify_module
from dicke_gmc.services.run_config import (
    RunConfig,
    parse_excitation,
    parse_excitations,
    parse_int_list,
    parse_k_list,
    parse_weights,
)
from dicke_gmc.services.writers import format_number, write_table
from dicke_gmc.errors import DomainError


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def run(runner, tmp_path):
    """Invoke the app with output going to tmp_path/out."""
    out = tmp_path / "out"

    def invoke(*args, output=True):
        argv = list(args)
        if output:
            argv += ["--output", str(out)]
        return runner.invoke(app, argv)

    invoke.out = out
    return invoke


def read_table(path):
    """Comments, columns and string cells of a written table."""
    path = Path(path)
    if path.suffix == ".json":
        return json.loads(path.read_text(encoding="utf-8"))
    comments = [line[2:] for line in path.read_text(encoding="utf-8").splitlines() if line.startswith("# ")]
    frame = pd.read_csv(path, comment="#", dtype=str, keep_default_na=False)
    return {"comments": comments, "columns": list(frame.columns), "rows": frame.values.tolist()}


def parse_cell(cell):
    return None if cell in ("", None) else float(cell)


def _numbers(table, column):
    index = table["columns"].index(column)
    return [parse_cell(row[index]) for row in table["rows"]]


class TestParsers:

    def test_int_lists(self):
        assert parse_int_list("4..8") == [4, 5, 6, 7, 8]
        assert parse_int_list("10..30:10, 5,10") == [10, 20, 30, 5]
        with pytest.raises(DomainError):
            parse_int_list("a,b")
        with pytest.raises(DomainError):
            parse_int_list("0,3")

    def test_excitations(self):
        assert parse_excitation("5").resolve(4) == (None, False)
        assert parse_excitation("N/2").resolve(7) == (3, True)
        assert parse_excitation("0.5").resolve(8) == (4, False)
        assert len(parse_excitations("1,N/10,N/2")) == 3
        with pytest.raises(DomainError):
            parse_excitation("N/0")
        with pytest.raises(DomainError):
            parse_excitation("1.5")

    def test_cluster_lists(self):
        assert parse_k_list("all") is None
        assert parse_k_list("1,2,5") == [1, 2, 5]

    def test_weights(self, tmp_path):
        assert parse_weights("uniform")(5).name == "uniform"
        assert parse_weights("delta:3")(5).name == "delta:3"
        path = tmp_path / "w.txt"
        path.write_text("1\n1\n1\n", encoding="utf-8")
        assert parse_weights(f"file:{path}")(4).name == "file:w.txt"
        with pytest.raises(DomainError):
            parse_weights("delta:1")
        with pytest.raises(DomainError):
            parse_weights("no-such-scheme")


class TestNumberFormat:

    def test_format(self):
        assert format_number(0.1) == "0.10000000000000001"
        assert format_number(3) == "3"
        assert format_number(np.int64(7)) == "7"
        assert format_number(None) == ""
        assert format_number(float("nan")) == ""
        assert float(format_number(math.pi)) == math.pi

    def test_numpy_integers_stay_integers(self, tmp_path):
        rows = [(np.int64(k), 0.5 * k, None) for k in range(1, 4)]
        as_json = write_table(RunConfig("test", output=tmp_path, fmt="json"), "t.csv", ("k", "x", "y"), rows)
        document = json.loads(as_json.read_text(encoding="utf-8"))
        assert [row[0] for row in document["rows"]] == [1, 2, 3]
        assert all(isinstance(row[0], int) for row in document["rows"])
        assert document["rows"][0][2] is None
        as_csv = write_table(RunConfig("test", output=tmp_path), "t.csv", ("k", "x", "y"), rows)
        table = read_table(as_csv)
        assert table["rows"] == [["1", "0.5", ""], ["2", "1", ""], ["3", "1.5", ""]]


class TestGmcPure:

    def test_half_filled_thousand(self, run):
        result = run("gmc-pure", "--n", "1000", "--ne", "500")
        assert result.exit_code == 0, result.output
        table = read_table(run.out / "gmc_pure_N1000_ne500.csv")
        assert table["columns"] == ["k", "s_higher", "s_k"]
        assert len(table["rows"]) == 1000
        assert table["rows"][0][2] == ""
        assert parse_cell(table["rows"][-1][1]) == 0.0

    def test_divisor_rows(self, run):
        result = run("gmc-pure", "--n", "1000", "--ne", "500", "--mod-zero")
        assert result.exit_code == 0, result.output
        table = read_table(run.out / "gmc_pure_N1000_ne500.csv")
        assert [int(row[0]) for row in table["rows"]] == [1, 2, 4, 5, 8, 10, 20, 25, 40, 50, 100, 125, 200,
                                                         250, 500, 1000]

    def test_header(self, run):
        run("gmc-pure", "--n", "6", "--ne", "3")
        lines = (run.out / "gmc_pure_N6_ne3.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == f"# tool-version: dicke-gmc {__version__}"
        assert lines[1].startswith("# command-line: dicke-gmc gmc-pure --n 6 --ne 3")
        assert lines[2] == "# natural-log units (nats)"
        assert lines[3] == "# gamma: 1"

    def test_total_grows_towards_half_filling(self, run):
        result = run("gmc-pure", "--n", "60", "--ne", "1,5,15,30")
        assert result.exit_code == 0, result.output
        totals = [parse_cell(read_table(run.out / f"gmc_pure_N60_ne{n_e}.csv")["rows"][0][1]) for n_e in (1, 5, 15, 30)]
        assert all(b > a for a, b in zip(totals, totals[1:]))

    def test_rerun_is_byte_identical(self, run):
        run("gmc-pure", "--n", "40", "--ne", "N/2")
        first = (run.out / "gmc_pure_N40_ne20.csv").read_bytes()
        run("gmc-pure", "--n", "40", "--ne", "N/2")
        assert (run.out / "gmc_pure_N40_ne20.csv").read_bytes() == first

    def test_json_matches_csv(self, run):
        run("gmc-pure", "--n", "12", "--ne", "5")
        run("gmc-pure", "--n", "12", "--ne", "5", "--format", "json")
        as_csv = read_table(run.out / "gmc_pure_N12_ne5.csv")
        as_json = json.loads((run.out / "gmc_pure_N12_ne5.json").read_text(encoding="utf-8"))
        assert as_json["columns"] == as_csv["columns"]
        for csv_row, json_row in zip(as_csv["rows"], as_json["rows"]):
            assert [parse_cell(cell) for cell in csv_row] == json_row

    def test_usage_errors(self, run):
        assert run("gmc-pure", "--n", "abc", "--ne", "1").exit_code == 2
        assert run("gmc-pure", "--n", "5", "--ne", "1", "--format", "xml").exit_code == 2
        assert run("gmc-pure", "--n", "5").exit_code == 2


class TestWeaving:

    def test_growth_and_families(self, run):
        result = run("weaving", "--n", "4..30", "--ne", "1,N/2")
        assert result.exit_code == 0, result.output
        table = read_table(run.out / "weaving.csv")
        assert table["columns"] == ["N", "ne", "W"]
        single = [parse_cell(row[2]) for row in table["rows"] if row[1] == "1"]
        assert all(b > a for a, b in zip(single, single[1:]))
        by_key = {(row[0], row[1]): parse_cell(row[2]) for row in table["rows"]}
        assert by_key[("30", "15")] > by_key[("30", "1")]
        assert any("n_e rounded down: N=5 N/2 -> 2" in line for line in table["comments"])

    def test_single_qubit(self, run):
        result = run("weaving", "--n", "1", "--ne", "1")
        assert result.exit_code == 0, result.output
        assert read_table(run.out / "weaving.csv")["rows"] == [["1", "1", "0"]]

    def test_skipped_combination_recorded(self, run):
        run("weaving", "--n", "3,8", "--ne", "5")
        table = read_table(run.out / "weaving.csv")
        assert [row[:2] for row in table["rows"]] == [["8", "5"]]
        assert any(line.startswith("skipped: N=3") for line in table["comments"])

    def test_bad_weights(self, run):
        assert run("weaving", "--n", "5", "--ne", "1", "--weights", "delta:0").exit_code == 2


class TestEvolve:

    def test_files_and_first_row(self, run):
        result = run("evolve", "--n", "7", "--samples", "60")
        assert result.exit_code == 0, result.output
        populations = read_table(run.out / "populations.csv")
        assert populations["columns"] == ["gamma_t"] + [f"P_{n}" for n in range(8)]
        assert len(populations["rows"]) == 60
        power = read_table(run.out / "power.csv")
        assert power["columns"] == ["gamma_t", "power"]
        series = read_table(run.out / "gmc_t.csv")
        assert series["columns"] == ["gamma_t", "k", "s_higher", "s_k"]
        first = [row for row in series["rows"] if parse_cell(row[0]) == 0.0]
        assert len(first) == 7
        assert all(parse_cell(row[2]) == 0.0 for row in first)
        assert all(row[3] in ("", "0") for row in first)

    def test_power_peak_fifty_atoms(self, run):
        result = run("evolve", "--n", "50", "--k", "1,2")
        assert result.exit_code == 0, result.output
        power = read_table(run.out / "power.csv")
        times, values = _numbers(power, "gamma_t"), _numbers(power, "power")
        assert 0.5 / 50 <= times[int(np.argmax(values))] <= 2.5 / 50

    def test_requested_clusters_only(self, run):
        run("evolve", "--n", "6", "--k", "3", "--samples", "10", "--linear", "--t-end", "2")
        rows = read_table(run.out / "gmc_t.csv")["rows"]
        assert {row[1] for row in rows} == {"3"}
        assert len(rows) == 10

    def test_deterministic(self, run):
        run("evolve", "--n", "5", "--samples", "40")
        first = {name: (run.out / name).read_bytes() for name in ("populations.csv", "power.csv", "gmc_t.csv")}
        run("evolve", "--n", "5", "--samples", "40")
        for name, content in first.items():
            assert (run.out / name).read_bytes() == content

    def test_integration_failure_exit(self, run, monkeypatch):
        def failing(*args, **kwargs):
            return SimpleNamespace(success=False, t=np.array([0.0, 0.125]), message="step size too small")

        monkeypatch.setattr(superradiance, "solve_ivp", failing)
        result = run("evolve", "--n", "4")
        assert result.exit_code == 1
        assert "failed at t=0.125" in result.output


class TestTimesAndSnapshot:

    def test_times(self, run):
        result = run("times", "--n", "8,10")
        assert result.exit_code == 0, result.output
        table = read_table(run.out / "times.csv")
        assert table["columns"] == ["N", "t_power_max", "t_corr_max", "t_entropy_max"]
        for row in table["rows"]:
            t_power, t_corr, t_entropy = (parse_cell(cell) for cell in row[1:])
            assert 0 < t_power < t_corr
            assert t_entropy > 0

    def test_snapshot(self, run):
        result = run("snapshot", "--n", "100")
        assert result.exit_code == 0, result.output
        populations = read_table(run.out / "snapshot_populations.csv")
        assert populations["columns"] == ["ne", "P"]
        weights = _numbers(populations, "P")
        assert abs(int(np.argmax(weights)) - 100 / 3) <= 10
        profile = read_table(run.out / "snapshot_gmc.csv")
        assert profile["columns"] == ["k", "s_higher_mix", "s_higher_half", "s_higher_one",
                                      "s_k_mix", "s_k_half", "s_k_one"]
        assert len(profile["rows"]) == 100

    def test_snapshot_two_atoms(self, run):
        result = run("snapshot", "--n", "2")
        assert result.exit_code == 0, result.output
        table = read_table(run.out / "snapshot_gmc.csv")
        rows = table["rows"]
        assert len(rows) == 2
        assert rows[1][1] == "0"
        assert float(rows[0][1]) > 0
        peak = [line for line in table["comments"] if line.startswith("gamma_t_corr_max: ")]
        assert float(peak[0].split(": ")[1]) > 0.01

    def test_times_two_atoms(self, run):
        result = run("times", "--n", "2")
        assert result.exit_code == 0, result.output
        [row] = read_table(run.out / "times.csv")["rows"]
        t_power, t_corr = parse_cell(row[1]), parse_cell(row[2])
        assert t_corr > 0.01
        assert t_corr > t_power


class TestVerify:

    def test_passes(self, run):
        result = run("verify", "--max-n", "10", output=False)
        assert result.exit_code == 0, result.output
        assert "all oracle checks passed" in result.output

    def test_corrupted_weight_is_reported(self, run, monkeypatch):
        def corrupted(label, k):
            spectrum = reduced_spectrum_pure(label, k)
            if (label.N, label.n_e, k) == (4, 2, 2):
                return SimpleNamespace(k=k, weights=spectrum.weights + np.array([1e-6, -1e-6, 0.0]))
            return spectrum

        monkeypatch.setattr(verify_module, "reduced_spectrum_pure", corrupted)
        result = run("verify", "--max-n", "4", output=False)
        assert result.exit_code == 1
        assert "(N=4, n_e=2, k=2, t=None)" in result.output

    def test_capacity_warning(self, run):
        result = run("verify", "--max-n", "11", output=False)
        assert result.exit_code == 0, result.output
        assert "matrix paths capped at N=10" in result.output


class TestStatusAndHelp:

    def test_status(self, run):
        result = run("status", output=False)
        assert result.exit_code == 0, result.output
        assert "numpy" in result.output
        assert "threads" in result.output

    def test_entry_point_logs_nothing_before_setup(self, monkeypatch):
        messages = []
        sink = logger.add(messages.append, level="DEBUG")
        monkeypatch.setattr(sys, "argv", ["dicke-gmc"])
        try:
            with pytest.raises(SystemExit) as info:
                main()
        finally:
            logger.remove(sink)
        assert info.value.code == 0
        assert messages == []

    def test_help(self, run):
        result = run("--help", output=False)
        assert result.exit_code == 0
        assert "gmc-pure" in result.output

    def test_bits_scales_summaries_only(self, run):
        nats = run("gmc-pure", "--n", "2", "--ne", "1")
        content = (run.out / "gmc_pure_N2_ne1.csv").read_text(encoding="utf-8").splitlines()[4:]
        bits = run("--bits", "gmc-pure", "--n", "2", "--ne", "1")
        assert bits.exit_code == 0, bits.output
        assert "2 bits" in bits.output
        assert "nats" in nats.output
        assert (run.out / "gmc_pure_N2_ne1.csv").read_text(encoding="utf-8").splitlines()[4:] == content
