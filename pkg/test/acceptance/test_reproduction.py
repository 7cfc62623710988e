"""Full-scale reproduction checks: N = 1000 profiles and scaling laws. Run with `pytest -m slow`."""

import numpy as np
import pytest

from dicke_gmc.core.dicke_core import DickeLabel
from dicke_gmc.core.gmc import divisor_profile, gmc_profile
from dicke_gmc.core.superradiance import (
    Quantity,
    RateModel,
    find_time_of_max,
    population_snapshot,
    time_of_max_correlation,
)
from dicke_gmc.services.verify import run_verification

pytestmark = pytest.mark.slow

SIZES = (10, 20, 50, 100, 200, 500, 1000)


def _slope(xs, ys):
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


@pytest.fixture(scope="module")
def maxima():
    rows = {}
    for N in SIZES:
        model = RateModel(N)
        rows[N] = (find_time_of_max(model, Quantity("power")), time_of_max_correlation(model))
    return rows


@pytest.fixture(scope="module")
def thousand_atoms():
    model = RateModel(1000)
    report = time_of_max_correlation(model)
    mixture = population_snapshot(model, report.t_max)
    return report, mixture, gmc_profile(mixture).clamped()


class TestPureThousand:

    def test_totals_order_with_excitations(self):
        expected = {1: 7.9073, 5: 31.4791, 50: 198.5152, 500: 693.1472}
        totals = {n_e: gmc_profile(DickeLabel(1000, n_e)).total for n_e in expected}
        for n_e, value in expected.items():
            assert totals[n_e] == pytest.approx(value, abs=1e-3)
        assert totals[1] < totals[5] < totals[50] < totals[500]

    def test_profiles_grow_pointwise_towards_half_filling(self):
        profiles = [gmc_profile(DickeLabel(1000, n_e)) for n_e in (1, 5, 50, 500)]
        for lower, upper in zip(profiles, profiles[1:]):
            assert np.all(lower.s_higher <= upper.s_higher + 1e-9)
            assert lower.s_k.max() <= upper.s_k.max() + 1e-9

    def test_profiles_are_monotone(self):
        for n_e in (1, 5, 50, 500):
            assert gmc_profile(DickeLabel(1000, n_e)).monotonicity_violations() == []

    def test_divisor_chain_is_not_monotone(self):
        rows = {k: drop for k, _, drop in divisor_profile(gmc_profile(DickeLabel(1000, 500)).clamped())}
        assert rows[40] > rows[50]


class TestScalingLaws:

    def test_correlation_peak_scaling(self, maxima):
        t_corr = [maxima[N][1].t_max for N in SIZES]
        assert -0.9 < _slope(SIZES, t_corr) < -0.65

    def test_correlation_peak_follows_power_peak(self, maxima):
        ratios = [maxima[N][1].t_max / maxima[N][0].t_max for N in SIZES]
        assert all(ratio > 1 for ratio in ratios)
        assert ratios[-1] < ratios[0]

    def test_power_peak_grows_quadratically(self, maxima):
        peaks = [maxima[N][0].value for N in SIZES]
        assert _slope(SIZES, peaks) == pytest.approx(2.0, abs=0.1)

    def test_power_peak_delay(self, maxima):
        delays = [maxima[N][0].t_max * N for N in SIZES]
        assert all(b > a for a, b in zip(delays, delays[1:]))
        assert delays[-1] == pytest.approx(3.6, abs=0.1)


class TestThousandAtomSnapshot:

    def test_most_populated_level(self, thousand_atoms):
        _, mixture, _ = thousand_atoms
        assert abs(int(np.argmax(mixture.populations)) - 1000 / 3) <= 40

    def test_mixture_against_half_filled_state(self, thousand_atoms):
        _, _, mixed = thousand_atoms
        half = gmc_profile(DickeLabel(1000, 500)).clamped()
        for k in range(1, 11):
            assert abs(mixed.higher(k) / half.higher(k) - 1) <= 0.25
        assert mixed.higher(500) < half.higher(500)

    def test_mixture_profile_is_monotone(self, thousand_atoms):
        _, _, mixed = thousand_atoms
        assert mixed.monotonicity_violations() == []


def test_verification_at_vector_capacity():
    report = run_verification(max_n=14)
    assert report.passed
    assert any("matrix paths capped" in message for message in report.warnings)
