"""Shared fixtures for the dicke-gmc test suite."""

import numpy as np
import pytest
from loguru import logger

from dicke_gmc.core.superradiance import RateModel
from dicke_gmc.oracle import rate_matrix_exponential


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Logs go to a temporary directory; sinks bound to captured streams are dropped afterwards."""
    monkeypatch.setenv("LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.setenv("DICKE_GMC_THREADS", "2")
    yield
    logger.remove()


def _exact_populations(N, gamma_t, gamma=1.0):
    return rate_matrix_exponential(RateModel(N, gamma=gamma), gamma_t / gamma)


def _multiset_gap(expected, found):
    expected = np.asarray(expected, dtype=float)
    found = np.asarray(found, dtype=float)
    size = max(expected.size, found.size)
    a = np.sort(np.pad(expected, (0, size - expected.size)))[::-1]
    b = np.sort(np.pad(found, (0, size - found.size)))[::-1]
    return float(np.max(np.abs(a - b)))


@pytest.fixture
def exact_populations():
    """Populations from the dense matrix exponential, started in |N, N⟩: f(N, γt)."""
    return _exact_populations


@pytest.fixture
def multiset_gap():
    """Largest difference between two eigenvalue multisets, zero-padded to equal length."""
    return _multiset_gap


@pytest.fixture
def populations_n8():
    """ρ_8 populations at γt = 0.1."""
    return _exact_populations(8, 0.1)
