"""Tests for Dicke labels, mixtures, reduced spectra and entropies."""

import math

import numpy as np
import pytest

from dicke_gmc.core.dicke_core import (
    DickeLabel,
    DickeMixture,
    ReducedSpectrum,
    entropy_of_spectrum,
    mixture_entropy,
    reduced_entropy,
    reduced_spectrum_mixture,
    reduced_spectrum_pure,
)
from dicke_gmc.errors import DomainError
from dicke_gmc.oracle import dense_mixture_state, dense_partial_trace, eigen_entropy


class TestDickeLabel:

    def test_valid(self):
        label = DickeLabel(5, 2)
        assert str(label) == "|5,2⟩"
        assert label.mirrored() == DickeLabel(5, 3)

    @pytest.mark.parametrize("N,n_e", [(0, 0), (3, 4), (3, -1)])
    def test_invalid(self, N, n_e):
        with pytest.raises(DomainError):
            DickeLabel(N, n_e)


class TestDickeMixture:

    def test_roundoff_is_clamped_and_renormalised(self):
        mix = DickeMixture([-1e-13, 0.5, 0.5 + 1e-11])
        assert mix.populations[0] == 0.0
        assert math.fsum(mix.populations) == pytest.approx(1.0, abs=1e-15)
        assert mix.N == 2

    def test_large_negative_rejected(self):
        with pytest.raises(DomainError):
            DickeMixture([-1e-6, 0.5, 0.5 + 1e-6])

    def test_unnormalised_rejected(self):
        with pytest.raises(DomainError):
            DickeMixture([0.2, 0.2, 0.2])

    def test_read_only(self):
        mix = DickeMixture([0.0, 1.0])
        with pytest.raises(ValueError):
            mix.populations[0] = 1.0

    def test_pure(self):
        np.testing.assert_array_equal(DickeMixture.pure(DickeLabel(3, 1)).populations, [0, 1, 0, 0])


class TestPureSpectra:

    def test_single_qubit_of_two(self):
        np.testing.assert_allclose(reduced_spectrum_pure(DickeLabel(2, 1), 1).weights, [0.5, 0.5], atol=1e-15)

    def test_two_qubits_of_four(self):
        weights = reduced_spectrum_pure(DickeLabel(4, 2), 2).weights
        np.testing.assert_allclose(weights, [1 / 6, 2 / 3, 1 / 6], atol=1e-15)

    @pytest.mark.parametrize("k", [1, 3, 6])
    def test_ground_state_is_product(self, k):
        weights = reduced_spectrum_pure(DickeLabel(6, 0), k).weights
        assert weights[0] == pytest.approx(1.0, abs=1e-15)
        assert np.all(weights[1:] == 0.0)

    def test_mirror_reverses_the_spectrum(self):
        for N, n_e, k in [(9, 2, 4), (40, 13, 40), (300, 1, 150)]:
            direct = reduced_spectrum_pure(DickeLabel(N, n_e), k)
            mirrored = reduced_spectrum_pure(DickeLabel(N, N - n_e), k)
            assert np.array_equal(direct.weights, mirrored.reversed().weights)
            assert entropy_of_spectrum(direct) == pytest.approx(entropy_of_spectrum(mirrored), abs=1e-13)

    def test_whole_register_has_zero_entropy(self):
        for n_e in range(8):
            assert entropy_of_spectrum(reduced_spectrum_pure(DickeLabel(7, n_e), 7)) == 0.0
            assert reduced_entropy(DickeLabel(7, n_e), 7) == 0.0

    def test_cluster_out_of_range(self):
        with pytest.raises(DomainError):
            reduced_spectrum_pure(DickeLabel(4, 2), 5)

    def test_spectrum_validation(self):
        with pytest.raises(DomainError):
            ReducedSpectrum(2, [0.5, 0.5])
        with pytest.raises(DomainError):
            ReducedSpectrum(1, [0.7, 0.7])


class TestMixtureSpectra:

    def test_single_term_matches_pure(self):
        for N, n_e, k in [(5, 2, 2), (12, 7, 5), (30, 29, 1)]:
            mix = DickeMixture.pure(DickeLabel(N, n_e))
            np.testing.assert_allclose(reduced_spectrum_mixture(mix, k).weights,
                                       reduced_spectrum_pure(DickeLabel(N, n_e), k).weights, atol=1e-15)

    def test_two_qubit_cat_like_mixture(self):
        mix = DickeMixture([0.5, 0.0, 0.5])
        np.testing.assert_allclose(reduced_spectrum_mixture(mix, 1).weights, [0.5, 0.5], atol=1e-15)

    def test_decayed_state_against_dense_partial_trace(self, populations_n8, multiset_gap):
        mix = DickeMixture(populations_n8)
        dense = dense_partial_trace(dense_mixture_state(mix.populations), 3)
        eigenvalues = np.linalg.eigvalsh(dense.data)
        assert multiset_gap(reduced_spectrum_mixture(mix, 3).weights, eigenvalues) <= 1e-10

    def test_entropy_bounded_by_symmetric_sector(self, exact_populations):
        mix = DickeMixture(exact_populations(40, 0.03))
        for k in range(1, 41):
            assert entropy_of_spectrum(reduced_spectrum_mixture(mix, k)) <= math.log(k + 1) + 1e-12


class TestEntropies:

    def test_spectrum_entropies(self):
        assert entropy_of_spectrum(ReducedSpectrum(0, [1.0])) == 0.0
        assert entropy_of_spectrum(ReducedSpectrum(1, [0.5, 0.5])) == pytest.approx(math.log(2), rel=1e-15)
        value = entropy_of_spectrum(ReducedSpectrum(2, [1 / 6, 2 / 3, 1 / 6]))
        assert value == pytest.approx(0.867563, abs=1e-6)

    def test_mixture_entropies(self):
        assert mixture_entropy(DickeMixture.pure(DickeLabel(5, 5))) == 0.0
        assert mixture_entropy(DickeMixture(np.full(10, 0.1))) == pytest.approx(math.log(10), rel=1e-14)

    def test_decayed_state_against_dense_eigen_entropy(self, populations_n8):
        mix = DickeMixture(populations_n8)
        assert mixture_entropy(mix) == pytest.approx(eigen_entropy(dense_mixture_state(mix.populations)), abs=1e-10)
