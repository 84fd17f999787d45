import math

import numpy as np
import pytest

from conftest import random_ergodic, random_reversible
from lazymc import (
    build_spectral_report,
    jacobi_eigenvalues,
    lazy,
    mixing_time,
    pseudo_spectral_gap,
    reversible_spectrum,
    spectral_gaps,
    stationary,
    tv_distance,
    worst_case_decay,
)
from lazymc.errors import CapExceeded, NotErgodic, NotReversible, ShapeMismatch


class TestJacobi:
    @pytest.mark.parametrize("seed", range(20))
    def test_matches_lapack_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 9))
        A = rng.normal(size=(n, n))
        S = (A + A.T) / 2.0
        mine = jacobi_eigenvalues(S)
        oracle = np.sort(np.linalg.eigvalsh(S))[::-1]
        np.testing.assert_allclose(mine, oracle, atol=1e-10)

    def test_diagonal_input(self):
        np.testing.assert_allclose(
            jacobi_eigenvalues(np.diag([3.0, -1.0, 2.0])), [3.0, 2.0, -1.0]
        )

    def test_rejects_non_square(self):
        with pytest.raises(ShapeMismatch):
            jacobi_eigenvalues(np.ones((2, 3)))


class TestReversibleSpectrum:
    def test_reflecting_walk(self, reflecting_walk):
        np.testing.assert_allclose(
            reversible_spectrum(reflecting_walk), [1.0, 0.0, -1.0], atol=1e-10
        )

    def test_constant_rows(self, constant_rows):
        np.testing.assert_allclose(
            reversible_spectrum(constant_rows), [1.0, 0.0, 0.0], atol=1e-10
        )

    def test_two_state_closed_form(self):
        p, q = 0.3, 0.1
        eig = reversible_spectrum([[1 - p, p], [q, 1 - q]])
        np.testing.assert_allclose(eig, [1.0, 1.0 - p - q], atol=1e-12)

    def test_rejects_non_reversible(self, three_cycle):
        with pytest.raises(NotReversible):
            reversible_spectrum(three_cycle)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_nonsymmetric_oracle(self, seed):
        rng = np.random.default_rng(seed)
        M = random_reversible(rng, int(rng.integers(2, 7)))
        mine = reversible_spectrum(M)
        oracle = np.sort(np.linalg.eigvals(M.entries).real)[::-1]
        np.testing.assert_allclose(mine, oracle, atol=1e-9)


class TestSpectralGaps:
    def test_reflecting_walk(self, reflecting_walk):
        gamma, gamma_star = spectral_gaps(reflecting_walk)
        assert gamma == pytest.approx(1.0, abs=1e-10)
        assert gamma_star == pytest.approx(0.0, abs=1e-10)

    def test_constant_rows(self, constant_rows):
        gamma, gamma_star = spectral_gaps(constant_rows)
        assert gamma == pytest.approx(1.0, abs=1e-10)
        assert gamma_star == pytest.approx(1.0, abs=1e-10)

    def test_half_lazy_constant_rows(self, constant_rows):
        gamma, _ = spectral_gaps(lazy(constant_rows, 0.5))
        assert gamma == pytest.approx(0.5, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("seed", range(5))
    def test_lazy_gap_identity(self, seed, alpha):
        rng = np.random.default_rng(seed)
        M = random_reversible(rng, int(rng.integers(2, 7)))
        gamma, _ = spectral_gaps(M)
        gamma_lazy, _ = spectral_gaps(lazy(M, alpha))
        assert gamma_lazy == pytest.approx((1.0 - alpha) * gamma, abs=1e-9)


class TestPseudoSpectralGap:
    def test_periodic_short_circuit(self, reflecting_walk):
        result = pseudo_spectral_gap(reflecting_walk)
        assert result.value == 0.0 and result.stop == "periodic" and result.argmax_k == 0

    def test_constant_rows(self, constant_rows):
        result = pseudo_spectral_gap(constant_rows)
        assert result.value == pytest.approx(1.0, abs=1e-9)
        assert result.argmax_k == 1 and not result.capped

    def test_half_lazy_values(self, reflecting_walk, constant_rows):
        assert pseudo_spectral_gap(lazy(reflecting_walk, 0.5)).value == pytest.approx(0.75, abs=1e-9)
        assert pseudo_spectral_gap(lazy(constant_rows, 0.5)).value == pytest.approx(0.75, abs=1e-9)

    def test_k_cap_flags_lower_bound(self, constant_rows):
        # a slow chain whose scan cannot finish in one step
        M = lazy(constant_rows, 0.99)
        result = pseudo_spectral_gap(M, k_cap=1)
        assert result.capped and result.stop == "k-cap"
        full = pseudo_spectral_gap(M)
        assert not full.capped
        assert full.value >= result.value  # capped value is a lower bound

    def test_argmax_one_when_first_gap_large(self):
        # whenever gap(reversibilization(M)) >= 1/2 the max sits at k = 1
        rng = np.random.default_rng(7)
        seen = 0
        for _ in range(30):
            M = random_ergodic(rng, int(rng.integers(2, 7)))
            first = pseudo_spectral_gap(M, k_cap=1).value
            if first >= 0.5:
                seen += 1
                assert pseudo_spectral_gap(M).argmax_k == 1
        assert seen > 0

    @pytest.mark.parametrize("seed", range(5))
    def test_reversible_chains_attain_at_k1(self, seed):
        rng = np.random.default_rng(300 + seed)
        M = random_reversible(rng, int(rng.integers(2, 7)))
        assert pseudo_spectral_gap(M).argmax_k == 1


class TestDecayAndMixing:
    def test_tv_examples(self):
        assert tv_distance([0.5, 0.5], [0.5, 0.5]) == 0.0
        assert tv_distance([1, 0], [0, 1]) == 1.0
        assert tv_distance([0.5, 0.5], [0.25, 0.75]) == pytest.approx(0.25)
        with pytest.raises(ShapeMismatch):
            tv_distance([1, 0], [1, 0, 0])

    def test_decay_at_zero_is_one_minus_pi_star(self, constant_rows):
        assert worst_case_decay(constant_rows, 0) == pytest.approx(1.0 - 0.2)

    def test_constant_rows_mix_in_one_step(self, constant_rows):
        assert worst_case_decay(constant_rows, 1) == pytest.approx(0.0, abs=1e-15)
        assert mixing_time(constant_rows, 0.25) == 1
        assert mixing_time(constant_rows, 0.9) == 1

    def test_half_lazy_walk_decay_matches_single_multiply(self, reflecting_walk):
        L = lazy(reflecting_walk, 0.5)
        pi = stationary(L).probs
        oracle = 0.5 * np.abs(L.entries - pi).sum(axis=1).max()
        assert worst_case_decay(L, 1) == pytest.approx(oracle, abs=1e-15)
        assert oracle == pytest.approx(0.25)

    def test_doubly_uniform_two_state(self):
        assert mixing_time([[0.5, 0.5], [0.5, 0.5]], 0.9) == 1
        assert mixing_time([[0.5, 0.5], [0.5, 0.5]], 0.05) == 1

    def test_rejects_periodic(self, reflecting_walk):
        with pytest.raises(NotErgodic):
            worst_case_decay(reflecting_walk, 3)
        with pytest.raises(NotErgodic):
            mixing_time(reflecting_walk, 0.25)

    def test_cap_exceeded(self, constant_rows):
        with pytest.raises(CapExceeded):
            mixing_time(lazy(constant_rows, 0.999), 1e-6, cap=4)

    @pytest.mark.parametrize("seed", range(8))
    def test_mixing_time_is_exact_threshold(self, seed):
        rng = np.random.default_rng(seed)
        M = random_ergodic(rng, int(rng.integers(2, 7)))
        for eps in (0.25, 0.1):
            t = mixing_time(M, eps, debug_monotone=True)
            assert worst_case_decay(M, t) <= eps
            if t > 1:
                assert worst_case_decay(M, t - 1) > eps


class TestSpectralReport:
    def test_periodic_chain_report(self, reflecting_walk):
        report = build_spectral_report(reflecting_walk)
        assert report.reversible and not report.ergodic
        assert report.gamma_ps == 0.0 and report.gamma_ps_argmax_k == 0
        assert report.t_mix_quarter is None and report.paulin_ok is None
        np.testing.assert_allclose(report.eigenvalues, [1.0, 0.0, -1.0], atol=1e-10)

    def test_constant_rows_report(self, constant_rows):
        report = build_spectral_report(constant_rows)
        assert report.ergodic and report.t_mix_quarter == 1
        assert report.gamma_ps == pytest.approx(1.0, abs=1e-9)
        assert report.paulin_ok and report.levin_ok
        assert report.pi_star == pytest.approx(0.2)

    def test_non_reversible_report_has_no_spectrum(self, three_cycle):
        report = build_spectral_report(lazy(three_cycle, 0.2))
        assert not report.reversible
        assert report.eigenvalues is None and report.gamma is None
        assert report.gamma_ps > 0

    @pytest.mark.parametrize("seed", range(10))
    def test_sandwiches_hold_on_random_chains(self, seed):
        rng = np.random.default_rng(seed)
        M = random_ergodic(rng, int(rng.integers(2, 7)))
        report = build_spectral_report(M)
        assert report.paulin_ok is True
        if report.reversible:
            assert report.levin_ok is True

    def test_strict_lower_bound_fails_on_fast_mixer(self):
        # gamma_ps = 0.96 but the chain mixes in one step: the no-factor-2
        # variant of the lower bound cannot hold, and is only reported
        report = build_spectral_report([[0.6, 0.4], [0.4, 0.6]])
        assert report.t_mix_quarter == 1
        assert report.gamma_ps == pytest.approx(0.96, abs=1e-9)
        assert report.paulin_ok is True
        assert report.paulin_lower_strict_ok is False
