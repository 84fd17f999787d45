from fractions import Fraction

import numpy as np
import pytest

from conftest import random_ergodic
from lazymc import (
    check_extension_condition,
    counterexample_report,
    estimate_pi_star,
    extension_budget_holds,
    identity_extension_maps,
    identity_test,
    identity_test_extended,
    inf_norm_distance,
    lazy,
    learn_matrix_direct,
    learn_matrix_extended,
    matrix_extension_maps,
    matrix_problem,
    pi_star_problem,
    simulate,
    simulate_lazy,
    stationary,
    uniform_distribution,
    validate_stochastic,
)
from lazymc.errors import PathTooShort, UnvisitedState
from lazymc.estimators import ExtensionMaps


class TestLearnMatrixDirect:
    def test_alternating_path(self):
        est = learn_matrix_direct([0, 1, 0, 1, 0], d=2)
        np.testing.assert_allclose(est.entries, [[0, 1], [1, 0]], atol=0)

    def test_unvisited_row_defaults_to_uniform(self):
        est = learn_matrix_direct([0, 0, 0], d=2)
        np.testing.assert_allclose(est.entries, [[1, 0], [0.5, 0.5]], atol=0)

    def test_needs_two_samples(self):
        with pytest.raises(PathTooShort):
            learn_matrix_direct([0], d=2)

    def test_visited_rows_are_exact_frequencies(self):
        # independent python-loop recount; entries must be the exact ratios
        rng = np.random.default_rng(0)
        path = rng.integers(0, 3, size=400)
        est = learn_matrix_direct(path, d=3)
        counts = np.zeros((3, 3), dtype=int)
        for a, b in zip(path[:-1], path[1:]):
            counts[a, b] += 1
        for i in range(3):
            total = int(counts[i].sum())
            if total == 0:
                continue
            for j in range(3):
                assert est.entries[i, j] == counts[i, j] / total
                assert Fraction(int(counts[i, j]), total) == Fraction(
                    est.entries[i, j]
                ).limit_denominator(total)

    def test_converges_on_rank_one_chain(self, constant_rows):
        for seed in (1, 2, 3):
            path = simulate(constant_rows, uniform_distribution(3), 1_000_000, seed)
            est = learn_matrix_direct(path, d=3)
            assert inf_norm_distance(est, constant_rows) <= 0.01


class TestLearnMatrixExtended:
    def test_learns_periodic_chain(self, reflecting_walk):
        # direct ergodic-theory guarantees say nothing here (period 2); the
        # lazy route still recovers the chain
        for seed in (4, 5):
            report = learn_matrix_extended(
                reflecting_walk, uniform_distribution(3), 0.5, 1_000_000, seed
            )
            assert inf_norm_distance(report.estimate, reflecting_walk) <= 0.02

    def test_error_roughly_halves_when_m_quadruples(self, reflecting_walk):
        mu = uniform_distribution(3)
        errors = []
        for m in (4_000, 16_000, 64_000):
            errs = [
                inf_norm_distance(
                    learn_matrix_extended(reflecting_walk, mu, 0.5, m, seed).estimate,
                    reflecting_walk,
                )
                for seed in range(8)
            ]
            errors.append(np.mean(errs))
        assert errors[0] > errors[1] > errors[2]
        assert errors[0] / errors[1] > 1.4 and errors[1] / errors[2] > 1.4

    def test_budget_chain_every_run(self, reflecting_walk):
        mu = uniform_distribution(3)
        for seed in range(20):
            report = learn_matrix_extended(reflecting_walk, mu, 0.5, 2_000, seed)
            lazy_err, final_err, ok = extension_budget_holds(reflecting_walk, report, eps=0.1)
            assert ok
            # the affine pull-back scales errors by at most 1/(1-alpha)
            assert final_err <= lazy_err / 0.5 + 1e-12

    def test_report_diagnostics(self, reflecting_walk):
        report = learn_matrix_extended(reflecting_walk, uniform_distribution(3), 0.5, 500, 6)
        assert report.m_used == 500 and report.alpha == 0.5
        assert report.diagnostics["visit_counts"].sum() == 500
        assert 0 <= report.diagnostics["m_act"] <= 499


class TestEstimatePiStar:
    def test_equal_counts(self):
        assert estimate_pi_star([0, 1, 0, 1], d=2) == pytest.approx(0.5)

    def test_unvisited_state_reported(self):
        with pytest.raises(UnvisitedState) as err:
            estimate_pi_star([0, 0, 0], d=2)
        assert err.value.context["state"] == 1

    def test_rank_one_chain_monte_carlo(self, constant_rows):
        for seed in (7, 8):
            path = simulate(constant_rows, uniform_distribution(3), 1_000_000, seed)
            assert estimate_pi_star(path, 3) == pytest.approx(0.2, rel=0.05)

    def test_lazy_path_estimates_periodic_chain(self, reflecting_walk):
        for seed in (9, 10):
            traj = simulate_lazy(reflecting_walk, uniform_distribution(3), 0.5, 1_000_000, seed)
            assert estimate_pi_star(traj.states, 3) == pytest.approx(0.25, rel=0.05)

    def test_direct_and_lazy_estimates_agree_on_ergodic_chain(self, constant_rows):
        mu = uniform_distribution(3)
        direct = estimate_pi_star(simulate(constant_rows, mu, 200_000, 11), 3)
        via_lazy = estimate_pi_star(
            simulate_lazy(constant_rows, mu, 0.5, 200_000, 12).states, 3
        )
        assert direct == pytest.approx(via_lazy, abs=0.01)


class TestIdentityTest:
    def test_accepts_the_reference_itself(self, constant_rows):
        for seed in (13, 14):
            path = simulate(constant_rows, uniform_distribution(3), 200_000, seed)
            assert identity_test(path, constant_rows, eps=0.5) == 0

    def test_rejects_separated_chain(self, constant_rows, three_cycle):
        assert inf_norm_distance(constant_rows, three_cycle) > 0.5
        for seed in (15, 16):
            path = simulate(constant_rows, uniform_distribution(3), 200_000, seed)
            assert identity_test(path, three_cycle, eps=0.5) == 1

    def test_extended_variant_agrees_with_ideal(self, reflecting_walk, constant_rows):
        mu = uniform_distribution(3)
        for seed in (17, 18):
            same = identity_test_extended(
                reflecting_walk, mu, reflecting_walk, 0.5, 0.5, 200_000, seed
            )
            different = identity_test_extended(
                reflecting_walk, mu, constant_rows, 0.5, 0.5, 200_000, seed
            )
            assert same == 0 and different == 1


class TestExtensionCondition:
    def test_pi_star_identity_maps_have_no_violations(self):
        rng = np.random.default_rng(19)
        problem = pi_star_problem()
        maps = identity_extension_maps()
        samples = []
        for _ in range(50):
            M = random_ergodic(rng, int(rng.integers(2, 6)))
            truth = float(stationary(M).probs.min())
            x = truth * float(rng.uniform(0.7, 1.3))
            samples.append((x, M, float(rng.uniform(0.05, 0.9))))
        report = check_extension_condition(problem, maps, lambda M: lazy(M, 0.5), samples)
        assert report.ok and report.checked == 50

    def test_matrix_maps_have_no_violations(self):
        rng = np.random.default_rng(20)
        alpha = 0.5
        problem = matrix_problem()
        maps = matrix_extension_maps(alpha)
        samples = []
        for _ in range(50):
            d = int(rng.integers(2, 6))
            M = validate_stochastic(rng.dirichlet(np.ones(d), size=d))
            noise = rng.normal(0, 0.05, size=(d, d))
            noise -= noise.sum(axis=1, keepdims=True) / d
            x = np.clip(lazy(M, alpha).entries + noise, 0, None)
            x = validate_stochastic(x / x.sum(axis=1, keepdims=True))
            samples.append((x, M, float(rng.uniform(0.1, 0.9))))
        report = check_extension_condition(problem, maps, lambda M: lazy(M, alpha), samples)
        assert report.ok

    def test_broken_pullback_is_caught(self):
        rng = np.random.default_rng(21)
        problem = pi_star_problem()
        broken = ExtensionMaps(g=lambda x: 0.499, ell=lambda eps: eps)
        samples = []
        for _ in range(30):
            M = random_ergodic(rng, 3)
            truth = float(stationary(M).probs.min())
            samples.append((truth, M, 0.05))
        report = check_extension_condition(problem, broken, lambda M: lazy(M, 0.5), samples)
        assert not report.ok and len(report.violations) > 0

    def test_rho_are_metrics_on_samples(self):
        rng = np.random.default_rng(22)
        problem = matrix_problem()
        for _ in range(20):
            d = int(rng.integers(2, 5))
            A = validate_stochastic(rng.dirichlet(np.ones(d), size=d))
            B = validate_stochastic(rng.dirichlet(np.ones(d), size=d))
            assert problem.rho(A, A) == 0.0
            assert problem.rho(A, B) == pytest.approx(problem.rho(B, A))
            assert problem.rho(A, B) >= 0.0


class TestCounterexample:
    def test_report_passes_and_carries_values(self):
        report = counterexample_report()
        assert report["max_deviation"] <= 1e-9
        assert report["computed"]["gap_walk"] == pytest.approx(0.0, abs=1e-9)
        assert report["computed"]["gap_flat"] == pytest.approx(1.0, abs=1e-9)
        assert report["computed"]["gap_lazy_walk"] == pytest.approx(0.75, abs=1e-9)
        assert report["computed"]["gap_lazy_flat"] == pytest.approx(0.75, abs=1e-9)
        assert report["reversible"] == {"walk": True, "flat": True}
