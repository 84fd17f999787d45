import dataclasses

import numpy as np
import pytest

from lazymc import (
    ChainFamilySpec,
    generate_chain,
    generate_family,
    empirical_risk,
    empirical_sample_complexity,
    is_irreducible,
    is_reversible,
    lazy,
    matrix_learner,
    mixing_time,
    oracle_estimator,
    period,
    pi_star_estimator,
    pseudo_spectral_gap,
    scan_lazy_gap_ratio,
    uniform_distribution,
    validate_stochastic,
    verify_binomial_cost,
    verify_lazy_gap_lower_bound,
    verify_lazy_mixing_bound,
)
from lazymc.errors import BadSpec, NotErgodic
from lazymc.matio import jsonable


class TestGenerators:
    @pytest.mark.parametrize("kind,check", [
        ("dirichlet-ergodic", lambda M: is_irreducible(M) and period(M) == 1),
        ("reversible-random-walk", is_reversible),
        ("periodic-bipartite", lambda M: period(M) == 2),
        ("rank-one", lambda M: np.abs(M.entries - M.entries[0]).max() == 0.0),
    ])
    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_structural_promises(self, kind, check, d):
        M = generate_chain(ChainFamilySpec(kind=kind, d=d, seed=77))
        assert M.d == d
        assert check(M)

    def test_rank_one_spectral_facts(self):
        M = generate_chain(ChainFamilySpec(kind="rank-one", d=4, seed=5))
        assert pseudo_spectral_gap(M).value == pytest.approx(1.0, abs=1e-9)
        assert mixing_time(M) == 1

    def test_user_file(self, tmp_path, reflecting_walk):
        from lazymc.matio import save_matrix

        path = tmp_path / "walk.json"
        save_matrix(reflecting_walk, path)
        M = generate_chain(ChainFamilySpec(kind="user-file", d=3, params={"path": str(path)}))
        np.testing.assert_allclose(M.entries, reflecting_walk.entries, atol=0)

    def test_unknown_kind(self):
        with pytest.raises(BadSpec):
            generate_chain(ChainFamilySpec(kind="mystery", d=3))

    def test_determinism(self):
        spec = ChainFamilySpec(kind="dirichlet-ergodic", d=5, seed=123)
        a = generate_chain(spec)
        b = generate_chain(spec)
        assert (a.entries == b.entries).all()

    def test_family_tags_and_dims_cycle(self):
        family = generate_family("rank-one", 6, seed=9, dims=(2, 4))
        assert [tag.split("-d")[1].split("-")[0] for tag, _ in family] == ["2", "4"] * 3


class TestEmpiricalRisk:
    def test_oracle_has_zero_risk(self, constant_rows):
        report = empirical_risk(
            oracle_estimator(), [("flat", constant_rows)], m=10, eps=0.1, trials=50, seed=1
        )
        assert report.empirical_risk == 0.0
        assert report.worst_chain_tag == "flat"
        assert report.ci95[0] <= report.empirical_risk <= report.ci95[1]

    def test_degenerate_eps_two_bound(self, constant_rows):
        # the max-row-l1 distance between stochastic matrices never reaches 2
        # with strict inequality, so eps = 2 makes every trial succeed
        report = empirical_risk(
            matrix_learner(), [("flat", constant_rows)], m=50, eps=2.0, trials=40, seed=2
        )
        assert report.empirical_risk == 0.0

    def test_risk_decreases_with_m(self, constant_rows):
        low = empirical_risk(
            matrix_learner(), [("flat", constant_rows)], m=100_000, eps=0.05, trials=30, seed=3
        )
        high = empirical_risk(
            matrix_learner(), [("flat", constant_rows)], m=1_000, eps=0.05, trials=30, seed=3
        )
        assert low.empirical_risk <= high.empirical_risk

    def test_reports_worst_chain(self, constant_rows, reflecting_walk):
        family = [("fast", constant_rows), ("slow-lazy", lazy(reflecting_walk, 0.9))]
        report = empirical_risk(matrix_learner(), family, m=300, eps=0.15, trials=30, seed=4)
        assert report.worst_chain_tag == "slow-lazy"
        assert set(report.per_chain) == {"fast", "slow-lazy"}

    def test_deterministic_given_seed(self, constant_rows):
        a = empirical_risk(matrix_learner(), [("flat", constant_rows)], 500, 0.1, 20, seed=5)
        b = empirical_risk(matrix_learner(), [("flat", constant_rows)], 500, 0.1, 20, seed=5)
        assert a == b

    def test_threads_do_not_change_results(self, constant_rows):
        a = empirical_risk(matrix_learner(), [("flat", constant_rows)], 500, 0.1, 20, seed=6)
        b = empirical_risk(
            matrix_learner(), [("flat", constant_rows)], 500, 0.1, 20, seed=6, threads=4
        )
        assert a == b


class TestSampleComplexity:
    def test_oracle_hits_first_grid_point(self, constant_rows):
        curve = empirical_sample_complexity(
            oracle_estimator(), [("flat", constant_rows)],
            eps=0.1, delta=0.25, m_grid=[10, 100], trials=20, seed=7,
        )
        assert curve.m0_hat == 10
        assert curve.risks == (0.0, 0.0)

    def test_absent_when_never_below_delta(self, reflecting_walk):
        curve = empirical_sample_complexity(
            matrix_learner(0.5), [("walk", lazy(reflecting_walk, 0.5))],
            eps=0.001, delta=0.05, m_grid=[10, 20], trials=10, seed=8,
        )
        assert curve.m0_hat is None

    def test_grid_must_increase(self, constant_rows):
        with pytest.raises(BadSpec):
            empirical_sample_complexity(
                oracle_estimator(), [("flat", constant_rows)],
                eps=0.1, delta=0.5, m_grid=[100, 100], trials=5, seed=9,
            )

    def test_extended_learner_reaches_target_on_periodic_chain(self, reflecting_walk):
        curve = empirical_sample_complexity(
            matrix_learner(alpha=0.5), [("walk", reflecting_walk)],
            eps=0.1, delta=0.25, m_grid=[300, 3000, 30000], trials=25, seed=10,
        )
        assert curve.m0_hat is not None and curve.m0_hat <= 30000

    def test_alpha_sweep_cost_grows_toward_one(self, reflecting_walk):
        # qualitative trend only: heavier laziness needs longer trajectories
        m0 = {}
        for alpha in (0.1, 0.5, 0.9):
            curve = empirical_sample_complexity(
                matrix_learner(alpha=alpha), [("walk", reflecting_walk)],
                eps=0.1, delta=0.25, m_grid=[1_000, 10_000, 100_000], trials=20,
                seed=11,
            )
            assert curve.m0_hat is not None
            m0[alpha] = curve.m0_hat
        assert m0[0.1] <= m0[0.5] <= m0[0.9]
        assert m0[0.9] > m0[0.1]


class TestAnalyticChecks:
    def test_mixing_bound_on_half_lazy_walk(self, reflecting_walk):
        report = verify_lazy_mixing_bound(lazy(reflecting_walk, 0.5))
        assert report.ok
        quarter_rows = [r for r in report.rows if r["eps"] == 0.25]
        assert all(r["ok_particular"] for r in quarter_rows)

    def test_mixing_bound_trivial_on_rank_one(self, constant_rows):
        report = verify_lazy_mixing_bound(constant_rows)
        assert report.ok
        assert all(r["t_base_half_eps"] == 1 for r in report.rows)

    def test_mixing_bound_rejects_periodic(self, reflecting_walk):
        with pytest.raises(NotErgodic):
            verify_lazy_mixing_bound(reflecting_walk)

    def test_gap_lower_bound_example_numbers(self, constant_rows):
        report = verify_lazy_gap_lower_bound([("flat", constant_rows)], alpha_grid=(0.5,))
        assert report.ok
        row = report.rows[0]
        assert row["lhs"] == pytest.approx(0.75, abs=1e-9)  # gap of half-lazy reversibilization
        assert row["rhs"] == pytest.approx(0.5, abs=1e-9)

    def test_gap_lower_bound_identity_heavy(self, constant_rows):
        report = verify_lazy_gap_lower_bound([("flat", constant_rows)], alpha_grid=(0.9,))
        assert report.ok

    def test_ratio_scan_flat_example(self, constant_rows):
        scan = scan_lazy_gap_ratio([("flat", constant_rows)], alpha_grid=(0.5,))
        assert scan.rows[0]["ratio"] == pytest.approx(1.5, abs=1e-9)
        assert scan.ok and scan.asserted == 1

    def test_ratio_scan_observational_on_leaky_cycle(self):
        leak = 0.05
        cycle = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
        M = validate_stochastic((1 - leak) * cycle + leak / 3)
        scan = scan_lazy_gap_ratio([("leaky-cycle", M)], alpha_grid=(0.1, 0.5))
        assert scan.ok  # nothing asserted unless argmax sits at k = 1
        assert np.isfinite(scan.min_ratio)
        assert 3 in scan.per_d_min

    def test_step_cost_report(self, constant_rows):
        report = verify_binomial_cost(
            constant_rows, uniform_distribution(3), alpha=0.5, m=101, trials=20_000, seed=12
        )
        assert report.ok
        assert report.expected_mean == pytest.approx(50.0)
        assert report.mean == pytest.approx(50.0, abs=0.5)

    def test_step_cost_alpha_point_nine(self, constant_rows):
        report = verify_binomial_cost(
            constant_rows, uniform_distribution(3), alpha=0.9, m=101, trials=20_000, seed=13
        )
        assert report.ok
        assert report.expected_mean == pytest.approx(10.0)
        assert report.mean == pytest.approx(10.0, abs=0.3)


class TestReportPlumbing:
    def test_reports_are_jsonable(self, constant_rows):
        report = empirical_risk(
            oracle_estimator(), [("flat", constant_rows)], m=10, eps=0.1, trials=5, seed=14
        )
        doc = jsonable(report)
        assert doc["empirical_risk"] == 0.0
        assert isinstance(doc["ci95"], list)

    def test_risk_report_is_frozen(self, constant_rows):
        report = empirical_risk(
            oracle_estimator(), [("flat", constant_rows)], m=10, eps=0.1, trials=5, seed=15
        )
        with pytest.raises(dataclasses.FrozenInstanceError):
            report.m = 11
