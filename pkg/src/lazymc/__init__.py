"""lazymc: lazy-smoothing toolkit for finite Markov chains.

Structural and spectral analysis of row-stochastic matrices, the alpha-lazy
transform with coin-toss simulation, l1 simplex projection, single-trajectory
plug-in estimators with lazy extension pull-backs, and a seeded Monte Carlo
harness that verifies the library's analytic claims numerically.
"""

from .chain import (
    ChainProfile,
    Distribution,
    StochasticMatrix,
    chi_square_norm,
    edge_measure,
    inf_norm_distance,
    is_ergodic,
    is_irreducible,
    is_reversible,
    period,
    point_mass,
    profile,
    reversibilization,
    stationary,
    time_reversal,
    uniform_distribution,
    validate_distribution,
    validate_stochastic,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import LazymcError
from .estimators import (
    EstimationProblem,
    ExtensionMaps,
    LearnReport,
    check_extension_condition,
    counterexample_report,
    estimate_pi_star,
    extension_budget_holds,
    identity_extension_maps,
    identity_test,
    identity_test_extended,
    learn_matrix,
    learn_matrix_direct,
    learn_matrix_extended,
    matrix_extension_maps,
    matrix_problem,
    pi_star_problem,
)
from .harness import (
    ChainFamilySpec,
    EstimatorConfig,
    RiskReport,
    SampleComplexityCurve,
    empirical_risk,
    empirical_sample_complexity,
    generate_chain,
    generate_family,
    matrix_learner,
    oracle_estimator,
    pi_star_estimator,
    run_claim_suite,
    scan_lazy_gap_ratio,
    verify_binomial_cost,
    verify_lazy_gap_lower_bound,
    verify_lazy_mixing_bound,
)
from .lazy import (
    LazyTrajectory,
    coin_path_probability,
    in_lazy_range,
    lazy,
    path_probability,
    simulate,
    simulate_lazy,
    simulate_lazy_step_counts,
    unlazy,
)
from .projection import (
    ProjectionResult,
    project_matrix,
    project_simplex_general,
    project_simplex_rowsum1,
)
from .spectral import (
    PseudoSpectralGap,
    SpectralReport,
    build_spectral_report,
    jacobi_eigenvalues,
    mixing_time,
    pseudo_spectral_gap,
    reversible_spectrum,
    spectral_gaps,
    tv_distance,
    worst_case_decay,
)

__version__ = "0.1.0"
