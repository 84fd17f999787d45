"""Plug-in single-trajectory estimators and tester, plus the lazy extension
combinators that lift them from ergodic chains to merely irreducible ones.

The estimators are deliberately transparent: empirical transition
frequencies for matrix learning, empirical visit frequencies for the minimum
stationary probability, and a threshold-at-midpoint plug-in identity tester.
The extension recipe wraps any of them: simulate the lazy chain, estimate
there, and pull the answer back.

For matrix learning the pull-back is ``project_matrix . unlazy`` with the
accuracy budget shrunk by ``1 - alpha``: whenever the lazy-stage estimate is
within ``(1 - alpha) * eps`` of the lazy matrix (in the max-row-l1 norm),
the pulled-back estimate is within ``eps`` of the true chain.  For the
minimum stationary probability the pull-back is the identity because lazy
smoothing preserves the stationary law.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

import numpy as np

from .chain import (
    MatrixLike,
    StochasticMatrix,
    VectorLike,
    as_distribution,
    as_stochastic,
    inf_norm_distance,
    stationary,
    uniform_distribution,
    validate_stochastic,
    edge_measure,
    is_reversible,
)
from .errors import CounterexampleMismatch, PathTooShort, UnvisitedState
from .lazy import lazy, simulate_lazy, unlazy
from .projection import project_matrix
from .spectral import pseudo_spectral_gap

__all__ = [
    "EstimationProblem",
    "ExtensionMaps",
    "LearnReport",
    "pi_star_problem",
    "matrix_problem",
    "identity_extension_maps",
    "matrix_extension_maps",
    "learn_matrix_direct",
    "learn_matrix_extended",
    "estimate_pi_star",
    "identity_test",
    "identity_test_extended",
    "ExtensionConditionReport",
    "check_extension_condition",
    "extension_budget_holds",
    "counterexample_report",
]


@dataclass(frozen=True)
class EstimationProblem:
    """A chain parameter, the metric its estimates are judged by, and a tag
    describing the restricted chain class the guarantees refer to."""

    theta: Callable[[StochasticMatrix], Any]
    rho: Callable[[Any, Any], float]
    restricted_class_tag: str


@dataclass(frozen=True)
class ExtensionMaps:
    """Pull-back map on parameter values and accuracy-budget map.

    The pair is valid for a problem and a transform ``phi`` when closeness
    to the transformed parameter at budget ``ell(eps)`` forces the pulled
    back value within ``eps`` of the original parameter.
    """

    g: Callable[[Any], Any]
    ell: Callable[[float], float]


def pi_star_problem(tag: str = "ergodic floor class") -> EstimationProblem:
    """Minimum stationary probability, judged in relative error."""
    return EstimationProblem(
        theta=lambda M: float(stationary(M).probs.min()),
        rho=lambda x, y: abs(x / y - 1.0),
        restricted_class_tag=tag,
    )


def matrix_problem(tag: str = "ergodic floor class") -> EstimationProblem:
    """The transition matrix itself, judged in the max-row-l1 norm."""
    return EstimationProblem(
        theta=lambda M: as_stochastic(M),
        rho=inf_norm_distance,
        restricted_class_tag=tag,
    )


def identity_extension_maps() -> ExtensionMaps:
    """g = identity, ell = identity; correct whenever the parameter is
    invariant under the transform (e.g. the minimum stationary probability
    under lazy smoothing)."""
    return ExtensionMaps(g=lambda x: x, ell=lambda eps: eps)


def matrix_extension_maps(alpha: float) -> ExtensionMaps:
    """Pull-back for matrix learning through the alpha-lazy transform:
    un-lazy then project each row back onto the simplex, with the budget
    shrunk to ``(1 - alpha) * eps``."""
    return ExtensionMaps(
        g=lambda N: project_matrix(unlazy(as_stochastic(N), alpha)),
        ell=lambda eps: (1.0 - alpha) * eps,
    )


@dataclass(frozen=True)
class LearnReport:
    """Outcome of a learning run.

    estimate     the learned object (a stochastic matrix here)
    m_used       simulated trajectory length
    alpha        laziness used; 0 means the chain was sampled directly
    diagnostics  visit counts per state plus, for extended runs, the
                 lazy-stage estimate and the actual base-step count
    """

    estimate: StochasticMatrix
    m_used: int
    alpha: float
    diagnostics: dict = field(default_factory=dict)


def _transition_counts(path: np.ndarray, d: int) -> np.ndarray:
    counts = np.zeros((d, d), dtype=np.int64)
    np.add.at(counts, (path[:-1], path[1:]), 1)
    return counts


def learn_matrix_direct(path, d: int) -> StochasticMatrix:
    """Empirical transition frequencies of a path over ``{0, ..., d-1}``.

    Row i is the empirical distribution of the successors of i; rows never
    left are defaulted to uniform (the maximum-entropy choice keeps the
    estimate stochastic without biasing observed rows).
    """
    path = np.asarray(path, dtype=np.int64)
    if path.ndim != 1 or path.size < 2:
        raise PathTooShort(f"need a path of length >= 2, got {path.size}", m=int(path.size))
    counts = _transition_counts(path, d)
    totals = counts.sum(axis=1, keepdims=True)
    est = np.where(totals > 0, counts / np.maximum(totals, 1), 1.0 / d)
    return validate_stochastic(est)


def learn_matrix_extended(
    M: MatrixLike,
    mu: VectorLike,
    alpha: float,
    m: int,
    seed: int,
) -> LearnReport:
    """Learn an irreducible chain through its lazy version.

    Simulates ``m`` steps of the alpha-lazy chain (sampling access to the
    unknown chain is all this requires), learns the lazy matrix by empirical
    frequencies, then pulls back with un-lazy followed by row-wise simplex
    projection.  Works for periodic chains, where direct ergodic-theory
    guarantees are vacuous.
    """
    M = as_stochastic(M)
    traj = simulate_lazy(M, mu, alpha, m, seed)
    lazy_estimate = learn_matrix_direct(traj.states, M.d)
    estimate = project_matrix(unlazy(lazy_estimate, alpha))
    visit_counts = np.bincount(traj.states, minlength=M.d)
    return LearnReport(
        estimate=estimate,
        m_used=m,
        alpha=alpha,
        diagnostics={
            "visit_counts": visit_counts,
            "lazy_estimate": lazy_estimate,
            "m_act": traj.m_act,
        },
    )


def learn_matrix(
    M: MatrixLike, mu: VectorLike, m: int, seed: int, alpha: float = 0.0
) -> LearnReport:
    """Direct (alpha = 0) or extended (alpha in (0, 1)) matrix learning from
    a single simulated trajectory."""
    from .lazy import simulate  # local import to avoid cycle noise

    M = as_stochastic(M)
    if alpha == 0.0:
        path = simulate(M, mu, m, seed)
        estimate = learn_matrix_direct(path, M.d)
        return LearnReport(
            estimate=estimate,
            m_used=m,
            alpha=0.0,
            diagnostics={"visit_counts": np.bincount(path, minlength=M.d)},
        )
    return learn_matrix_extended(M, mu, alpha, m, seed)


def estimate_pi_star(path, d: int) -> float:
    """Minimum empirical visit frequency over all states.

    All states must appear in the path; otherwise the minimum would be a
    spurious zero and ``UnvisitedState`` reports the missing state.  The
    same estimator serves lazy paths unchanged, because lazy smoothing
    leaves the stationary law alone.
    """
    path = np.asarray(path, dtype=np.int64)
    if path.size < 1:
        raise PathTooShort("need a nonempty path", m=0)
    counts = np.bincount(path, minlength=d)
    if np.any(counts == 0):
        missing = int(np.nonzero(counts == 0)[0][0])
        raise UnvisitedState(f"state {missing} was never visited", state=missing)
    return float(counts.min() / path.size)


def identity_test(path, M_bar: MatrixLike, eps: float) -> int:
    """Plug-in identity tester.

    Learns the chain from the path and answers 1 ("different") iff the
    learned matrix is farther than ``eps / 2`` from the reference in the
    max-row-l1 norm.  The midpoint threshold balances the two error kinds
    symmetrically between the null (distance 0) and the alternative
    (distance > eps).
    """
    M_bar = as_stochastic(M_bar)
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must lie in (0, 1)")
    estimate = learn_matrix_direct(path, M_bar.d)
    return int(inf_norm_distance(estimate, M_bar) > eps / 2.0)


def identity_test_extended(
    M: MatrixLike,
    mu: VectorLike,
    M_bar: MatrixLike,
    alpha: float,
    eps: float,
    m: int,
    seed: int,
) -> int:
    """Identity testing through the lazy transform.

    Simulates the lazy version of the unknown chain, compares against the
    lazy version of the reference, and shrinks the separation budget to
    ``(1 - alpha) * eps`` (distances contract exactly by ``1 - alpha`` under
    the transform).
    """
    M = as_stochastic(M)
    traj = simulate_lazy(M, mu, alpha, m, seed)
    return identity_test(traj.states, lazy(M_bar, alpha), (1.0 - alpha) * eps)


@dataclass(frozen=True)
class ExtensionConditionReport:
    """Outcome of checking the extension condition on a sample of triples."""

    checked: int
    violations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_extension_condition(
    problem: EstimationProblem,
    maps: ExtensionMaps,
    phi: Callable[[StochasticMatrix], StochasticMatrix],
    samples: Iterable[tuple],
) -> ExtensionConditionReport:
    """Check, on finitely many ``(x, M, eps)`` triples, that closeness to the
    transformed parameter at budget ``ell(eps)`` implies closeness of the
    pulled-back value to the original parameter at ``eps``.

    Violations are collected, not raised, so a deliberately broken pull-back
    shows up as a nonempty violation list.
    """
    violations = []
    checked = 0
    for index, (x, M, eps) in enumerate(samples):
        M = as_stochastic(M)
        checked += 1
        lhs = problem.rho(x, problem.theta(phi(M)))
        budget = maps.ell(eps)
        if lhs < budget:
            rhs = problem.rho(maps.g(x), problem.theta(M))
            if not rhs < eps:
                violations.append(
                    {"index": index, "lhs": float(lhs), "budget": float(budget),
                     "rhs": float(rhs), "eps": float(eps)}
                )
    return ExtensionConditionReport(checked=checked, violations=tuple(violations))


def extension_budget_holds(
    M: MatrixLike, report: LearnReport, eps: float
) -> tuple[float, float, bool]:
    """Deterministic per-run check of the pull-back budget for an extended
    learning run against the (known) true chain.

    Returns ``(lazy_error, final_error, ok)`` where ``ok`` is False only if
    the lazy-stage error beat its shrunken budget yet the pulled-back error
    missed ``eps`` (which the projection guarantee rules out).
    """
    M = as_stochastic(M)
    alpha = report.alpha
    lazy_est = report.diagnostics["lazy_estimate"]
    lazy_error = inf_norm_distance(lazy_est, lazy(M, alpha))
    final_error = inf_norm_distance(report.estimate, M)
    ok = not (lazy_error < (1.0 - alpha) * eps and final_error >= eps)
    return lazy_error, final_error, ok


_REFLECTING_WALK = [[0.0, 1.0, 0.0], [0.5, 0.0, 0.5], [0.0, 1.0, 0.0]]
_CONSTANT_ROWS = [[0.5, 0.2, 0.3]] * 3

_EXPECTED = {
    "pi_walk": (0.25, 0.5, 0.25),
    "pi_flat": (0.5, 0.2, 0.3),
    "edge_walk": ((0.0, 0.25, 0.0), (0.25, 0.0, 0.25), (0.0, 0.25, 0.0)),
    "edge_flat": ((0.25, 0.1, 0.15), (0.1, 0.04, 0.06), (0.15, 0.06, 0.09)),
    "gap_walk": 0.0,
    "gap_flat": 1.0,
    "gap_lazy_walk": 0.75,
    "gap_lazy_flat": 0.75,
}


def counterexample_report(tol: float = 1e-9) -> dict:
    """Recompute the half-lazy indistinguishability example.

    A periodic reflecting walk on three states and a rank-one chain have
    pseudo spectral gaps 0 and 1, yet their half-lazy versions share the gap
    0.75: the quantity collapses under the transform, which is exactly why
    no continuous pull-back can recover it.  This function recomputes all
    the involved quantities (stationary laws, edge measures, reversibility,
    the four gaps) and checks them against their known closed-form values,
    raising ``CounterexampleMismatch`` on any deviation beyond ``tol``.
    """
    walk = validate_stochastic(_REFLECTING_WALK)
    flat = validate_stochastic(_CONSTANT_ROWS)
    half_walk = lazy(walk, 0.5)
    half_flat = lazy(flat, 0.5)

    computed = {
        "pi_walk": tuple(stationary(walk).probs),
        "pi_flat": tuple(stationary(flat).probs),
        "edge_walk": tuple(map(tuple, edge_measure(walk))),
        "edge_flat": tuple(map(tuple, edge_measure(flat))),
        "gap_walk": pseudo_spectral_gap(walk).value,
        "gap_flat": pseudo_spectral_gap(flat).value,
        "gap_lazy_walk": pseudo_spectral_gap(half_walk).value,
        "gap_lazy_flat": pseudo_spectral_gap(half_flat).value,
    }
    reversible = {
        "walk": is_reversible(walk),
        "flat": is_reversible(flat),
    }

    deviations = {}
    for key, expected in _EXPECTED.items():
        got = np.asarray(computed[key], dtype=float)
        deviations[key] = float(np.abs(got - np.asarray(expected, dtype=float)).max())
    worst = max(deviations.values())
    if worst > tol or not all(reversible.values()):
        raise CounterexampleMismatch(
            f"recomputed counterexample deviates by {worst:g} from its closed-form values",
            deviations=deviations,
            reversible=reversible,
        )
    if not (
        abs(computed["gap_lazy_walk"] - computed["gap_lazy_flat"]) <= tol
        and abs(computed["gap_walk"] - computed["gap_flat"]) > 0.5
    ):
        raise CounterexampleMismatch(
            "lazy gaps should coincide while the originals differ",
            computed={k: float(np.max(v)) for k, v in computed.items()},
        )
    return {
        "computed": computed,
        "expected": _EXPECTED,
        "reversible": reversible,
        "max_deviation": worst,
        "tolerance": tol,
    }
