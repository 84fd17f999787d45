"""Spectral gaps, pseudo spectral gap, total-variation decay and mixing times.

Every spectrum computed here is that of a symmetrizable matrix: a reversible
chain ``M`` is similar to the symmetric ``diag(pi)^(1/2) M diag(pi)^(-1/2)``,
and multiplicative reversibilizations are always reversible.  A cyclic Jacobi
eigensolver therefore covers all our needs without pulling in a nonsymmetric
eigenpackage.

Classical two-sided mixing-time bounds are evaluated alongside the report and
surfaced as cross-check flags:

* for ergodic chains with positive pseudo spectral gap,
  ``1 / (2 gamma_ps) <= t_mix <= (1 / gamma_ps) (1 + 2 ln 2 + ln(1 / pi_star))``
* for reversible ergodic chains,
  ``(1 / gamma_star - 1) ln 2 <= t_mix <= (1 / gamma_star) ln(4 / pi_star)``

The report also records the stricter variant of the first lower bound without
the factor 2 (``1 / gamma_ps <= t_mix``); that variant fails for very fast
mixing chains (e.g. ``[[0.6, 0.4], [0.4, 0.6]]``) and is reported for
inspection only, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .chain import (
    Distribution,
    MatrixLike,
    StochasticMatrix,
    as_stochastic,
    is_irreducible,
    is_reversible,
    period,
    stationary,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    CapExceeded,
    NoConvergence,
    NotErgodic,
    NotIrreducible,
    NotReversible,
    ShapeMismatch,
)

__all__ = [
    "jacobi_eigenvalues",
    "reversible_spectrum",
    "spectral_gaps",
    "PseudoSpectralGap",
    "pseudo_spectral_gap",
    "tv_distance",
    "worst_case_decay",
    "mixing_time",
    "SpectralReport",
    "build_spectral_report",
]


def jacobi_eigenvalues(
    sym: np.ndarray,
    *,
    offdiag_tol: float = DEFAULT_TOLERANCES.jacobi_offdiag,
    max_sweeps: int = DEFAULT_TOLERANCES.jacobi_max_sweeps,
) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps all upper-triangle pairs in row order, rotating each to zero,
    until the off-diagonal Frobenius norm drops below ``offdiag_tol``.

    Returns the eigenvalues sorted in descending order.  Raises
    ``NoConvergence`` if the sweep cap is hit first.
    """
    A = np.array(sym, dtype=float, copy=True)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ShapeMismatch(f"expected a square matrix, got shape {A.shape}")
    if n == 1:
        return A[0, :1].copy()
    off = math.inf
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.tril(A, -1) ** 2)))
        if off <= offdiag_tol:
            return np.sort(np.diag(A))[::-1].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, q] = 0.0
                A[q, p] = 0.0
    raise NoConvergence(
        f"Jacobi did not reach off-diagonal norm {offdiag_tol:g} in {max_sweeps} sweeps",
        offdiag=off,
        max_sweeps=max_sweeps,
    )


def _symmetrized(entries: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """Similarity transform diag(pi)^(1/2) A diag(pi)^(-1/2), exactly
    symmetrized to kill float asymmetry."""
    sq = np.sqrt(pi)
    S = sq[:, None] * entries / sq[None, :]
    return (S + S.T) / 2.0


def reversible_spectrum(
    M: MatrixLike,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Real spectrum of an irreducible reversible chain, sorted descending.

    Raises ``NotIrreducible`` / ``NotReversible`` when the preconditions
    fail, and ``NoConvergence`` if the eigensolver stalls.
    """
    M = as_stochastic(M)
    pi = stationary(M, tolerances=tolerances).probs
    Q = pi[:, None] * M.entries
    if np.abs(Q - Q.T).max() > tolerances.identity:
        raise NotReversible(
            "chain does not satisfy detailed balance",
            asymmetry=float(np.abs(Q - Q.T).max()),
        )
    return jacobi_eigenvalues(
        _symmetrized(M.entries, pi),
        offdiag_tol=tolerances.jacobi_offdiag,
        max_sweeps=tolerances.jacobi_max_sweeps,
    )


def spectral_gaps(M: MatrixLike) -> tuple[float, float]:
    """(gamma, gamma_star) of an irreducible reversible chain.

    ``gamma = 1 - lambda_2`` and ``gamma_star = 1 - max(lambda_2, |lambda_d|)``.
    """
    eig = reversible_spectrum(M)
    gamma = float(1.0 - eig[1])
    gamma_star = float(1.0 - max(eig[1], abs(eig[-1])))
    return gamma, gamma_star


@dataclass(frozen=True)
class PseudoSpectralGap:
    """Result of the pseudo-spectral-gap scan.

    value      the maximum over k of gap(reversibilization(M^k)) / k
    argmax_k   smallest k attaining the maximum; 0 when the chain is periodic
               (the gap is 0 and no k attains it)
    capped     True when the scan stopped at the safety cap, in which case
               ``value`` is only a lower bound
    stop       which stop fired: "periodic", "analytic" or "k-cap"
    """

    value: float
    argmax_k: int
    capped: bool
    stop: str


def pseudo_spectral_gap(
    M: MatrixLike,
    k_cap: int = DEFAULT_TOLERANCES.pseudo_gap_k_cap,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> PseudoSpectralGap:
    """Pseudo spectral gap: ``max_k gap(reversibilization(M^k)) / k``.

    The reversibilization of any power is reversible with nonnegative
    spectrum, so each term is at most ``1/k``; the scan therefore stops at
    the first k with ``1/(k+1) <= best`` (no larger k can win).  Periodic
    irreducible chains short-circuit to 0: every power keeps a multiple
    eigenvalue at 1, so no k contributes, and the analytic stop would never
    fire.
    """
    M = as_stochastic(M)
    if k_cap < 1:
        raise ValueError("k_cap must be >= 1")
    if not is_irreducible(M):
        raise NotIrreducible("pseudo spectral gap needs an irreducible chain")
    if period(M) > 1:
        return PseudoSpectralGap(value=0.0, argmax_k=0, capped=False, stop="periodic")
    pi = stationary(M, tolerances=tolerances).probs
    entries = M.entries
    best = 0.0
    best_k = 0
    power = np.eye(M.d)
    k = 0
    while True:
        k += 1
        power = power @ entries
        reversed_power = (power.T * pi[None, :]) / pi[:, None]
        dagger = reversed_power @ power
        eig = jacobi_eigenvalues(
            _symmetrized(dagger, pi),
            offdiag_tol=tolerances.jacobi_offdiag,
            max_sweeps=tolerances.jacobi_max_sweeps,
        )
        value = max(0.0, (1.0 - float(eig[1])) / k)
        if value > best:
            best = value
            best_k = k
        if 1.0 / (k + 1) <= best:
            return PseudoSpectralGap(best, best_k, capped=False, stop="analytic")
        if k >= k_cap:
            return PseudoSpectralGap(best, best_k, capped=True, stop="k-cap")


def tv_distance(mu, nu) -> float:
    """Total variation distance between two probability vectors."""
    a = np.asarray(mu, dtype=float)
    b = np.asarray(nu, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return float(0.5 * np.abs(a - b).sum())


def _require_ergodic(M: StochasticMatrix) -> Distribution:
    if not is_irreducible(M):
        raise NotErgodic("chain is not irreducible")
    if period(M) != 1:
        raise NotErgodic("chain is periodic")
    return stationary(M)


def _decay(entries: np.ndarray, pi: np.ndarray, t: int) -> float:
    power = np.linalg.matrix_power(entries, t)
    return float(0.5 * np.abs(power - pi[None, :]).sum(axis=1).max())


def worst_case_decay(M: MatrixLike, t: int) -> float:
    """Worst-case total variation to stationarity after ``t`` steps:
    ``max_i TV(M^t(i, .), pi)``.  Exact, via repeated-squaring matrix power."""
    M = as_stochastic(M)
    if t < 0:
        raise ValueError("t must be >= 0")
    pi = _require_ergodic(M)
    return _decay(M.entries, pi.probs, t)


def mixing_time(
    M: MatrixLike,
    eps: float = 0.25,
    *,
    cap: int = DEFAULT_TOLERANCES.mixing_time_cap,
    debug_monotone: bool = False,
) -> int:
    """Least ``t >= 1`` with worst-case decay at most ``eps``.

    Found by doubling then binary search; sound because the worst-case decay
    is non-increasing in t (one extra step cannot increase the distance to
    stationarity).  With ``debug_monotone`` the probed points are re-checked
    for monotonicity.

    Raises ``NotErgodic`` for non-ergodic chains and ``CapExceeded`` past the
    hard cap.
    """
    M = as_stochastic(M)
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must lie in (0, 1)")
    pi = _require_ergodic(M).probs
    entries = M.entries
    probes: list[tuple[int, float]] = []

    def dec(t: int) -> float:
        value = _decay(entries, pi, t)
        probes.append((t, value))
        return value

    hi = 1
    while dec(hi) > eps:
        hi *= 2
        if hi > cap:
            raise CapExceeded(f"no t <= {cap} with decay <= {eps}", cap=cap, eps=eps)
    lo = hi // 2  # decay(lo) > eps when lo >= 1
    while hi - lo > 1 and lo >= 1:
        mid = (lo + hi) // 2
        if dec(mid) <= eps:
            hi = mid
        else:
            lo = mid
    if debug_monotone:
        probes.sort()
        values = [v for _, v in probes]
        if any(b > a + 1e-12 for a, b in zip(values, values[1:])):
            raise AssertionError("worst-case decay was not monotone on probed points")
    return hi


@dataclass(frozen=True)
class SpectralReport:
    """Spectral summary of an irreducible chain.

    ``eigenvalues``, ``gamma`` and ``gamma_star`` are only present for
    reversible chains; ``t_mix_quarter`` and the sandwich fields only for
    ergodic ones.  ``gamma_ps_argmax_k == 0`` flags the periodic
    short-circuit.  The ``paulin_*`` / ``levin_*`` fields are the two-sided
    mixing-time cross-checks described in the module docstring;
    ``paulin_lower_strict_ok`` records the no-factor-2 variant
    (observational).
    """

    d: int
    reversible: bool
    ergodic: bool
    pi_star: float
    eigenvalues: Optional[tuple[float, ...]]
    gamma: Optional[float]
    gamma_star: Optional[float]
    gamma_ps: float
    gamma_ps_argmax_k: int
    gamma_ps_capped: bool
    t_mix_quarter: Optional[int]
    paulin_lower: Optional[float] = None
    paulin_upper: Optional[float] = None
    paulin_ok: Optional[bool] = None
    paulin_lower_strict_ok: Optional[bool] = None
    levin_lower: Optional[float] = None
    levin_upper: Optional[float] = None
    levin_ok: Optional[bool] = None


def build_spectral_report(
    M: MatrixLike,
    k_cap: int = DEFAULT_TOLERANCES.pseudo_gap_k_cap,
    *,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> SpectralReport:
    """Compute all spectral quantities of an irreducible chain plus the
    mixing-time sandwich cross-checks."""
    M = as_stochastic(M)
    if not is_irreducible(M):
        raise NotIrreducible("spectral report needs an irreducible chain")
    pi = stationary(M, tolerances=tolerances)
    pi_star = float(pi.probs.min())
    reversible = is_reversible(M, tolerances=tolerances)
    ergodic = period(M) == 1

    eigenvalues = None
    gamma = gamma_star = None
    if reversible:
        eig = reversible_spectrum(M, tolerances=tolerances)
        if abs(eig[0] - 1.0) > tolerances.claim_slack or np.abs(eig).max() > 1.0 + tolerances.claim_slack:
            raise NoConvergence(
                "computed spectrum violates basic stochastic-matrix bounds",
                top=float(eig[0]),
                max_abs=float(np.abs(eig).max()),
            )
        eigenvalues = tuple(float(v) for v in eig)
        gamma = float(1.0 - eig[1])
        gamma_star = float(1.0 - max(eig[1], abs(eig[-1])))

    ps = pseudo_spectral_gap(M, k_cap, tolerances=tolerances)

    t_mix_quarter = None
    paulin_lower = paulin_upper = None
    paulin_ok = paulin_lower_strict_ok = None
    levin_lower = levin_upper = None
    levin_ok = None
    if ergodic:
        t_mix_quarter = mixing_time(M, 0.25, cap=tolerances.mixing_time_cap)
        slack = tolerances.claim_slack
        if ps.value > 0:
            paulin_lower = 1.0 / (2.0 * ps.value)
            paulin_upper = (1.0 + 2.0 * math.log(2.0) + math.log(1.0 / pi_star)) / ps.value
            paulin_ok = bool(
                paulin_lower - slack <= t_mix_quarter <= paulin_upper + slack
            )
            paulin_lower_strict_ok = bool(1.0 / ps.value - slack <= t_mix_quarter)
        if reversible and gamma_star is not None and gamma_star > 0:
            levin_lower = (1.0 / gamma_star - 1.0) * math.log(2.0)
            levin_upper = math.log(4.0 / pi_star) / gamma_star
            levin_ok = bool(levin_lower - slack <= t_mix_quarter <= levin_upper + slack)

    return SpectralReport(
        d=M.d,
        reversible=reversible,
        ergodic=ergodic,
        pi_star=pi_star,
        eigenvalues=eigenvalues,
        gamma=gamma,
        gamma_star=gamma_star,
        gamma_ps=ps.value,
        gamma_ps_argmax_k=ps.argmax_k,
        gamma_ps_capped=ps.capped,
        t_mix_quarter=t_mix_quarter,
        paulin_lower=paulin_lower,
        paulin_upper=paulin_upper,
        paulin_ok=paulin_ok,
        paulin_lower_strict_ok=paulin_lower_strict_ok,
        levin_lower=levin_lower,
        levin_upper=levin_upper,
        levin_ok=levin_ok,
    )
