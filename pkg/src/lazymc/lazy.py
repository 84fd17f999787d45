"""Lazy smoothing of a chain and coin-toss trajectory simulation.

The alpha-lazy version of a chain keeps the current state with probability
``alpha`` and otherwise moves according to the base chain, i.e. its
transition matrix is ``alpha * I + (1 - alpha) * M``.  Any irreducible chain
becomes ergodic this way, at the cost of slowing down by roughly a
``1 - alpha`` factor.

Simulation mirrors that construction literally: each step tosses a biased
coin and only on heads advances the base chain (which may still land on the
same state).  ``m_act`` counts the heads, i.e. the number of genuine base
chain transitions consumed.  Under our convention the first sample is free
(no coin for the initial draw), so ``m_act ~ Binomial(m - 1, 1 - alpha)``.

Randomness comes from numpy's counter-based Philox generator so that
trajectories are reproducible across platforms and across parallel trials;
the algorithm identifier is recorded on every trajectory.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .chain import (
    Distribution,
    MatrixLike,
    StochasticMatrix,
    VectorLike,
    as_distribution,
    as_stochastic,
    validate_stochastic,
)
from .errors import BadAlpha, BadLength, ShapeMismatch

__all__ = [
    "RNG_ALGORITHM",
    "LazyTrajectory",
    "lazy",
    "unlazy",
    "in_lazy_range",
    "simulate",
    "simulate_lazy",
    "simulate_lazy_step_counts",
    "path_probability",
    "coin_path_probability",
]

RNG_ALGORITHM = "numpy-philox4x64"


def _check_alpha(alpha: float) -> float:
    if not (0.0 < alpha < 1.0):
        raise BadAlpha(f"alpha must lie strictly in (0, 1), got {alpha}", alpha=alpha)
    return float(alpha)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def lazy(M: MatrixLike, alpha: float) -> StochasticMatrix:
    """Alpha-lazy version ``alpha * I + (1 - alpha) * M``.

    Preserves the stationary law and reversibility; makes any irreducible
    chain aperiodic.
    """
    M = as_stochastic(M)
    alpha = _check_alpha(alpha)
    return validate_stochastic(alpha * np.eye(M.d) + (1.0 - alpha) * M.entries)


def unlazy(N: MatrixLike, alpha: float) -> np.ndarray:
    """Affine inverse of :func:`lazy`: ``(N - alpha * I) / (1 - alpha)``.

    Returns a raw array because the result need not be stochastic: when a
    diagonal entry of ``N`` is below ``alpha`` the corresponding diagonal
    entry comes out negative.  Off-diagonal entries stay nonnegative and
    rows still sum to 1.
    """
    N = as_stochastic(N)
    alpha = _check_alpha(alpha)
    return (N.entries - alpha * np.eye(N.d)) / (1.0 - alpha)


def in_lazy_range(N: MatrixLike, alpha: float) -> bool:
    """Whether ``N`` is the alpha-lazy version of some chain, i.e. every
    diagonal entry is at least ``alpha`` (equivalently, :func:`unlazy` is
    entrywise nonnegative)."""
    N = as_stochastic(N)
    alpha = _check_alpha(alpha)
    return bool(np.all(np.diag(N.entries) >= alpha))


@dataclass(frozen=True)
class LazyTrajectory:
    """A simulated lazy path plus its provenance.

    states       the path over {0, ..., d-1}, length m
    m            simulated length
    m_act        number of steps where the base chain actually advanced
                 (0 <= m_act <= m - 1; the first sample costs no base step)
    seed         root seed of the trajectory
    alpha        laziness used
    initial_law  law of the first state
    rng_algorithm  fixed generator identifier for reproducibility
    """

    states: np.ndarray
    m: int
    m_act: int
    seed: int
    alpha: float
    initial_law: Distribution
    rng_algorithm: str = RNG_ALGORITHM


class _RowSampler:
    """Inverse-CDF sampler over the rows of a matrix.

    Cumulative sums are precomputed once per matrix; a draw is a bisection
    on the relevant row.
    """

    def __init__(self, entries: np.ndarray):
        self._cum = [row.cumsum().tolist() for row in entries]
        self._top = entries.shape[1] - 1

    def draw(self, row: int, u: float) -> int:
        return min(bisect_right(self._cum[row], u), self._top)


def _draw_from(cum: list, u: float, top: int) -> int:
    return min(bisect_right(cum, u), top)


def simulate(M: MatrixLike, mu: VectorLike, m: int, seed: int) -> np.ndarray:
    """Sample a length-``m`` path of the chain started from ``mu``.

    The path law is exactly ``mu(i_1) * prod_t M(i_t, i_{t+1})``; all draws
    are inverse-CDF lookups against precomputed cumulative rows.
    """
    M = as_stochastic(M)
    mu = as_distribution(mu)
    if mu.d != M.d:
        raise ShapeMismatch(f"initial law has d={mu.d}, chain has d={M.d}")
    if m < 1:
        raise BadLength(f"trajectory length must be >= 1, got {m}", m=m)
    rng = _rng(seed)
    sampler = _RowSampler(M.entries)
    top = M.d - 1
    cum_mu = mu.probs.cumsum().tolist()
    uniforms = rng.random(m)
    states = np.empty(m, dtype=np.int64)
    s = _draw_from(cum_mu, uniforms[0], top)
    states[0] = s
    for t in range(1, m):
        s = sampler.draw(s, uniforms[t])
        states[t] = s
    return states


def simulate_lazy(
    M: MatrixLike, mu: VectorLike, alpha: float, m: int, seed: int
) -> LazyTrajectory:
    """Simulate the alpha-lazy version of ``M`` by the coin construction.

    The first state is drawn from ``mu``; each later step draws an
    independent Bernoulli(1 - alpha) coin and advances the base chain only
    on heads.  The resulting path distribution equals that of the lazy
    matrix started from ``mu``, and ``m_act`` records the heads.
    """
    M = as_stochastic(M)
    mu = as_distribution(mu)
    if mu.d != M.d:
        raise ShapeMismatch(f"initial law has d={mu.d}, chain has d={M.d}")
    alpha = _check_alpha(alpha)
    if m < 1:
        raise BadLength(f"trajectory length must be >= 1, got {m}", m=m)
    rng = _rng(seed)
    sampler = _RowSampler(M.entries)
    top = M.d - 1
    cum_mu = mu.probs.cumsum().tolist()

    u_init = rng.random()
    heads = rng.random(m - 1) < (1.0 - alpha) if m > 1 else np.zeros(0, dtype=bool)
    m_act = int(heads.sum())
    move_uniforms = iter(rng.random(m_act))

    states = np.empty(m, dtype=np.int64)
    s = _draw_from(cum_mu, u_init, top)
    states[0] = s
    for t in range(1, m):
        if heads[t - 1]:
            s = sampler.draw(s, next(move_uniforms))
        states[t] = s
    return LazyTrajectory(
        states=states,
        m=m,
        m_act=m_act,
        seed=int(seed),
        alpha=alpha,
        initial_law=mu,
    )


def simulate_lazy_step_counts(
    M: MatrixLike, mu: VectorLike, alpha: float, m: int, trials: int, seed: int
) -> np.ndarray:
    """``m_act`` for many independent lazy trajectories, vectorized over
    trials.

    Follows the same per-step construction as :func:`simulate_lazy` (coin,
    then inverse-CDF move for the movers) with all trials advanced in
    lockstep, which keeps large ensembles affordable.  Only the step counts
    are returned.
    """
    M = as_stochastic(M)
    mu = as_distribution(mu)
    alpha = _check_alpha(alpha)
    if m < 1:
        raise BadLength(f"trajectory length must be >= 1, got {m}", m=m)
    if trials < 1:
        raise BadLength(f"trials must be >= 1, got {trials}", trials=trials)
    rng = _rng(seed)
    cum_rows = M.entries.cumsum(axis=1)
    cum_mu = mu.probs.cumsum()

    states = (rng.random(trials)[:, None] >= cum_mu[None, :]).sum(axis=1)
    states = np.minimum(states, M.d - 1)
    m_act = np.zeros(trials, dtype=np.int64)
    for _ in range(m - 1):
        heads = rng.random(trials) < (1.0 - alpha)
        u = rng.random(trials)
        rows = cum_rows[states]
        moved = np.minimum((u[:, None] >= rows).sum(axis=1), M.d - 1)
        states = np.where(heads, moved, states)
        m_act += heads
    return m_act


def path_probability(N: MatrixLike, mu: VectorLike, path) -> float:
    """Exact probability of a concrete path under chain ``N`` started from
    ``mu``."""
    N = as_stochastic(N)
    mu = as_distribution(mu)
    path = list(path)
    if not path:
        raise BadLength("path must be nonempty", m=0)
    p = float(mu.probs[path[0]])
    for i, j in zip(path, path[1:]):
        p *= float(N.entries[i, j])
    return p


def coin_path_probability(M: MatrixLike, mu: VectorLike, alpha: float, path) -> float:
    """Probability of a concrete path under the coin construction.

    Sums, step by step, over the two coin outcomes: tails keeps the state
    (contributing ``alpha`` if the path repeats) and heads moves by the base
    chain (contributing ``(1 - alpha) * M(i, j)``).  Agrees exactly with the
    path law of the lazy matrix; the two are computed through different code
    paths so their agreement is a real check of the construction.
    """
    M = as_stochastic(M)
    mu = as_distribution(mu)
    alpha = _check_alpha(alpha)
    path = list(path)
    if not path:
        raise BadLength("path must be nonempty", m=0)
    p = float(mu.probs[path[0]])
    for i, j in zip(path, path[1:]):
        stay = alpha if i == j else 0.0
        p *= stay + (1.0 - alpha) * float(M.entries[i, j])
    return p
