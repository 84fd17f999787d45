"""Brute-force oracles used to cross-check the projection routines.

These are deliberately independent of the implementations they judge.  The
grid oracle minimizes the l1 distance over every simplex point of a regular
lattice; for speed it runs an exact min-plus dynamic program over integer
mass units (coordinate by coordinate, remaining budget in the state), which
returns the same minimum as naive lattice enumeration.  Enumeration itself
is kept (d <= 3) so the two oracles can validate each other in the tests.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "grid_min_l1_distances",
    "grid_min_l1_enumerated",
    "random_simplex_points",
    "adversarial_projection_inputs",
]


def _grid_min_dp(x: np.ndarray, steps: int) -> float:
    """Exact min of ||y - x||_1 over lattice points y with denominators
    ``steps``, by dynamic programming over (coordinate, remaining units)."""
    units = np.arange(steps + 1)
    values = units / steps
    # dp[s] = best cost of the coordinates handled so far, using s units
    dp = np.abs(values - x[0])
    gather = units[:, None] - units[None, :]  # dp index for (total s, spend k)
    invalid = gather < 0
    gather = np.maximum(gather, 0)
    for xi in x[1:]:
        cost = np.abs(values - xi)
        table = dp[gather] + cost[None, :]
        table[invalid] = np.inf
        dp = table.min(axis=1)
    return float(dp[steps])


def grid_min_l1_distances(X, resolution: float = 1e-3) -> np.ndarray:
    """Minimum l1 distance from each row of ``X`` to the simplex lattice of
    the given resolution (exact lattice minimum, any dimension)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    steps = round(1.0 / resolution)
    return np.array([_grid_min_dp(x, steps) for x in X])


def grid_min_l1_enumerated(X, resolution: float = 1e-3) -> np.ndarray:
    """Naive lattice enumeration (d <= 3); used to validate the DP oracle."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n, d = X.shape
    steps = round(1.0 / resolution)
    if d == 2:
        i = np.arange(steps + 1)
        points = np.stack([i, steps - i], axis=1) / steps
    elif d == 3:
        a, b = np.triu_indices(steps + 1)
        points = np.stack([a, b - a, steps - b], axis=1) / steps
    else:
        raise ValueError(f"enumeration oracle supports d in 2..3, got d={d}")
    best = np.full(n, np.inf)
    for start in range(0, points.shape[0], 100_000):
        chunk = points[start : start + 100_000]
        dist = np.abs(chunk[:, None, :] - X[None, :, :]).sum(axis=2)
        np.minimum(best, dist.min(axis=0), out=best)
    return best


def random_simplex_points(d: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    return rng.dirichlet(np.ones(d), size=count)


def _shift_to_sum_one(v: np.ndarray) -> np.ndarray:
    return v - (v.sum() - 1.0) / v.size


def adversarial_projection_inputs(d: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic input batteries for the projection oracle check.

    Returns ``(general, rowsum1)`` where the first batch is unconstrained
    (mixed signs, sums above and below 1, all-negative) and the second
    consists of sum-1 vectors with negative coordinates at varied positions.
    Per-dimension sizes add up to 200 inputs over d = 2, 3, 4.
    """
    count = {2: 25, 3: 50, 4: 25}[d]
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))

    general = []
    general.append(np.full(d, -1.0 / d))                  # all negative
    general.append(np.zeros(d))                           # all zero (sum 0 < 1)
    one_hot = np.zeros(d)
    one_hot[0] = 2.0
    general.append(one_hot)                               # single heavy coordinate
    general.append(np.full(d, 1.0 / d))                   # already a simplex point
    while len(general) < count:
        kind = len(general) % 3
        if kind == 0:
            v = rng.normal(0.0, 0.7, size=d)
        elif kind == 1:
            v = rng.uniform(-0.5, 1.5, size=d)
        else:
            v = rng.dirichlet(np.ones(d)) + rng.normal(0.0, 0.3, size=d)
        general.append(v)
    general = np.asarray(general[:count])

    rowsum = []
    base = np.zeros(d)
    base[0], base[1] = 1.2, -0.2
    rowsum.append(base)                                   # negative after a heavy head
    flipped = base[::-1].copy()
    rowsum.append(flipped)                                # negative before the mass
    rowsum.append(np.full(d, 1.0 / d))                    # interior point
    while len(rowsum) < count:
        v = _shift_to_sum_one(rng.normal(0.0, 0.6, size=d))
        rowsum.append(v)
    return general, np.asarray(rowsum[:count])
