"""Finite row-stochastic matrices and probability vectors.

Immutable value types (:class:`StochasticMatrix`, :class:`Distribution`,
:class:`ChainProfile`) plus the structural operations on them:
irreducibility, period, stationary law, edge measure, reversibility, time
reversal and multiplicative reversibilization.  Spectral quantities (gaps,
mixing times) live in :mod:`lazymc.spectral`.

Graph structure is read off exact positivity of the input entries; no
epsilon thresholding is applied.  The user's matrix is taken at face value,
because silently rounding small entries to zero would change the chain.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    NegativeEntry,
    NotIrreducible,
    EmptyVector,
    RowSumNotOne,
    ShapeMismatch,
    SingularSystem,
    TooSmall,
    ZeroStationaryEntry,
)

__all__ = [
    "StochasticMatrix",
    "Distribution",
    "ChainProfile",
    "validate_stochastic",
    "validate_distribution",
    "as_stochastic",
    "as_distribution",
    "uniform_distribution",
    "point_mass",
    "is_irreducible",
    "positive_graph_strongly_connected",
    "period",
    "is_ergodic",
    "stationary",
    "edge_measure",
    "is_reversible",
    "time_reversal",
    "reversibilization",
    "inf_norm_distance",
    "chi_square_norm",
    "profile",
]


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False, repr=False)
class StochasticMatrix:
    """A d x d row-stochastic transition matrix.

    ``entries[i, j]`` is the probability of moving from state ``i`` to state
    ``j``.  Instances are immutable (the wrapped array is read-only) and safe
    to share across threads.  Construct through :func:`validate_stochastic`.
    """

    entries: np.ndarray

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __repr__(self) -> str:
        return f"StochasticMatrix(d={self.d})"


@dataclass(frozen=True, eq=False, repr=False)
class Distribution:
    """A probability vector on ``{0, ..., d-1}`` (a point of the simplex)."""

    probs: np.ndarray

    @property
    def d(self) -> int:
        return self.probs.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    def __repr__(self) -> str:
        return f"Distribution({np.array2string(self.probs, precision=6)})"


@dataclass(frozen=True)
class ChainProfile:
    """Structural facts about a chain.

    ``period``, ``aperiodic``, ``reversible``, ``pi`` and ``pi_star`` are
    only defined for irreducible chains and are ``None`` otherwise.
    """

    irreducible: bool
    period: Optional[int] = None
    aperiodic: Optional[bool] = None
    reversible: Optional[bool] = None
    pi: Optional[Distribution] = None
    pi_star: Optional[float] = None


MatrixLike = Union[StochasticMatrix, np.ndarray, list]
VectorLike = Union[Distribution, np.ndarray, list]


def validate_stochastic(
    raw: MatrixLike, *, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> StochasticMatrix:
    """Validate a raw square matrix as row-stochastic.

    Raises
    ------
    ShapeMismatch   not a square 2-d array
    TooSmall        fewer than two states
    NegativeEntry   some entry is below zero (first offender reported)
    RowSumNotOne    some row sum deviates from 1 by more than the validation
                    tolerance (offending row and signed deviation reported)
    """
    if isinstance(raw, StochasticMatrix):
        return raw
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {arr.shape}", shape=list(arr.shape))
    d = arr.shape[0]
    if d < 2:
        raise TooSmall(f"need at least 2 states, got d={d}", d=d)
    if np.any(arr < 0):
        i, j = np.argwhere(arr < 0)[0]
        raise NegativeEntry(
            f"entry ({i}, {j}) = {arr[i, j]} is negative",
            i=int(i), j=int(j), value=float(arr[i, j]),
        )
    dev = arr.sum(axis=1) - 1.0
    bad = np.nonzero(np.abs(dev) > tolerances.validation)[0]
    if bad.size:
        r = int(bad[0])
        raise RowSumNotOne(
            f"row {r} sums to 1{dev[r]:+g}", row=r, deviation=float(dev[r])
        )
    return StochasticMatrix(_frozen(arr))


def validate_distribution(
    raw: VectorLike, *, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Distribution:
    """Validate a raw vector as a probability distribution."""
    if isinstance(raw, Distribution):
        return raw
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 1:
        raise ShapeMismatch(f"expected a vector, got shape {arr.shape}", shape=list(arr.shape))
    if arr.size == 0:
        raise EmptyVector("empty probability vector")
    if np.any(arr < 0):
        i = int(np.nonzero(arr < 0)[0][0])
        raise NegativeEntry(f"entry {i} = {arr[i]} is negative", i=i, value=float(arr[i]))
    dev = float(arr.sum() - 1.0)
    if abs(dev) > tolerances.validation:
        raise RowSumNotOne(f"probabilities sum to 1{dev:+g}", row=None, deviation=dev)
    return Distribution(_frozen(arr))


def as_stochastic(M: MatrixLike) -> StochasticMatrix:
    """Pass through a StochasticMatrix, validate anything else."""
    return M if isinstance(M, StochasticMatrix) else validate_stochastic(M)


def as_distribution(mu: VectorLike) -> Distribution:
    return mu if isinstance(mu, Distribution) else validate_distribution(mu)


def uniform_distribution(d: int) -> Distribution:
    return Distribution(_frozen(np.full(d, 1.0 / d)))


def point_mass(d: int, i: int) -> Distribution:
    v = np.zeros(d)
    v[i] = 1.0
    return Distribution(_frozen(v))


def _reachable(support: np.ndarray, start: int) -> np.ndarray:
    """Boolean vector of states reachable from ``start`` along support edges."""
    d = support.shape[0]
    seen = np.zeros(d, dtype=bool)
    seen[start] = True
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in np.nonzero(support[i])[0]:
            if not seen[j]:
                seen[j] = True
                queue.append(int(j))
    return seen


def positive_graph_strongly_connected(entries: np.ndarray) -> bool:
    """Whether the directed graph of strictly positive entries is strongly
    connected.  Works on raw arrays (entries may be negative elsewhere)."""
    support = np.asarray(entries) > 0
    return bool(_reachable(support, 0).all() and _reachable(support.T, 0).all())


def is_irreducible(M: MatrixLike) -> bool:
    """Whether every state can reach every other state."""
    return positive_graph_strongly_connected(as_stochastic(M).entries)


def period(M: MatrixLike) -> int:
    """Common period of the states of an irreducible chain.

    Computed as the gcd, over all positive edges ``(i, j)``, of
    ``level(i) + 1 - level(j)`` where ``level`` is a breadth-first levelling
    of the positive-edge graph.  Equivalent to the gcd of return times, in
    O(d + edges).

    Raises ``NotIrreducible`` when the chain is not irreducible.
    """
    M = as_stochastic(M)
    if not is_irreducible(M):
        raise NotIrreducible("period is only defined for irreducible chains")
    support = M.entries > 0
    d = M.d
    level = np.full(d, -1, dtype=int)
    level[0] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in np.nonzero(support[i])[0]:
            if level[j] < 0:
                level[j] = level[i] + 1
                queue.append(int(j))
    g = 0
    for i, j in np.argwhere(support):
        g = math.gcd(g, abs(int(level[i]) + 1 - int(level[j])))
    return g


def is_ergodic(M: MatrixLike) -> bool:
    """Irreducible and aperiodic."""
    M = as_stochastic(M)
    return is_irreducible(M) and period(M) == 1


def stationary(
    M: MatrixLike, *, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Distribution:
    """Unique stationary distribution of an irreducible chain.

    Solves the linear system ``(M^T - I) pi^T = 0`` with the last equation
    replaced by the normalization ``sum(pi) = 1`` (dense solve with partial
    pivoting; d is desk scale, so O(d^3) is fine).

    Raises
    ------
    NotIrreducible  chain is not irreducible
    SingularSystem  the solve fails or the residual exceeds the tolerance
    """
    M = as_stochastic(M)
    if not is_irreducible(M):
        raise NotIrreducible("stationary law is only unique for irreducible chains")
    d = M.d
    A = M.entries.T - np.eye(d)
    A[-1, :] = 1.0
    b = np.zeros(d)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"stationary solve failed: {exc}") from exc
    residual = float(np.abs(pi @ M.entries - pi).sum())
    if residual > tolerances.stationary_residual or pi.min() <= 0:
        raise SingularSystem(
            f"stationary solve is numerically degenerate (residual {residual:g}, min {pi.min():g})",
            residual=residual,
        )
    pi = pi / pi.sum()
    return Distribution(_frozen(pi))


def edge_measure(M: MatrixLike) -> np.ndarray:
    """Edge occupation measure ``diag(pi) M``; symmetric iff the chain is
    reversible.  Row ``i`` sums to ``pi(i)``."""
    M = as_stochastic(M)
    pi = stationary(M).probs
    return pi[:, None] * M.entries


def is_reversible(
    M: MatrixLike, *, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Detailed balance: the edge measure is symmetric up to the identity
    tolerance."""
    Q = edge_measure(M)
    return bool(np.abs(Q - Q.T).max() <= tolerances.identity)


def time_reversal(M: MatrixLike) -> StochasticMatrix:
    """Time reversal ``diag(pi)^-1 M^T diag(pi)``.

    Row-stochastic with the same stationary law; equals ``M`` exactly when
    ``M`` is reversible.  Rows are renormalized to absorb solver roundoff in
    ``pi``.
    """
    M = as_stochastic(M)
    pi = stationary(M).probs
    rev = (M.entries.T * pi[None, :]) / pi[:, None]
    rev /= rev.sum(axis=1, keepdims=True)
    return validate_stochastic(rev)


def reversibilization(M: MatrixLike) -> StochasticMatrix:
    """Multiplicative reversibilization: time reversal times the chain.

    Always satisfies detailed balance with respect to the stationary law of
    ``M``.  Note the result can be reducible when ``M`` is periodic.
    """
    M = as_stochastic(M)
    rev = time_reversal(M)
    return validate_stochastic(rev.entries @ M.entries)


def inf_norm_distance(A: MatrixLike, B: MatrixLike) -> float:
    """Max over rows of the l1 distance between corresponding rows."""
    a = np.asarray(A, dtype=float)
    b = np.asarray(B, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatch(
            f"shapes {a.shape} and {b.shape} differ", a=list(a.shape), b=list(b.shape)
        )
    return float(np.abs(a - b).sum(axis=1).max())


def chi_square_norm(mu: VectorLike, pi: VectorLike) -> float:
    """Chi-square-weighted norm of ``mu`` against ``pi``:
    ``sqrt(sum_i mu(i)^2 / pi(i))``.

    Equals 1 when ``mu == pi`` and ``1/sqrt(pi(i))`` for a point mass at i.
    """
    m = np.asarray(mu, dtype=float)
    p = np.asarray(pi, dtype=float)
    if m.shape != p.shape:
        raise ShapeMismatch(f"shapes {m.shape} and {p.shape} differ")
    if np.any(p <= 0):
        i = int(np.nonzero(p <= 0)[0][0])
        raise ZeroStationaryEntry(f"pi({i}) = {p[i]} is not strictly positive", i=i)
    return float(math.sqrt(float(np.sum(m * m / p))))


def profile(M: MatrixLike) -> ChainProfile:
    """Full structural profile; fields other than ``irreducible`` are None
    for reducible chains."""
    M = as_stochastic(M)
    if not is_irreducible(M):
        return ChainProfile(irreducible=False)
    p = period(M)
    pi = stationary(M)
    return ChainProfile(
        irreducible=True,
        period=p,
        aperiodic=(p == 1),
        reversible=is_reversible(M),
        pi=pi,
        pi_star=float(pi.probs.min()),
    )
