"""l1 projection of vectors onto the probability simplex, and of matrices
(row by row) onto the stochastic matrices.

An l1 projection is generally non-unique; determinism is imposed by always
adjusting mass at the lowest admissible index, so outputs are platform
stable.  Two entry points:

* :func:`project_simplex_general` handles an arbitrary real vector via a
  three-case construction on the sum of its nonnegative part.
* :func:`project_simplex_rowsum1` is the specialized projection for vectors
  that already sum to 1 (the shape produced by un-lazying a stochastic
  matrix).  Its l1 cost is exactly twice the clipped negative mass, with no
  extra factor: for every simplex point y,
  ``||proj(x) - y||_1 <= ||x - y||_1``.  That pointwise contraction is what
  makes the matrix-learning pull-back budget tight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import Distribution, StochasticMatrix, _frozen, validate_stochastic
from .errors import EmptyVector, RowSumNotOne, ShapeMismatch

__all__ = [
    "ProjectionResult",
    "project_simplex_general",
    "project_simplex_rowsum1",
    "project_matrix",
]

ROW_SUM_TOL = 1e-10


@dataclass(frozen=True)
class ProjectionResult:
    """Outcome of one vector projection.

    point     the projected distribution
    distance  l1 distance moved, ``||point - input||_1``
    touched   indices whose coordinate was altered
    """

    point: Distribution
    distance: float
    touched: tuple[int, ...]


def _result(x: np.ndarray, y: np.ndarray) -> ProjectionResult:
    distance = float(np.abs(y - x).sum())
    touched = tuple(int(i) for i in np.nonzero(y != x)[0])
    return ProjectionResult(point=Distribution(_frozen(y)), distance=distance, touched=touched)


def _strip_excess(y: np.ndarray, excess: float) -> np.ndarray:
    """Remove ``excess`` total mass from the nonnegative vector ``y``,
    sweeping indices in increasing order and never pushing below zero."""
    for i in range(y.size):
        if excess <= 0.0:
            break
        take = min(y[i], excess)
        if take > 0.0:
            y[i] -= take
            excess -= take
    return y


def project_simplex_general(x) -> ProjectionResult:
    """l1-project an arbitrary real vector onto the probability simplex.

    Let S be the negative support of ``x`` and s the sum over the rest.
    If S covers everything, any simplex point is a minimizer and the uniform
    distribution is returned as the canonical symmetric choice.  Otherwise
    the negatives are zeroed and the remainder is patched to sum 1: a
    deficit (s < 1) is added to the lowest-index surviving coordinate, an
    excess (s > 1) is stripped greedily in increasing index order.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ShapeMismatch(f"expected a vector, got shape {x.shape}")
    if x.size == 0:
        raise EmptyVector("cannot project an empty vector")
    d = x.size
    negative = x < 0
    if negative.all():
        return _result(x, np.full(d, 1.0 / d))
    y = np.where(negative, 0.0, x)
    s = float(y.sum())
    if s < 1.0:
        first = int(np.nonzero(~negative)[0][0])
        y[first] += 1.0 - s
    elif s > 1.0:
        _strip_excess(y, s - 1.0)
    return _result(x, y)


def project_simplex_rowsum1(x) -> ProjectionResult:
    """l1-project a sum-1 real vector onto the probability simplex.

    Negatives are clipped to zero and the resulting surplus (equal to the
    clipped mass) is swept off the surviving coordinates in increasing index
    order.  The move costs exactly ``2 * negative mass`` in l1, which is
    optimal for sum-1 inputs, and the output never drifts away from any
    simplex point the input was close to.

    Raises ``RowSumNotOne`` when the input does not sum to 1 within 1e-10.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ShapeMismatch(f"expected a vector, got shape {x.shape}")
    if x.size == 0:
        raise EmptyVector("cannot project an empty vector")
    dev = float(x.sum() - 1.0)
    if abs(dev) > ROW_SUM_TOL:
        raise RowSumNotOne(f"input sums to 1{dev:+g}", row=None, deviation=dev)
    negative = x < 0
    if not negative.any():
        return _result(x, x.copy())
    y = np.where(negative, 0.0, x)
    _strip_excess(y, float(y.sum()) - 1.0)
    return _result(x, y)


def project_matrix(A) -> StochasticMatrix:
    """Project each row of a matrix with sum-1 rows onto the simplex.

    This is the pull-back step after un-lazying a learned matrix: row-wise
    :func:`project_simplex_rowsum1`, so for every stochastic matrix ``B``,
    ``inf_norm_distance(project_matrix(A), B) <= inf_norm_distance(A, B)``.

    Raises ``RowSumNotOne`` (with the row index) when some row does not sum
    to 1 within 1e-10.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {A.shape}")
    rows = []
    for i, row in enumerate(A):
        dev = float(row.sum() - 1.0)
        if abs(dev) > ROW_SUM_TOL:
            raise RowSumNotOne(f"row {i} sums to 1{dev:+g}", row=i, deviation=dev)
        rows.append(project_simplex_rowsum1(row).point.probs)
    return validate_stochastic(np.vstack(rows))
