"""Central numeric configuration.

Every tolerance used by the library lives in one frozen record so that the
validation / derived-identity / claim-checking thresholds are consistent
across modules and easy to audit.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds shared across the library.

    validation          entry / row-sum checks when constructing matrices
                        and distributions
    identity            derived identities (pi M = pi, edge-measure symmetry,
                        affine round trips)
    claim_slack         additive slack when asserting analytic inequalities
                        on computed floats
    jacobi_offdiag      off-diagonal Frobenius norm at which the eigensolver
                        declares convergence
    jacobi_max_sweeps   hard sweep cap for the eigensolver
    stationary_residual max allowed l1 residual of pi M - pi
    mixing_time_cap     hard cap on the mixing-time search
    pseudo_gap_k_cap    safety cap on the pseudo-spectral-gap scan
    """

    validation: float = 1e-12
    identity: float = 1e-10
    claim_slack: float = 1e-9
    jacobi_offdiag: float = 1e-12
    jacobi_max_sweeps: int = 100
    stationary_residual: float = 1e-10
    mixing_time_cap: int = 10**7
    pseudo_gap_k_cap: int = 1000


DEFAULT_TOLERANCES = Tolerances()
