"""Exception hierarchy for domain errors.

Every error carries a stable machine-readable ``code`` plus a ``context``
dict of JSON-serializable details, so the CLI can emit structured error
documents and scripts can branch on the code instead of parsing messages.
"""

from __future__ import annotations


class LazymcError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context

    def to_json_dict(self) -> dict:
        return {"code": self.code, "message": str(self), "context": self.context}


class ShapeMismatch(LazymcError):
    code = "shape-mismatch"


class TooSmall(LazymcError):
    code = "too-small"


class NegativeEntry(LazymcError):
    code = "negative-entry"


class RowSumNotOne(LazymcError):
    code = "row-sum-not-one"


class EmptyVector(LazymcError):
    code = "empty-vector"


class NotIrreducible(LazymcError):
    code = "not-irreducible"


class NotErgodic(LazymcError):
    code = "not-ergodic"


class NotReversible(LazymcError):
    code = "not-reversible"


class SingularSystem(LazymcError):
    code = "singular-system"


class ZeroStationaryEntry(LazymcError):
    code = "zero-stationary-entry"


class NoConvergence(LazymcError):
    code = "no-convergence"


class CapExceeded(LazymcError):
    code = "cap-exceeded"


class BadAlpha(LazymcError):
    code = "bad-alpha"


class BadLength(LazymcError):
    code = "bad-length"


class PathTooShort(LazymcError):
    code = "path-too-short"


class UnvisitedState(LazymcError):
    code = "unvisited-state"


class BadSpec(LazymcError):
    code = "bad-spec"


class CounterexampleMismatch(LazymcError):
    code = "counterexample-mismatch"
