"""Exception types shared across the package.

Two families matter to callers: ValidationError means the input itself is
malformed (the CLI maps it to exit code 2), EvaluationError means the inputs
were fine but a computation could not reach the requested accuracy or hit a
singularity (exit code 1, partial output where available).
"""

from __future__ import annotations


class BoundaryLabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(BoundaryLabError):
    """Malformed or out-of-contract input (bad field, bad file, bad grid)."""


class InvalidZeroError(ValidationError):
    """A zero of a would-be Blaschke product lies on or outside the unit circle."""


class EvaluationError(BoundaryLabError):
    """A computation could not be completed at the requested accuracy."""


class PoleError(EvaluationError):
    """Evaluation hit the pole of a Blaschke factor (1 - conj(a) z = 0)."""


class PrefixExhaustedError(EvaluationError):
    """The stored zero prefix cannot push the truncation tail bound below tol.

    ``tail_bound`` carries the best bound achievable with every stored factor.
    """

    def __init__(self, message: str, tail_bound: float):
        super().__init__(message)
        self.tail_bound = tail_bound


class ResolutionError(EvaluationError):
    """Quadrature refinement stalled above the caller's tolerance.

    ``achieved`` is the last observed difference between successive refinement
    levels.
    """

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved
