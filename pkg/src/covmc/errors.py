"""Exception hierarchy for covmc.

Public estimation routines raise these instead of bare ValueError/RuntimeError
so callers (notably the CLI) can map failure classes to exit codes: invalid
inputs and malformed experiment specs are ``SpecError``; runtime numerical
breakdowns are ``NumericalError`` subclasses.
"""

from __future__ import annotations


class CovmcError(Exception):
    """Base class for all covmc errors."""


class SpecError(CovmcError):
    """Invalid parameters, experiment ids, or spec files."""


class NumericalError(CovmcError):
    """A computation failed numerically (as opposed to being mis-specified)."""


class QuadratureError(NumericalError):
    """Adaptive integration did not converge.

    Carries the best available estimate so callers can inspect how far the
    integrator got before giving up.
    """

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(f"{message} (partial estimate {estimate!r}, "
                         f"error estimate {error_estimate!r})")
        self.estimate = estimate
        self.error_estimate = error_estimate


class DegenerateRayError(NumericalError):
    """The density vanishes along the sampled ray, so the conditional-weight
    denominator is zero and the kernel value is undefined there."""


class SingularJacobianError(NumericalError):
    """The level function has zero partial derivative at the solved point, so
    the coordinate-mapping kernel is singular."""


class PoisonedSampleError(NumericalError):
    """A per-sample estimator value came out non-finite.

    ``index`` is the position of the first offending sample in the stream.
    """

    def __init__(self, index: int, value: float):
        super().__init__(f"non-finite estimator value {value!r} at sample index {index}")
        self.index = index
        self.value = value


class UnsupportedMethodError(SpecError):
    """The requested estimator does not exist for this configuration."""
