"""Closed-form toy problems used as ground truth for the generic kernels.

Three small configurations with fully analytic answers:

* ``exponential sum``: X1, X2 iid Exp(1), weight g(x) = x1, level
  h(x) = x1 + x2. The smoothed conditional weight has the closed form
  :func:`example1_w`, and E[X1 1{X1+X2 <= xi}] is :func:`example1_expectation`.

* ``exponential max``: same data, level h(x) = max(x1, x2). The smoothed
  weight turns out to be the *same* function of (z1, z2, xi) as for the sum.

* ``radial``: the sensitivity kernel for homogeneous levels, in the form it
  takes when the ray jacobian reduces to t^{m-1} (max, positively weighted
  sums on the positive orthant, and Euclidean radius after reducing a
  quadratic level to its square root).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quadrature
from .kernels import HomogeneousKernel, SensitivityProblem

__all__ = [
    "ToyKind",
    "ToyCase",
    "example1_w",
    "example1_expectation",
    "example1_sensitivity",
    "example3_nu",
    "exponential_sum_problem",
    "exponential_max_problem",
    "exponential_sum_kernel",
    "exponential_max_kernel",
]


class ToyKind(enum.Enum):
    SUM = "sum"
    MAX = "max"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class ToyCase:
    kind: ToyKind
    xi: float

    def __post_init__(self):
        if not self.xi > 0:
            raise ValueError(f"xi must be positive, got {self.xi}")


def example1_w(y1: float, y2: float, xi: float) -> float:
    """Closed form of E[X1 1{X1+X2 <= xi} | ratio coordinates (y1, y2)].

    Defined by the ratio of ray integrals

        int_0^xi y1 t^2 exp(-(y1+y2) t) dt / int_0^inf t exp(-(y1+y2) t) dt,

    which evaluates (with s = y1 + y2) to

        2 y1/s - exp(-s xi) (2 y1/s + 2 y1 xi + y1 s xi^2).

    The xi -> inf limit is 2 y1 / s = E[X1 | X1/(X1+X2) = y1] on the
    simplex, and xi = 0 gives 0.
    """
    if y1 <= 0 or y2 <= 0:
        raise ValueError(f"need y1, y2 > 0, got ({y1}, {y2})")
    s = y1 + y2
    head = 2.0 * y1 / s
    return head - math.exp(-s * xi) * (head + 2.0 * y1 * xi + y1 * s * xi * xi)


def example1_expectation(xi: float) -> float:
    """E[X1 1{X1+X2 <= xi}] for iid Exp(1): (1/2)(2 - e^-xi (xi^2+2xi+2))."""
    if xi < 0:
        raise ValueError(f"xi must be >= 0, got {xi}")
    return 0.5 * (2.0 - math.exp(-xi) * (xi * xi + 2.0 * xi + 2.0))


def example1_sensitivity(xi: float) -> float:
    """d/dxi of :func:`example1_expectation`: (1/2) xi^2 e^-xi."""
    return 0.5 * xi * xi * math.exp(-xi)


def example3_nu(kind: ToyKind, z: np.ndarray, xi: float,
                weight: Callable[[np.ndarray], float],
                density: Callable[[np.ndarray], float],
                rel_tol: float = quadrature.DEFAULT_REL_TOL) -> float:
    """Radial sensitivity kernel g(xi z) xi^{m-1} f(xi z) / int_0^inf t^{m-1} f(t z) dt.

    For ``MAX`` and ``SUM``, ``z`` is the sample divided by its level value
    and ``xi`` the level threshold; both cases reduce to this identical
    expression. For ``QUADRATIC`` the level is reduced to its square root
    (the Euclidean radius), ``z`` lies on the unit sphere and ``xi`` is the
    radius threshold, and the same expression gives the radial density
    kernel; with g = 1 and m = 1 its mean is the density of |X|.
    """
    if xi <= 0:
        raise ValueError(f"xi must be positive, got {xi}")
    z = np.asarray(z, dtype=float)
    m = z.size

    def tail(t: float) -> float:
        return t ** (m - 1) * density(t * z)

    denom = quadrature.integrate_semi_infinite(tail, 0.0, rel_tol=rel_tol)
    return weight(xi * z) * xi ** (m - 1) * density(xi * z) / denom


# -- generic-kernel builders matching the closed forms ------------------------


def _iid_exp_density(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    if (x <= 0).any():
        return 0.0
    return float(np.exp(-x.sum()))


def exponential_sum_problem(xi: float) -> SensitivityProblem:
    """X1, X2 iid Exp(1), g(x) = x1, h(x) = x1 + x2."""
    return SensitivityProblem(
        dim=2,
        weight=lambda x: float(x[0]),
        level=lambda x: float(np.sum(x)),
        gradient=lambda x: np.ones(2),
        density=_iid_exp_density,
        support=(0.0, math.inf),
        threshold=xi,
    )


def exponential_max_problem(xi: float) -> SensitivityProblem:
    """X1, X2 iid Exp(1), g(x) = x1, h(x) = max(x1, x2)."""

    def grad(x: np.ndarray) -> np.ndarray:
        g = np.zeros(2)
        g[int(np.argmax(x))] = 1.0
        return g

    return SensitivityProblem(
        dim=2,
        weight=lambda x: float(x[0]),
        level=lambda x: float(np.max(x)),
        gradient=grad,
        density=_iid_exp_density,
        support=(0.0, math.inf),
        threshold=xi,
    )


def _exp_ray_denominator(z: np.ndarray, jacobian_norm: float) -> float:
    # int_0^inf t exp(-(z1+z2) t) dt / jacobian_norm = 1 / (s^2 jacobian_norm)
    s = float(np.sum(z))
    return 1.0 / (s * s * jacobian_norm)


def exponential_sum_kernel(xi: float, closed_form: bool = True) -> HomogeneousKernel:
    problem = exponential_sum_problem(xi)
    denom = (lambda z: _exp_ray_denominator(z, math.sqrt(2.0))) if closed_form else None
    return HomogeneousKernel(problem, denominator=denom)


def exponential_max_kernel(xi: float, closed_form: bool = True) -> HomogeneousKernel:
    problem = exponential_max_problem(xi)
    denom = (lambda z: _exp_ray_denominator(z, 1.0)) if closed_form else None
    return HomogeneousKernel(problem, denominator=denom)
