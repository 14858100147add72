"""Generic change-of-variables conditional Monte Carlo kernels.

The target quantity is the threshold sensitivity

    alpha'(xi) = d/dxi E[ g(X) 1{h(X) <= xi} ],

for a continuous level function ``h`` and an integrand weight ``g`` that may
be discontinuous. Mapping ``x`` one-to-one onto (ray or slice coordinates,
h(x)) and integrating out the last coordinate turns the indicator into an
integration limit. Two computable specializations are provided:

* :class:`HomogeneousKernel` for positively homogeneous ``h`` (max, min,
  linear combinations, norms): samples are projected onto the level-one set
  via ``z = x / h(x)`` and the kernel integrates along the ray ``t -> t z``.

* :class:`Case1Kernel` for level functions that are invertible in their last
  coordinate: the kernel conditions on the first m-1 coordinates and solves
  ``h(z, x_m) = xi`` for the crossing point.

Both kernels expose ``nu`` (a per-sample unbiased integrand whose mean is the
sensitivity) and ``w`` (the smoothed conditional expectation of
``g(X) 1{h(X) <= xi}``, whose xi-derivative is ``nu``). Sample means of
``nu`` values inherit the usual CLT machinery via :func:`estimate_mean`.

Closed-form denominators: the one-dimensional integral in the denominator of
``nu`` and ``w`` has an analytic value in every production configuration
(lognormal ray integrals, Gaussian ray integrals, exponential slices). Pass
it via ``denominator=`` to remove quadrature cost and noise; adaptive
quadrature is the always-available fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import quadrature
from .errors import DegenerateRayError, SingularJacobianError
from .results import EstimatorOutput, estimate_mean  # re-exported: spec surface

__all__ = [
    "SensitivityProblem",
    "HomogeneousKernel",
    "Case1Kernel",
    "nu_homogeneous",
    "w_homogeneous",
    "nu_case1",
    "estimate_mean",
    "EstimatorOutput",
]

Array = np.ndarray


@dataclass(frozen=True)
class SensitivityProblem:
    """One threshold-sensitivity problem instance.

    ``support`` is the interval of values ``h`` takes on the support of the
    density (either endpoint may be infinite), and ``threshold`` must lie in
    its interior. ``gradient`` is the gradient of ``level`` and must exist
    almost everywhere; kinks on null sets (e.g. the max function) are fine
    because samples never land on them.
    """

    dim: int
    weight: Callable[[Array], float]          # g
    level: Callable[[Array], float]           # h
    gradient: Callable[[Array], Array]        # grad h
    density: Callable[[Array], float]         # f
    support: tuple[float, float]              # (c0, c1), range of h
    threshold: float                          # xi

    def __post_init__(self):
        c0, c1 = self.support
        if not c0 < c1:
            raise ValueError(f"empty support interval {self.support}")
        if not c0 < self.threshold < c1:
            raise ValueError(
                f"threshold {self.threshold} outside open support interval "
                f"({c0}, {c1})")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")


def _check_homogeneity(problem: SensitivityProblem, rtol: float = 1e-10) -> None:
    # Randomized but fixed probes in the positive orthant; h(t x) = t h(x)
    # must hold there for the ray decomposition to be valid.
    rng = np.random.default_rng(1234321)
    for _ in range(8):
        x = rng.uniform(0.5, 1.5, size=problem.dim)
        t = rng.uniform(0.5, 2.0)
        hx = problem.level(x)
        htx = problem.level(t * x)
        if abs(htx - t * hx) > rtol * max(abs(t * hx), 1e-30):
            raise ValueError(
                f"level function is not positively homogeneous: h(t*x)={htx}, "
                f"t*h(x)={t * hx}")


@dataclass(frozen=True)
class HomogeneousKernel:
    """Ray-decomposition kernel for positively homogeneous level functions.

    ``z`` arguments must be projected samples ``x / h(x)`` (so ``h(z) = 1``
    on the positive branch and ``h(-z) = 1`` when ``h(x) < 0``). Samples on
    the null set ``h(x) = 0`` must be rejected upstream; they occur with
    probability zero.

    ``denominator`` optionally supplies the analytic value of the ray
    integral; otherwise adaptive quadrature over the support interval is
    used, split at zero when the interval straddles it (the integrand has a
    kink there from ``|t|**(m-1)``).
    """

    problem: SensitivityProblem
    denominator: Callable[[Array], float] | None = None
    rel_tol: float = quadrature.DEFAULT_REL_TOL

    def __post_init__(self):
        _check_homogeneity(self.problem)

    # -- ray geometry -------------------------------------------------------

    def ray_jacobian(self, z: Array, t: float) -> float:
        """|t|^{-(m-1)} * ||grad h(t z)||, the area-scaling factor of the map."""
        grad = np.asarray(self.problem.gradient(t * z), dtype=float)
        norm = float(np.sqrt((grad * grad).sum()))
        return abs(t) ** (-(self.problem.dim - 1)) * norm

    def _level_pow(self, z: Array, t: float) -> float:
        # |h(sign(t) z)|^{m-1}; evaluated separately for each sign because
        # h(-z) = -h(z) is not assumed.
        h = self.problem.level(z if t > 0 else -z)
        return abs(h) ** (self.problem.dim - 1)

    def _base_integrand(self, z: Array) -> Callable[[float], float]:
        problem = self.problem

        def base(t: float) -> float:
            if t == 0.0:
                return 0.0
            jac = self.ray_jacobian(z, t)
            if jac == 0.0:
                return 0.0
            return self._level_pow(z, t) * problem.density(t * z) / jac

        return base

    def denominator_value(self, z: Array) -> float:
        if self.denominator is not None:
            value = float(self.denominator(z))
        else:
            c0, c1 = self.problem.support
            base = self._base_integrand(z)
            if c0 < 0.0 < c1:
                value = (quadrature.integrate(base, c0, 0.0, rel_tol=self.rel_tol)
                         + quadrature.integrate(base, 0.0, c1, rel_tol=self.rel_tol))
            else:
                value = quadrature.integrate(base, c0, c1, rel_tol=self.rel_tol)
        if not math.isfinite(value) or value <= 0.0:
            raise DegenerateRayError(
                f"ray denominator {value!r} at z={np.asarray(z)!r}; the density "
                "vanishes along this ray")
        return value

    # -- kernels ------------------------------------------------------------

    def nu(self, z: Array, xi: float | None = None) -> float:
        """Per-sample sensitivity integrand; E[nu(Z; xi)] = alpha'(xi)."""
        problem = self.problem
        xi = problem.threshold if xi is None else xi
        z = np.asarray(z, dtype=float)
        jac = self.ray_jacobian(z, xi)
        if jac == 0.0:
            raise SingularJacobianError(
                f"zero ray jacobian at t={xi}, z={z!r}")
        numerator = (self._level_pow(z, xi) * problem.weight(xi * z)
                     * problem.density(xi * z) / jac)
        return numerator / self.denominator_value(z)

    def w(self, z: Array, xi: float | None = None) -> float:
        """Smoothed conditional weight E[g(X) 1{h(X) <= xi} | X/h(X) = z]."""
        problem = self.problem
        xi = problem.threshold if xi is None else xi
        z = np.asarray(z, dtype=float)
        c0, c1 = problem.support
        if xi <= c0:
            return 0.0
        hi = min(xi, c1)
        base = self._base_integrand(z)

        def weighted(t: float) -> float:
            return base(t) * problem.weight(t * z)

        if c0 < 0.0 < hi:
            numerator = (quadrature.integrate(weighted, c0, 0.0, rel_tol=self.rel_tol)
                         + quadrature.integrate(weighted, 0.0, hi, rel_tol=self.rel_tol))
        else:
            numerator = quadrature.integrate(weighted, c0, hi, rel_tol=self.rel_tol)
        return numerator / self.denominator_value(z)

    def project(self, x: Array) -> Array:
        """Map a sample to its ray coordinate z = x / h(x)."""
        h = self.problem.level(np.asarray(x, dtype=float))
        if abs(h) < 1e-300:
            raise DegenerateRayError("sample lies on the h(x)=0 null set")
        return np.asarray(x, dtype=float) / h


@dataclass(frozen=True)
class Case1Kernel:
    """Coordinate-slice kernel for level functions invertible in x_m.

    Conditions on the first m-1 coordinates ``z``; the crossing point
    ``v(z, t)`` solves ``h(z, v) = t`` (closed form when supplied, else a
    bracketed root solve on the support slice). The denominator equals the
    marginal density of the first m-1 coordinates and may be supplied in
    closed form; the fallback integrates the joint density over the slice.

    ``slice_interval`` gives the x_m range of the support for a given ``z``.
    If ``h(z, .) = t`` has no solution there the crossing contributes zero
    (the conditional event has zero probability on that slice). Level
    functions for which the slice map is not one-to-one need their support
    split by the caller before building a kernel; that split is not
    automated here.
    """

    problem: SensitivityProblem
    slice_interval: Callable[[Array], tuple[float, float]]
    crossing: Callable[[Array, float], float] | None = None   # closed-form v
    marginal_density: Callable[[Array], float] | None = None
    rel_tol: float = quadrature.DEFAULT_REL_TOL
    residual_tol: float = 1e-10

    def _solve_crossing(self, z: Array, t: float) -> float | None:
        problem = self.problem
        if self.crossing is not None:
            v = float(self.crossing(z, t))
        else:
            lo, hi = self.slice_interval(z)

            def residual(s: float) -> float:
                return problem.level(np.append(z, s)) - t

            bracket = _expand_bracket(residual, lo, hi)
            if bracket is None:
                return None
            if bracket[0] == bracket[1]:
                v = bracket[0]
            else:
                v = brentq(residual, bracket[0], bracket[1],
                           xtol=1e-14, rtol=4e-16)
        resid = abs(problem.level(np.append(z, v)) - t)
        if resid > self.residual_tol * max(1.0, abs(t)):
            raise SingularJacobianError(
                f"crossing solve left residual {resid} at z={z!r}, t={t}")
        return v

    def marginal(self, z: Array) -> float:
        if self.marginal_density is not None:
            return float(self.marginal_density(z))
        lo, hi = self.slice_interval(z)
        problem = self.problem

        def joint(s: float) -> float:
            return problem.density(np.append(z, s))

        return quadrature.integrate(joint, lo, hi, rel_tol=self.rel_tol)

    def nu(self, z: Array, xi: float | None = None) -> float:
        problem = self.problem
        xi = problem.threshold if xi is None else xi
        z = np.asarray(z, dtype=float)
        v = self._solve_crossing(z, xi)
        if v is None:
            return 0.0
        x = np.append(z, v)
        slope = float(np.asarray(problem.gradient(x), dtype=float)[-1])
        if slope == 0.0:
            raise SingularJacobianError(
                f"level function has zero last-coordinate slope at crossing {x!r}")
        denom = self.marginal(z)
        if not math.isfinite(denom) or denom <= 0.0:
            raise DegenerateRayError(
                f"marginal density {denom!r} at z={z!r}")
        return problem.weight(x) * problem.density(x) / abs(slope) / denom


def _expand_bracket(residual: Callable[[float], float], lo: float, hi: float,
                    max_steps: int = 100) -> tuple[float, float] | None:
    """Find a sign change of ``residual`` inside (lo, hi) by geometric probing.

    Probes a geometric ladder expanding from an interior anchor toward both
    endpoints. Returns a degenerate bracket (p, p) if a probe hits the root
    exactly, and None when no sign change is found; callers interpret None as
    "no crossing on this slice".
    """
    if math.isfinite(lo) and math.isfinite(hi):
        anchor = 0.5 * (lo + hi)
        span = 0.5 * (hi - lo)
        steps = [span * 2.0 ** (-k) for k in range(48)]
        probes = sorted({anchor} | {anchor - s for s in steps}
                        | {anchor + s for s in steps})
    else:
        anchor = 1.0
        if math.isfinite(lo):
            anchor = max(anchor, lo + 1.0)
        if math.isfinite(hi):
            anchor = min(anchor, hi - 1.0)
        ladder = [anchor * 2.0 ** k for k in range(-max_steps // 2, max_steps // 2)]
        shifted = [lo + (anchor - lo) * 2.0 ** (-k) for k in range(1, 40)] \
            if math.isfinite(lo) else []
        probes = sorted(p for p in set(ladder) | set(shifted) if lo < p < hi)
    prev_p, prev_r = None, None
    for p in probes:
        r = residual(p)
        if r == 0.0:
            return (p, p)
        if prev_r is not None and (r < 0) != (prev_r < 0):
            return (min(prev_p, p), max(prev_p, p))
        prev_p, prev_r = p, r
    return None


# Module-level functional surface mirroring the kernel methods.

def nu_homogeneous(kernel: HomogeneousKernel, z: Array,
                   xi: float | None = None) -> float:
    return kernel.nu(z, xi)


def w_homogeneous(kernel: HomogeneousKernel, z: Array,
                  xi: float | None = None) -> float:
    return kernel.w(z, xi)


def nu_case1(kernel: Case1Kernel, z: Array, xi: float | None = None) -> float:
    return kernel.nu(z, xi)
