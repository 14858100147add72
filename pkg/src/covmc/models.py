"""Price-path models: lognormal (exact geometric Brownian recursion) and the
gamma-subordinated variance-gamma discretization.

Both models are simulated on an even grid t_i = i*T/m. All densities are
computed in log space and exponentiated once; with m = 100 monitoring dates
the product of transition densities underflows double precision otherwise.

Variance-gamma parameterization
-------------------------------
Per step the subordinator increment is ``G_i ~ Gamma(shape=beta,
scale=tau/beta)``, so that ``E[G_i] = tau`` and ``Var[G_i] = tau^2/beta``,
and the drift constant is ``mu = r + log(1 - theta*beta - sigma^2*beta/2)/beta``.
Two consequences worth knowing:

* ``G_i`` is proportional to maturity path-by-path (``G_i = (T/(m*beta)) * Q_i``
  with ``Q_i`` maturity-free), which is what the maturity-sensitivity
  estimators differentiate through.

* the discounted terminal mean is *not* exactly the spot: the drift constant
  above is the continuous-time compensator, while the per-step gamma moment
  generating function gives ``E[exp(-rT) X_m] = x0 * exp((mu - r) T) *
  (1 - (theta + sigma^2/2) tau / beta)^(-beta m)`` (a few percent off at the
  benchmark parameters). :func:`vg_discounted_terminal_mean` returns this
  exact value; tests check the simulator against it. The alternative
  readings of the gamma parameters that do make the model an exact
  martingale put most of the subordinator mass at underflow scale and are
  numerically unusable for the benchmark estimators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpecError

__all__ = [
    "BsParams",
    "VgParams",
    "PathSample",
    "simulate_bs",
    "simulate_bs_block",
    "simulate_vg",
    "simulate_vg_block",
    "bs_transition_density",
    "bs_log_transition_density",
    "vg_conditional_density",
    "vg_log_conditional_density",
    "vg_discounted_terminal_mean",
]

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class BsParams:
    """Lognormal model: spot, risk-free rate, volatility, maturity, steps."""

    x0: float
    r: float
    sigma: float
    maturity: float
    steps: int

    def __post_init__(self):
        if self.x0 <= 0:
            raise SpecError(f"x0 must be positive, got {self.x0}")
        if self.sigma <= 0:
            raise SpecError(f"sigma must be positive, got {self.sigma}")
        if self.maturity <= 0:
            raise SpecError(f"maturity must be positive, got {self.maturity}")
        if self.steps < 1:
            raise SpecError(f"steps must be >= 1, got {self.steps}")

    @property
    def tau(self) -> float:
        return self.maturity / self.steps

    @property
    def drift(self) -> float:
        """Per-unit-time log drift r - sigma^2/2."""
        return self.r - 0.5 * self.sigma * self.sigma


@dataclass(frozen=True)
class VgParams:
    """Variance-gamma model parameters.

    ``beta`` scales the subordinator dispersion, ``theta_vg`` is the drift of
    the subordinated Brownian motion. The log argument
    ``1 - theta_vg*beta - sigma^2*beta/2`` must be positive for the drift
    compensator to exist.
    """

    x0: float
    r: float
    sigma: float
    maturity: float
    steps: int
    beta: float
    theta_vg: float

    def __post_init__(self):
        if self.x0 <= 0:
            raise SpecError(f"x0 must be positive, got {self.x0}")
        if self.sigma <= 0:
            raise SpecError(f"sigma must be positive, got {self.sigma}")
        if self.maturity <= 0:
            raise SpecError(f"maturity must be positive, got {self.maturity}")
        if self.steps < 1:
            raise SpecError(f"steps must be >= 1, got {self.steps}")
        if self.beta <= 0:
            raise SpecError(f"beta must be positive, got {self.beta}")
        if self.log_argument <= 0:
            raise SpecError(
                "need 1 - theta_vg*beta - sigma^2*beta/2 > 0, got "
                f"{self.log_argument}")

    @property
    def tau(self) -> float:
        return self.maturity / self.steps

    @property
    def log_argument(self) -> float:
        return 1.0 - self.theta_vg * self.beta - 0.5 * self.sigma ** 2 * self.beta

    @property
    def drift(self) -> float:
        """Per-unit-time compensated drift."""
        return self.r + math.log(self.log_argument) / self.beta

    @property
    def gamma_shape(self) -> float:
        return self.beta

    @property
    def gamma_scale(self) -> float:
        return self.tau / self.beta


@dataclass(frozen=True)
class PathSample:
    """One simulated path: prices X_1..X_m, plus subordinator increments for
    the variance-gamma model."""

    x: np.ndarray
    g: np.ndarray | None = None


# -- simulation ---------------------------------------------------------------


def simulate_bs_block(params: BsParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """n lognormal paths, shape (n, steps); exact one-step recursion."""
    m = params.steps
    tau = params.tau
    normals = rng.standard_normal((n, m))
    increments = params.drift * tau + params.sigma * math.sqrt(tau) * normals
    return params.x0 * np.exp(np.cumsum(increments, axis=1))


def simulate_bs(params: BsParams, rng: np.random.Generator) -> PathSample:
    return PathSample(x=simulate_bs_block(params, 1, rng)[0])


def simulate_vg_block(params: VgParams, n: int,
                      rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """n variance-gamma paths; returns (prices (n, m), increments (n, m)).

    Draw order (gammas first, then normals) is part of the reproducibility
    contract for a given generator state.
    """
    m = params.steps
    g = rng.gamma(shape=params.gamma_shape, scale=params.gamma_scale, size=(n, m))
    normals = rng.standard_normal((n, m))
    increments = (params.drift * params.tau + params.theta_vg * g
                  + params.sigma * np.sqrt(g) * normals)
    x = params.x0 * np.exp(np.cumsum(increments, axis=1))
    return x, g


def simulate_vg(params: VgParams, rng: np.random.Generator) -> PathSample:
    x, g = simulate_vg_block(params, 1, rng)
    return PathSample(x=x[0], g=g[0])


# -- densities ----------------------------------------------------------------


def _require_positive(name: str, value) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if (arr <= 0).any():
        raise SpecError(f"{name} must be positive, got {value!r}")
    return arr


def bs_log_transition_density(x_next, x_prev, params: BsParams) -> np.ndarray:
    """Log of the one-step transition density of the lognormal model."""
    x_next = _require_positive("x_next", x_next)
    x_prev = _require_positive("x_prev", x_prev)
    vol = params.sigma * math.sqrt(params.tau)
    standardized = (np.log(x_next / x_prev) - params.drift * params.tau) / vol
    return (-np.log(x_next) - math.log(vol) - 0.5 * _LOG_2PI
            - 0.5 * standardized * standardized)


def bs_transition_density(x_next, x_prev, params: BsParams) -> np.ndarray:
    return np.exp(bs_log_transition_density(x_next, x_prev, params))


def vg_log_conditional_density(x_next, x_prev, g_inc, params: VgParams) -> np.ndarray:
    """Log density of one variance-gamma step given its subordinator increment."""
    x_next = _require_positive("x_next", x_next)
    x_prev = _require_positive("x_prev", x_prev)
    g_inc = _require_positive("g_inc", g_inc)
    vol = params.sigma * np.sqrt(g_inc)
    mean = params.drift * params.tau + params.theta_vg * g_inc
    standardized = (np.log(x_next / x_prev) - mean) / vol
    return (-np.log(x_next) - np.log(vol) - 0.5 * _LOG_2PI
            - 0.5 * standardized * standardized)


def vg_conditional_density(x_next, x_prev, g_inc, params: VgParams) -> np.ndarray:
    return np.exp(vg_log_conditional_density(x_next, x_prev, g_inc, params))


def vg_discounted_terminal_mean(params: VgParams) -> float:
    """Exact E[exp(-rT) X_m] under the implemented discretization.

    Telescoping the per-step gamma moment generating function:
    each step contributes exp(drift*tau) * (1 - u*scale)^(-shape) with
    u = theta_vg + sigma^2/2.
    """
    u = params.theta_vg + 0.5 * params.sigma ** 2
    if u * params.gamma_scale >= 1.0:
        raise SpecError("gamma moment generating function does not exist at "
                        f"u={u}, scale={params.gamma_scale}")
    per_step = (params.drift * params.tau
                - params.gamma_shape * math.log1p(-u * params.gamma_scale))
    return params.x0 * math.exp(params.steps * per_step - params.r * params.maturity)
