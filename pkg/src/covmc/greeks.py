"""Price-sensitivity estimators for discontinuous payoffs.

Three option payoffs (cash digital, Asian digital, up-and-out barrier call)
under the lognormal and variance-gamma models, four sensitivities each:
delta and gamma (first and second derivative in the spot), vega (volatility)
and theta (defined throughout as minus the maturity derivative of the price).

Three estimator families:

``cov``
    Change-of-variables conditional Monte Carlo. The discontinuity threshold
    is integrated out along the ray through each sample, leaving a smooth
    per-path integrand built from one single-step transition density. All
    ray integrals in these configurations reduce to that density in closed
    form, so no quadrature appears on this path.

``lr``
    Likelihood ratio: payoff times the score of the joint (or, for
    variance-gamma, conditional-on-subordinator) path density.

``cmc``
    Conventional conditional Monte Carlo, conditioning on the path up to the
    second-to-last date (digital) or on all but the final asset price
    (Asian digital), then differentiating the conditional expectation
    pathwise. No such conditioning is available for the barrier payoff,
    whose running maximum couples every date; requesting it raises
    :class:`UnsupportedMethodError`.

Estimator values for one path are always assembled into a single per-sample
number (including the discounted-payoff part of theta), so the reported
standard deviation is the standard deviation of the actual estimator.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np
from scipy.stats import norm

from ._engine import run_blocked
from .errors import SpecError, UnsupportedMethodError
from .models import (BsParams, VgParams, bs_log_transition_density,
                     simulate_bs_block, simulate_vg_block,
                     vg_log_conditional_density)
from .results import EstimatorOutput

__all__ = [
    "OptionKind",
    "OptionSpec",
    "Greek",
    "Method",
    "estimate_greeks",
    "greek_cov",
    "greek_lr",
    "greek_cmc",
    "methods_for",
    "bs_digital_oracle",
    "bs_call_oracle",
]


class OptionKind(enum.Enum):
    DIGITAL = "digital"
    ASIAN_DIGITAL = "asian"
    BARRIER_CALL = "barrier"


class Greek(enum.Enum):
    DELTA = "delta"
    VEGA = "vega"
    THETA = "theta"
    GAMMA = "gamma"


class Method(enum.Enum):
    COV = "cov"
    LR = "lr"
    CMC = "cmc"


@dataclass(frozen=True)
class OptionSpec:
    """Payoff description: strike, and the knock-out barrier when relevant."""

    kind: OptionKind
    strike: float
    barrier: float | None = None

    def __post_init__(self):
        if self.strike <= 0:
            raise SpecError(f"strike must be positive, got {self.strike}")
        if self.kind is OptionKind.BARRIER_CALL:
            if self.barrier is None:
                raise SpecError("barrier call needs a barrier level")
            if self.barrier <= self.strike:
                raise SpecError(
                    f"barrier {self.barrier} must exceed strike {self.strike}")
        elif self.barrier is not None:
            raise SpecError(f"{self.kind.value} option takes no barrier")


def methods_for(option: OptionSpec) -> tuple[Method, ...]:
    if option.kind is OptionKind.BARRIER_CALL:
        return (Method.LR, Method.COV)
    return (Method.LR, Method.CMC, Method.COV)


# -- lognormal-model estimators ------------------------------------------------


def _bs_step_density(y: np.ndarray, x_prev, p: BsParams) -> np.ndarray:
    return np.exp(bs_log_transition_density(y, x_prev, p))


def _bs_values(p: BsParams, option: OptionSpec, method: Method,
               greeks: tuple[Greek, ...]) -> Callable:
    m, tau, sigma, x0 = p.steps, p.tau, p.sigma, p.x0
    mu, maturity, r = p.drift, p.maturity, p.r
    disc = math.exp(-r * maturity)
    K = option.strike
    kappa = option.barrier
    sig2tau = sigma * sigma * tau
    steps_time = np.arange(1, m + 1) * tau  # cumulative time of each date

    def values(rng: np.random.Generator, count: int) -> np.ndarray:
        X = simulate_bs_block(p, count, rng)
        X1, Xm = X[:, 0], X[:, -1]
        prev = X[:, -2] if m >= 2 else np.full(count, x0)
        out = {}

        if method is Method.LR:
            log_ratios = np.diff(np.log(X), axis=1, prepend=math.log(x0))
            q = log_ratios - mu * tau
            q1 = q[:, 0]
            if option.kind is OptionKind.DIGITAL:
                payoff = disc * (Xm >= K)
            elif option.kind is OptionKind.ASIAN_DIGITAL:
                payoff = disc * (X.mean(axis=1) >= K)
            else:
                payoff = disc * np.maximum(Xm - K, 0.0) * (X.max(axis=1) <= kappa)
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = q1 / (x0 * sig2tau) * payoff
                elif greek is Greek.GAMMA:
                    l1 = q1 / (x0 * sig2tau)
                    out[greek] = (l1 * l1 - (q1 + 1.0) / (x0 * x0 * sig2tau)) * payoff
                elif greek is Greek.VEGA:
                    l4 = ((q * q).sum(axis=1) / (sigma * sig2tau)
                          - q.sum(axis=1) / sigma - m / sigma)
                    out[greek] = l4 * payoff
                else:  # THETA
                    l3 = ((q * q).sum(axis=1) / (2.0 * sig2tau * tau)
                          + mu * q.sum(axis=1) / sig2tau
                          - m / (2.0 * tau)) / m
                    out[greek] = r * payoff - l3 * payoff
            return np.column_stack([out[g] for g in greeks])

        if method is Method.CMC:
            if option.kind is OptionKind.DIGITAL:
                fm = _bs_step_density(np.full(count, K), prev, p)
                for greek in greeks:
                    if greek is Greek.DELTA:
                        out[greek] = disc * K * fm / x0
                    elif greek is Greek.THETA:
                        out[greek] = (r * disc * (Xm >= K)
                                      - disc * K * fm
                                      * (math.log(K / x0) + mu * maturity)
                                      / (2.0 * maturity))
                    elif greek is Greek.VEGA:
                        out[greek] = (disc * K * fm
                                      * (math.log(K / x0)
                                         - (mu + sigma * sigma) * maturity) / sigma)
                    else:  # GAMMA
                        out[greek] = (disc * K * fm
                                      * (np.log(K / prev) - (mu + sigma * sigma) * tau)
                                      / (x0 * x0 * sig2tau))
            else:  # ASIAN_DIGITAL
                head = X[:, :-1]
                s_minus = head.sum(axis=1) if m >= 2 else np.zeros(count)
                s_m = m * K - s_minus
                alive = s_m > 0.0
                s_safe = np.where(alive, s_m, 1.0)
                fm = np.where(alive, _bs_step_density(s_safe, prev, p), 0.0)
                xbar = X.mean(axis=1)
                times_head = steps_time[:-1]
                for greek in greeks:
                    if greek is Greek.DELTA:
                        out[greek] = disc * m * K * fm / x0
                    elif greek is Greek.THETA:
                        tail = s_safe * (np.log(s_safe / x0) + mu * maturity)
                        if m >= 2:
                            tail = tail + (head * (np.log(head / x0)
                                                   + mu * times_head)).sum(axis=1)
                        out[greek] = (r * disc * (xbar >= K)
                                      - disc * fm * tail / (2.0 * maturity))
                    elif greek is Greek.VEGA:
                        tail = s_safe * (np.log(s_safe / x0)
                                         - (mu + sigma * sigma) * maturity)
                        if m >= 2:
                            tail = tail + (head * (np.log(head / x0)
                                                   - (mu + sigma * sigma)
                                                   * times_head)).sum(axis=1)
                        out[greek] = disc * fm * tail / sigma
                    else:  # GAMMA
                        out[greek] = (disc * m * K * fm / (s_safe * x0 * x0)
                                      * (s_minus - s_m
                                         + m * K * (np.log(s_safe / prev) - mu * tau)
                                         / sig2tau))
            return np.column_stack([out[g] for g in greeks])

        # change-of-variables
        if option.kind is OptionKind.DIGITAL:
            y = X1 * K / Xm
            f1 = _bs_step_density(y, x0, p)
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = disc * y * f1 / x0
                elif greek is Greek.THETA:
                    out[greek] = (r * disc * (Xm >= K)
                                  - disc * y * f1
                                  * (mu * maturity + math.log(K / x0))
                                  / (2.0 * maturity))
                elif greek is Greek.VEGA:
                    out[greek] = (disc * y * f1
                                  * (math.log(K / x0)
                                     - (mu + sigma * sigma) * maturity) / sigma)
                else:  # GAMMA
                    out[greek] = (disc * y * f1 / (x0 * x0 * sig2tau)
                                  * (np.log(y / x0) - (mu + sigma * sigma) * tau))
        elif option.kind is OptionKind.ASIAN_DIGITAL:
            xbar = X.mean(axis=1)
            y = X1 * K / xbar
            f1 = _bs_step_density(y, x0, p)
            w = X / xbar[:, None]
            logw = np.log(w) + math.log(K / x0)
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = disc * y * f1 / x0
                elif greek is Greek.THETA:
                    s = (w * (logw + mu * steps_time)).sum(axis=1)
                    out[greek] = (r * disc * (xbar >= K)
                                  - disc * y * f1 * s / (2.0 * m * maturity))
                elif greek is Greek.VEGA:
                    s = (w * (logw - (mu + sigma * sigma) * steps_time)).sum(axis=1)
                    out[greek] = disc * y * f1 * s / (m * sigma)
                else:  # GAMMA
                    out[greek] = (disc * y * f1 / (x0 * x0 * sig2tau)
                                  * (np.log(y / x0) - (mu + sigma * sigma) * tau))
        else:  # BARRIER_CALL
            xhat = X.max(axis=1)
            istar = np.argmax(X, axis=1)
            istar_time = steps_time[istar]
            alive = xhat <= kappa
            in_money = Xm >= K
            yb = X1 * kappa / xhat
            f1b = _bs_step_density(yb, x0, p)
            pp = np.maximum(Xm * kappa / xhat - K, 0.0)
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = (disc * Xm / x0 * in_money * alive
                                  - disc * yb * f1b * pp / x0)
                elif greek is Greek.THETA:
                    out[greek] = (r * disc * np.maximum(Xm - K, 0.0) * alive
                                  - disc / (2.0 * maturity) * Xm * in_money * alive
                                  * (np.log(Xm / x0) + mu * maturity)
                                  + disc / (2.0 * maturity) * yb * f1b * pp
                                  * (math.log(kappa / x0) + mu * istar_time))
                elif greek is Greek.VEGA:
                    out[greek] = (disc * Xm * in_money * alive
                                  * (np.log(Xm / x0)
                                     - (mu + sigma * sigma) * maturity) / sigma
                                  - disc * yb * f1b * pp / sigma
                                  * (math.log(kappa / x0)
                                     - (mu + sigma * sigma) * istar_time))
                else:  # GAMMA
                    yd = X1 * K / Xm
                    f1d = _bs_step_density(yd, x0, p)
                    bm = Xm * kappa / xhat
                    out[greek] = (disc * K * yd * f1d / (x0 * x0)
                                  * (xhat * K / Xm <= kappa)
                                  - disc * yb * bm * f1b / (x0 * x0) * (bm >= K)
                                  - disc * yb * f1b * pp / (x0 * x0 * sig2tau)
                                  * (np.log(yb / x0) - (mu + sigma * sigma) * tau))
        return np.column_stack([out[g] for g in greeks])

    return values


# -- variance-gamma estimators ---------------------------------------------------


def _vg_step_density(y: np.ndarray, x_prev, g_inc, p: VgParams) -> np.ndarray:
    return np.exp(vg_log_conditional_density(y, x_prev, g_inc, p))


def _vg_values(p: VgParams, option: OptionSpec, method: Method,
               greeks: tuple[Greek, ...]) -> Callable:
    m, tau, sigma, x0 = p.steps, p.tau, p.sigma, p.x0
    mu, maturity, r, theta_vg = p.drift, p.maturity, p.r, p.theta_vg
    gamma_arg = p.log_argument
    disc = math.exp(-r * maturity)
    K = option.strike
    kappa = option.barrier
    steps_time = np.arange(1, m + 1) * tau

    def values(rng: np.random.Generator, count: int) -> np.ndarray:
        X, G = simulate_vg_block(p, count, rng)
        X1, Xm = X[:, 0], X[:, -1]
        G1, Gm = G[:, 0], G[:, -1]
        g_cum = np.cumsum(G, axis=1)
        s_g = g_cum[:, -1]
        prev = X[:, -2] if m >= 2 else np.full(count, x0)
        out = {}

        if method is Method.LR:
            log_ratios = np.diff(np.log(X), axis=1, prepend=math.log(x0))
            q = log_ratios - mu * tau - theta_vg * G
            q1 = q[:, 0]
            if option.kind is OptionKind.DIGITAL:
                payoff = disc * (Xm >= K)
            elif option.kind is OptionKind.ASIAN_DIGITAL:
                payoff = disc * (X.mean(axis=1) >= K)
            else:
                payoff = disc * np.maximum(Xm - K, 0.0) * (X.max(axis=1) <= kappa)
            sig2 = sigma * sigma
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = q1 / (x0 * sig2 * G1) * payoff
                elif greek is Greek.GAMMA:
                    l1 = q1 / (x0 * sig2 * G1)
                    out[greek] = (l1 * l1
                                  - (q1 + 1.0) / (x0 * x0 * sig2 * G1)) * payoff
                elif greek is Greek.VEGA:
                    l4 = ((q * q / G).sum(axis=1) / (sigma * sig2)
                          - (q / G).sum(axis=1) * tau / (sigma * gamma_arg)
                          - m / sigma)
                    out[greek] = l4 * payoff
                else:  # THETA
                    l3 = (-m / (2.0 * maturity)
                          + (q * q / G).sum(axis=1) / (2.0 * sig2 * maturity)
                          + ((mu / m + theta_vg * G / maturity) * q / G)
                          .sum(axis=1) / sig2)
                    out[greek] = r * payoff - l3 * payoff
            return np.column_stack([out[g] for g in greeks])

        if method is Method.CMC:
            if option.kind is OptionKind.DIGITAL:
                fm = _vg_step_density(np.full(count, K), prev, Gm, p)
                for greek in greeks:
                    if greek is Greek.DELTA:
                        out[greek] = disc * K * fm / x0
                    elif greek is Greek.THETA:
                        out[greek] = (r * disc * (Xm >= K)
                                      - disc * K * fm
                                      * (theta_vg * s_g + mu * maturity
                                         + math.log(K / x0)) / (2.0 * maturity))
                    elif greek is Greek.VEGA:
                        out[greek] = (disc * K * fm
                                      * ((math.log(K / x0) - mu * maturity
                                          - theta_vg * s_g) / sigma
                                         - maturity * sigma / gamma_arg))
                    else:  # GAMMA
                        out[greek] = (disc * K * fm
                                      * (np.log(K / prev)
                                         - (mu * tau + theta_vg * Gm
                                            + sigma * sigma * Gm))
                                      / (x0 * x0 * sigma * sigma * Gm))
            else:  # ASIAN_DIGITAL
                head = X[:, :-1]
                s_minus = head.sum(axis=1) if m >= 2 else np.zeros(count)
                s_m = m * K - s_minus
                alive = s_m > 0.0
                s_safe = np.where(alive, s_m, 1.0)
                fm = np.where(alive, _vg_step_density(s_safe, prev, Gm, p), 0.0)
                xbar = X.mean(axis=1)
                times_head = steps_time[:-1]
                gcum_head = g_cum[:, :-1]
                for greek in greeks:
                    if greek is Greek.DELTA:
                        out[greek] = disc * m * K * fm / x0
                    elif greek is Greek.THETA:
                        tail = s_safe * (np.log(s_safe / x0) + mu * maturity
                                         + theta_vg * s_g)
                        if m >= 2:
                            tail = tail + (head * (np.log(head / x0)
                                                   + mu * times_head
                                                   + theta_vg * gcum_head)).sum(axis=1)
                        out[greek] = (r * disc * (xbar >= K)
                                      - disc * fm * tail / (2.0 * maturity))
                    elif greek is Greek.VEGA:
                        tail = s_safe * ((np.log(s_safe / x0) - mu * maturity
                                          - theta_vg * s_g) / sigma
                                         - maturity * sigma / gamma_arg)
                        if m >= 2:
                            tail = tail + (head * ((np.log(head / x0)
                                                    - mu * times_head
                                                    - theta_vg * gcum_head) / sigma
                                                   - times_head * sigma
                                                   / gamma_arg)).sum(axis=1)
                        out[greek] = disc * fm * tail
                    else:  # GAMMA
                        out[greek] = (disc * m * K * fm / (x0 * x0)
                                      * (-1.0 + s_minus / s_safe
                                         + m * K
                                         * (np.log(s_safe / prev)
                                            - (mu * tau + theta_vg * Gm))
                                         / (sigma * sigma * Gm * s_safe)))
            return np.column_stack([out[g] for g in greeks])

        # change-of-variables
        if option.kind is OptionKind.DIGITAL:
            y = X1 * K / Xm
            f1 = _vg_step_density(y, x0, G1, p)
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = disc * y * f1 / x0
                elif greek is Greek.THETA:
                    out[greek] = (r * disc * (Xm >= K)
                                  - disc * y * f1
                                  * (theta_vg * s_g + mu * maturity
                                     + math.log(K / x0)) / (2.0 * maturity))
                elif greek is Greek.VEGA:
                    out[greek] = (disc * y * f1
                                  * ((math.log(K / x0) - mu * maturity
                                      - theta_vg * s_g) / sigma
                                     - maturity * sigma / gamma_arg))
                else:  # GAMMA
                    out[greek] = (disc * y * f1 / (x0 * x0 * sigma * sigma * G1)
                                  * (np.log(y / x0)
                                     - (mu * tau + theta_vg * G1
                                        + sigma * sigma * G1)))
        elif option.kind is OptionKind.ASIAN_DIGITAL:
            xbar = X.mean(axis=1)
            y = X1 * K / xbar
            f1 = _vg_step_density(y, x0, G1, p)
            w = X / xbar[:, None]
            logw = np.log(w) + math.log(K / x0)
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = disc * y * f1 / x0
                elif greek is Greek.THETA:
                    s = (w * (logw + mu * steps_time + theta_vg * g_cum)).sum(axis=1)
                    out[greek] = (r * disc * (xbar >= K)
                                  - disc * y * f1 * s / (2.0 * m * maturity))
                elif greek is Greek.VEGA:
                    s = (w * ((logw - mu * steps_time - theta_vg * g_cum) / sigma
                              - steps_time * sigma / gamma_arg)).sum(axis=1)
                    out[greek] = disc * y * f1 * s / m
                else:  # GAMMA
                    out[greek] = (disc * y * f1 / (x0 * x0 * sigma * sigma * G1)
                                  * (np.log(y / x0)
                                     - (mu * tau + theta_vg * G1
                                        + sigma * sigma * G1)))
        else:  # BARRIER_CALL
            xhat = X.max(axis=1)
            istar = np.argmax(X, axis=1)
            istar_time = steps_time[istar]
            g_star = g_cum[np.arange(count), istar]
            alive = xhat <= kappa
            in_money = Xm >= K
            yb = X1 * kappa / xhat
            f1b = _vg_step_density(yb, x0, G1, p)
            pp = np.maximum(Xm * kappa / xhat - K, 0.0)
            for greek in greeks:
                if greek is Greek.DELTA:
                    out[greek] = (disc * Xm / x0 * in_money * alive
                                  - disc * yb * f1b * pp / x0)
                elif greek is Greek.THETA:
                    out[greek] = (r * disc * np.maximum(Xm - K, 0.0) * alive
                                  - disc / (2.0 * maturity) * Xm * in_money * alive
                                  * (np.log(Xm / x0) + mu * maturity
                                     + theta_vg * s_g)
                                  + disc / (2.0 * maturity) * yb * f1b * pp
                                  * (math.log(kappa / x0) + mu * istar_time
                                     + theta_vg * g_star))
                elif greek is Greek.VEGA:
                    out[greek] = (disc * Xm * in_money * alive
                                  * ((np.log(Xm / x0) - mu * maturity
                                      - theta_vg * s_g) / sigma
                                     - sigma * maturity / gamma_arg)
                                  - disc * yb * f1b * pp
                                  * ((math.log(kappa / x0) - mu * istar_time
                                      - theta_vg * g_star) / sigma
                                     - sigma * istar_time / gamma_arg))
                else:  # GAMMA
                    yd = X1 * K / Xm
                    f1d = _vg_step_density(yd, x0, G1, p)
                    bm = Xm * kappa / xhat
                    out[greek] = (disc * K * yd * f1d / (x0 * x0)
                                  * (xhat * K / Xm <= kappa)
                                  - disc * yb * bm * f1b / (x0 * x0) * (bm >= K)
                                  - disc * yb * f1b * pp
                                  / (x0 * x0 * sigma * sigma * G1)
                                  * (np.log(yb / x0)
                                     - (mu * tau + theta_vg * G1
                                        + sigma * sigma * G1)))
        return np.column_stack([out[g] for g in greeks])

    return values


# -- public estimation surface ---------------------------------------------------


def estimate_greeks(model: BsParams | VgParams, option: OptionSpec, method: Method,
                    greeks: Iterable[Greek], n: int, seed: int, stream: int = 0,
                    workers: int | None = None) -> dict[Greek, EstimatorOutput]:
    """Estimate several sensitivities from one shared set of simulated paths."""
    greeks = tuple(greeks)
    if not greeks:
        raise SpecError("no greeks requested")
    if method is Method.CMC and option.kind is OptionKind.BARRIER_CALL:
        raise UnsupportedMethodError(
            "no conditional Monte Carlo estimator exists for the barrier call: "
            "there is no known conditioning that smooths the running-maximum "
            "indicator; use the cov or lr method")
    if n < 2:
        raise SpecError(f"need n >= 2 samples, got {n}")
    if isinstance(model, BsParams):
        values_fn = _bs_values(model, option, method, greeks)
    elif isinstance(model, VgParams):
        values_fn = _vg_values(model, option, method, greeks)
    else:
        raise SpecError(f"unsupported model type {type(model).__name__}")
    outputs = run_blocked(values_fn, len(greeks), n, seed, stream, workers)
    return dict(zip(greeks, outputs))


def greek_cov(model, option: OptionSpec, greek: Greek, n: int, seed: int,
              stream: int = 0) -> EstimatorOutput:
    return estimate_greeks(model, option, Method.COV, [greek], n, seed, stream)[greek]


def greek_lr(model, option: OptionSpec, greek: Greek, n: int, seed: int,
             stream: int = 0) -> EstimatorOutput:
    return estimate_greeks(model, option, Method.LR, [greek], n, seed, stream)[greek]


def greek_cmc(model, option: OptionSpec, greek: Greek, n: int, seed: int,
              stream: int = 0) -> EstimatorOutput:
    return estimate_greeks(model, option, Method.CMC, [greek], n, seed, stream)[greek]


# -- closed-form references ------------------------------------------------------


def bs_digital_price(p: BsParams, strike: float) -> float:
    d2 = _d2(p, strike)
    return math.exp(-p.r * p.maturity) * norm.cdf(d2)


def _d2(p: BsParams, strike: float) -> float:
    return ((math.log(p.x0 / strike) + p.drift * p.maturity)
            / (p.sigma * math.sqrt(p.maturity)))


def bs_digital_oracle(greek: Greek, p: BsParams, strike: float) -> float:
    """Analytic digital-option sensitivity under the lognormal model.

    Derived by differentiating exp(-rT) Phi(d2) with
    d2 = (log(x0/K) + (r - sigma^2/2) T) / (sigma sqrt(T)); theta is minus
    the maturity derivative. Each formula is cross-checked against central
    finite differences of the price in the test suite.
    """
    sigma, maturity, x0, r = p.sigma, p.maturity, p.x0, p.r
    sqrt_t = math.sqrt(maturity)
    d2 = _d2(p, strike)
    disc = math.exp(-r * maturity)
    pdf = norm.pdf(d2)
    if greek is Greek.DELTA:
        return disc * pdf / (x0 * sigma * sqrt_t)
    if greek is Greek.GAMMA:
        d1 = d2 + sigma * sqrt_t
        return -disc * pdf * d1 / (x0 * x0 * sigma * sigma * maturity)
    if greek is Greek.VEGA:
        return -disc * pdf * (d2 / sigma + sqrt_t)
    # theta = -d/dT [disc * Phi(d2)]
    dd2_dt = p.drift / (sigma * sqrt_t) - d2 / (2.0 * maturity)
    return r * disc * norm.cdf(d2) - disc * pdf * dd2_dt


def bs_call_oracle(greek: Greek, p: BsParams, strike: float) -> float:
    """Analytic vanilla-call sensitivity (no dividend), theta as -dPrice/dT."""
    sigma, maturity, x0, r = p.sigma, p.maturity, p.x0, p.r
    sqrt_t = math.sqrt(maturity)
    d2 = _d2(p, strike)
    d1 = d2 + sigma * sqrt_t
    disc = math.exp(-r * maturity)
    if greek is Greek.DELTA:
        return norm.cdf(d1)
    if greek is Greek.GAMMA:
        return norm.pdf(d1) / (x0 * sigma * sqrt_t)
    if greek is Greek.VEGA:
        return x0 * norm.pdf(d1) * sqrt_t
    return -(x0 * norm.pdf(d1) * sigma / (2.0 * sqrt_t)
             + r * strike * disc * norm.cdf(d2))
