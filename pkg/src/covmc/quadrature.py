"""Adaptive one-dimensional quadrature.

Globally adaptive Gauss-Kronrod (G7/K15) bisection. This is the only
integrator the rest of the package uses: the conditional-weight kernels need
one-dimensional integrals of densities along rays, and the validation suite
needs an integration oracle that is independent of any closed form under test.

Semi-infinite ranges are handled by the rational substitution
``t = a + s/(1-s)`` rather than by truncation; lognormal-type tails decay
slowly enough that any fixed truncation point would be problem dependent.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable

from .errors import QuadratureError

DEFAULT_REL_TOL = 1e-8
ABS_FLOOR = 1e-12
MAX_DEPTH = 60

# 15-point Kronrod abscissae on [-1, 1] (positive half; the rule is symmetric)
# with the embedded 7-point Gauss rule on the odd-indexed nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

Integrand = Callable[[float], float]


def _kronrod_panel(f: Integrand, a: float, b: float) -> tuple[float, float]:
    """One K15 panel on [a, b]; returns (integral, error estimate)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)

    fc = f(mid)
    result_gauss = _WG[3] * fc
    result_kronrod = _WGK[7] * fc
    for i in range(7):
        dx = half * _XGK[i]
        fsum = f(mid - dx) + f(mid + dx)
        result_kronrod += _WGK[i] * fsum
        if i % 2 == 1:  # nodes 1, 3, 5 carry the Gauss weights
            result_gauss += _WG[(i - 1) // 2] * fsum

    integral = result_kronrod * half
    # Standard QUADPACK-style error heuristic for the G7/K15 pair.
    err = abs(result_kronrod - result_gauss) * half
    err = (200.0 * err) ** 1.5 if err > 0 else 0.0
    return integral, max(err, abs(integral) * 1e-16)


def integrate_interval(f: Integrand, a: float, b: float,
                       rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Integrate ``f`` over the finite interval (a, b).

    The estimated error is driven below ``max(rel_tol * |I|, ABS_FLOOR)``
    by globally adaptive bisection of the worst panel. Raises
    :class:`QuadratureError` (carrying the partial estimate) if the worst
    panel reaches subdivision depth ``MAX_DEPTH`` without converging; a
    silently wrong value is never returned.

    Endpoints themselves are never evaluated, so integrable endpoint
    singularities are acceptable.
    """
    if not a < b:
        raise ValueError(f"require a < b, got a={a}, b={b}")
    if not rel_tol > 0:
        raise ValueError(f"require rel_tol > 0, got {rel_tol}")

    integral, err = _kronrod_panel(f, a, b)
    # Max-heap on error, via negation. Entries: (-err, depth, a, b, integral).
    heap = [(-err, 0, a, b, integral)]
    total = integral
    total_err = err

    while total_err > max(rel_tol * abs(total), ABS_FLOOR):
        neg_err, depth, lo, hi, panel_int = heapq.heappop(heap)
        if depth >= MAX_DEPTH:
            raise QuadratureError(
                f"no convergence after reaching subdivision depth {MAX_DEPTH} "
                f"on [{lo}, {hi}]", estimate=total, error_estimate=total_err)
        mid = 0.5 * (lo + hi)
        left_int, left_err = _kronrod_panel(f, lo, mid)
        right_int, right_err = _kronrod_panel(f, mid, hi)
        total += (left_int + right_int) - panel_int
        total_err += (left_err + right_err) - (-neg_err)
        heapq.heappush(heap, (-left_err, depth + 1, lo, mid, left_int))
        heapq.heappush(heap, (-right_err, depth + 1, mid, hi, right_int))
        if not math.isfinite(total):
            raise QuadratureError("integrand produced non-finite values",
                                  estimate=total, error_estimate=total_err)

    return total


def integrate_semi_infinite(f: Integrand, a: float,
                            rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Integrate ``f`` over (a, +inf).

    Uses ``t = a + s/(1-s)`` mapping the half line to (0, 1); ``f`` must decay
    to zero fast enough to be integrable.
    """

    def mapped(s: float) -> float:
        one_minus = 1.0 - s
        t = a + s / one_minus
        return f(t) / (one_minus * one_minus)

    return integrate_interval(mapped, 0.0, 1.0, rel_tol=rel_tol)


def integrate(f: Integrand, a: float, b: float,
              rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Integrate ``f`` over (a, b) where either endpoint may be infinite."""
    neg_inf = a == -math.inf
    pos_inf = b == math.inf
    if not neg_inf and not pos_inf:
        return integrate_interval(f, a, b, rel_tol=rel_tol)
    if neg_inf and pos_inf:
        return (integrate_semi_infinite(f, 0.0, rel_tol=rel_tol)
                + integrate_semi_infinite(lambda t: f(-t), 0.0, rel_tol=rel_tol))
    if pos_inf:
        return integrate_semi_infinite(f, a, rel_tol=rel_tol)
    # (-inf, b): reflect onto (-b, +inf)
    return integrate_semi_infinite(lambda s: f(-s), -b, rel_tol=rel_tol)
