"""Sample-mean estimator outputs and deterministic block accumulation."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .errors import PoisonedSampleError


@dataclass(frozen=True)
class EstimatorOutput:
    """Summary of a sample-mean estimator.

    ``sd`` is the per-sample standard deviation (n-1 divisor) and
    ``se = sd / sqrt(n)`` the standard error of the mean. ``relative_error``
    is ``se / |reference|`` once a reference value is attached; this is the
    convention that reproduces the published benchmark magnitudes (the
    standard deviation *of the mean estimator* over the true value).
    """

    estimate: float
    sd: float
    se: float
    n: int
    relative_error: float | None = None

    def with_reference(self, reference: float) -> "EstimatorOutput":
        if reference == 0 or not math.isfinite(reference):
            raise ZeroDivisionError(
                f"cannot form a relative error against reference {reference!r}")
        return replace(self, relative_error=self.se / abs(reference))

    def agrees_with(self, other: "EstimatorOutput", n_se: float = 4.0,
                    atol: float = 0.0) -> bool:
        """Two-estimator consistency check at ``n_se`` combined standard errors."""
        tol = n_se * math.hypot(self.se, other.se) + atol
        return abs(self.estimate - other.estimate) <= tol


def estimate_mean(values: Iterable[float]) -> EstimatorOutput:
    """Sample mean, sample standard deviation, and standard error.

    Raises :class:`PoisonedSampleError` with the index of the first
    non-finite entry; an estimator that silently averages NaNs is worse
    than one that fails loudly.
    """
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                     dtype=float)
    if arr.ndim != 1:
        raise ValueError("estimate_mean expects a one-dimensional stream of values")
    n = arr.size
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    bad = ~np.isfinite(arr)
    if bad.any():
        idx = int(np.flatnonzero(bad)[0])
        raise PoisonedSampleError(idx, float(arr[idx]))
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1))
    return EstimatorOutput(estimate=mean, sd=sd, se=sd / math.sqrt(n), n=n)


class BlockAccumulator:
    """Mergeable running moments for vector-valued per-sample estimators.

    Each block contributes (count, mean, M2) per component; merging uses the
    parallel-update rule, so the final result is independent of how samples
    were split into blocks as long as blocks are merged in a fixed order.
    """

    def __init__(self, width: int):
        self.width = width
        self.count = 0
        self.mean = np.zeros(width)
        self.m2 = np.zeros(width)
        self._offset = 0

    def add_block(self, values: np.ndarray) -> None:
        values = np.atleast_2d(np.asarray(values, dtype=float))
        if values.shape[1] != self.width:
            raise ValueError(f"block width {values.shape[1]} != {self.width}")
        bad = ~np.isfinite(values)
        if bad.any():
            row = int(np.flatnonzero(bad.any(axis=1))[0])
            col = int(np.flatnonzero(bad[row])[0])
            raise PoisonedSampleError(self._offset + row, float(values[row, col]))
        nb = values.shape[0]
        bmean = values.mean(axis=0)
        bm2 = ((values - bmean) ** 2).sum(axis=0)
        self.add_stats(nb, bmean, bm2)

    def add_stats(self, count: int, mean: np.ndarray, m2: np.ndarray) -> None:
        """Merge pre-reduced block moments (parallel-update rule)."""
        if self.count == 0:
            self.count = count
            self.mean = np.array(mean, dtype=float)
            self.m2 = np.array(m2, dtype=float)
        else:
            delta = mean - self.mean
            tot = self.count + count
            self.mean = self.mean + delta * (count / tot)
            self.m2 = self.m2 + m2 + delta ** 2 * (self.count * count / tot)
            self.count = tot
        self._offset += count

    def outputs(self) -> list[EstimatorOutput]:
        if self.count < 2:
            raise ValueError("need at least 2 samples")
        var = self.m2 / (self.count - 1)
        sd = np.sqrt(var)
        se = sd / math.sqrt(self.count)
        return [EstimatorOutput(float(self.mean[i]), float(sd[i]), float(se[i]),
                                self.count)
                for i in range(self.width)]

    def output(self) -> EstimatorOutput:
        if self.width != 1:
            raise ValueError("scalar output requested from a vector accumulator")
        return self.outputs()[0]
