"""Deterministic blocked Monte Carlo execution shared by the estimators.

A run is defined by (values_fn, n, seed, stream): the sample index range is
cut into fixed-size blocks, block ``b`` is evaluated with the Philox stream
keyed by (seed, stream, b), and block moments are merged in index order.
The result is bit-identical for any worker count.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import PoisonedSampleError
from .results import BlockAccumulator, EstimatorOutput
from .rng import block_rng, block_sizes, map_blocks

ValuesFn = Callable[[np.random.Generator, int], np.ndarray]


def run_blocked(values_fn: ValuesFn, width: int, n: int, seed: int, stream: int,
                workers: int | None = None) -> list[EstimatorOutput]:
    """Accumulate per-sample estimator vectors over n samples.

    ``values_fn(rng, count)`` must return a (count, width) array of
    per-sample values. Non-finite values abort the run with the offending
    global sample index.
    """
    sizes = block_sizes(n)
    starts = np.concatenate(([0], np.cumsum(sizes[:-1]))) if sizes else np.array([0])

    def eval_block(b: int) -> tuple[int, np.ndarray, np.ndarray]:
        rng = block_rng(seed, stream, b)
        values = np.asarray(values_fn(rng, sizes[b]), dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.shape != (sizes[b], width):
            raise ValueError(
                f"values_fn returned shape {values.shape}, expected "
                f"({sizes[b]}, {width})")
        bad = ~np.isfinite(values)
        if bad.any():
            row = int(np.flatnonzero(bad.any(axis=1))[0])
            col = int(np.flatnonzero(bad[row])[0])
            raise PoisonedSampleError(int(starts[b]) + row, float(values[row, col]))
        mean = values.mean(axis=0)
        m2 = ((values - mean) ** 2).sum(axis=0)
        return sizes[b], mean, m2

    acc = BlockAccumulator(width)
    for count, mean, m2 in map_blocks(eval_block, len(sizes), workers):
        acc.add_stats(count, mean, m2)
    return acc.outputs()
