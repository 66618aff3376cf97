"""Reproducible sampling from X_d(n, p).

Every one of the C(n, d+1) candidate d-faces goes in independently with
probability p. In the sparse regime p = c/n the sampler walks the rank space
with geometric skips, so the cost is proportional to the number of included
faces rather than to C(n, d+1).

Randomness is numpy's PCG64 (``default_rng``). Substreams are derived through
``numpy.random.SeedSequence``: experiments seed trial (g, t) of a sweep with
entropy [base_seed, g, t], which is the documented splitting scheme.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .complexes import Complex

SeedLike = "int | np.random.SeedSequence | np.random.Generator"


@dataclass(frozen=True)
class ModelParams:
    """Parameters (n, d, p, seed) of one draw from X_d(n, p)."""

    n: int
    d: int
    p: float
    seed: object = 0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension d must be >= 1, got {self.d}")
        if self.n <= self.d:
            raise ValueError(f"need n > d, got n={self.n}, d={self.d}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @classmethod
    def from_c(cls, n: int, d: int, c: float, seed: object = 0) -> "ModelParams":
        """Density parametrization p = c/n."""
        if c < 0 or c > n:
            raise ValueError(f"c must lie in [0, n], got {c}")
        return cls(n=n, d=d, p=c / n, seed=seed)


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def bernoulli_ranks(rng: np.random.Generator, total: int, p: float) -> np.ndarray:
    """Sorted ranks of an i.i.d. Bernoulli(p) subset of [0, total).

    Gaps between successive included ranks are Geometric(p) on {1, 2, ...};
    drawing them in fixed-size batches keeps the draw sequence, and hence the
    sample, deterministic for a given generator state.
    """
    if total == 0 or p == 0.0:
        return np.empty(0, dtype=np.int64)
    if p == 1.0:
        return np.arange(total, dtype=np.int64)
    batch = max(256, int(total * p * 1.25 + 10 * np.sqrt(total * p) + 16))
    chunks = []
    pos = -1
    while True:
        gaps = rng.geometric(p, size=batch).astype(np.int64)
        ranks = pos + np.cumsum(gaps)
        if ranks[-1] < total:
            chunks.append(ranks)
            pos = int(ranks[-1])
            continue
        chunks.append(ranks[ranks < total])
        break
    return np.concatenate(chunks)


def sample_complex(params: ModelParams) -> Complex:
    """Draw a complex from X_d(n, p); identical params give a bit-identical face set."""
    rng = _as_generator(params.seed)
    total = comb(params.n, params.d + 1)
    ranks = bernoulli_ranks(rng, total, params.p)
    return Complex(params.n, params.d, ranks)
