"""Seeded Monte Carlo draws of both statistics, histograms and KS distances.

Draws are generated in fixed blocks of ``BLOCK_SIZE`` replications.  Block
``i`` uses its own PCG64 stream spawned from ``SeedSequence(seed)``, so the
output depends only on ``(n, N, seed)`` and not on how many worker threads
produced the blocks.  Normal variates use the Box-Muller transform on that
stream (no rejection step, so stream positions never drift).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .moments import Family
from .series import FourierCosineModel, cdf_eval, support_for

BLOCK_SIZE = 1 << 16
GENERATOR = f"numpy.random.PCG64/SeedSequence.spawn (numpy {np.__version__})"


@dataclass(frozen=True, eq=False)
class SampleBatch:
    family: Family
    n: int
    N: int
    seed: int
    values: np.ndarray
    generator: str = GENERATOR
    redraws: int = 0

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    @property
    def A(self) -> float:
        return support_for(self.family, self.n).A_float

    def ecdf(self, x):
        """Empirical ``P(T <= x)``."""
        return np.searchsorted(self.values, x, side="right") / self.N

    def mean(self) -> float:
        return float(np.mean(self.values))

    def variance(self) -> float:
        return float(np.var(self.values, ddof=1))


@dataclass(frozen=True, eq=False)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    heights: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        widths = np.diff(self.edges)
        object.__setattr__(self, "heights", self.counts / (self.counts.sum() * widths))

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def width(self) -> float:
        return float(self.edges[1] - self.edges[0])


def _block_sizes(N: int) -> list[int]:
    full, rest = divmod(N, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _run_blocks(N: int, seed: int, draw: Callable[[np.random.Generator, int], tuple[np.ndarray, int]], workers: int | None):
    sizes = _block_sizes(N)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(np.random.Generator(np.random.PCG64(s)), m) for s, m in zip(streams, sizes)]
    if workers == 1 or len(jobs) == 1:
        parts = [draw(g, m) for g, m in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: draw(*job), jobs))
    values = np.sort(np.concatenate([p[0] for p in parts]))
    return values, sum(p[1] for p in parts)


def box_muller(rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` standard normals from ``ceil(size/2)`` uniform pairs."""
    pairs = (size + 1) // 2
    u = rng.random((2, pairs))
    r = np.sqrt(-2.0 * np.log1p(-u[0]))  # 1 - u is in (0, 1]
    angle = 2.0 * math.pi * u[1]
    return np.concatenate([r * np.cos(angle), r * np.sin(angle)])[:size]


def sample_uniform_sum(n: int, N: int, seed: int, workers: int | None = None) -> SampleBatch:
    """``N`` draws of the sum of ``n`` uniforms on [-1/2, 1/2]."""
    if n < 1 or N < 1:
        raise ValueError("need n >= 1 and N >= 1")

    def draw(rng: np.random.Generator, m: int):
        return (rng.random((m, n)) - 0.5).sum(axis=1), 0

    values, _ = _run_blocks(N, seed, draw, workers)
    return SampleBatch(Family.UNIFORM_SUM, n, N, seed, values)


def skewness_of(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise sqrt(b1) = m3 / m2^(3/2) and a mask of degenerate rows (m2 == 0)."""
    centred = samples - samples.mean(axis=1, keepdims=True)
    m2 = np.mean(centred**2, axis=1)
    m3 = np.mean(centred**3, axis=1)
    bad = m2 <= 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        g = m3 / m2**1.5
    return g, bad


def sample_skewness(n: int, N: int, seed: int, workers: int | None = None) -> SampleBatch:
    """``N`` draws of sqrt(b1) from normal samples of size ``n``.

    Degenerate samples are redrawn from the same block stream and counted.
    """
    if n < 3 or N < 1:
        raise ValueError("need n >= 3 and N >= 1")
    bound = (n - 2) / math.sqrt(n - 1)

    def draw(rng: np.random.Generator, m: int):
        g, bad = skewness_of(box_muller(rng, m * n).reshape(m, n))
        redraws = 0
        while bad.any():
            idx = np.flatnonzero(bad)
            redraws += idx.size
            g_new, bad_new = skewness_of(box_muller(rng, idx.size * n).reshape(idx.size, n))
            g[idx] = g_new
            bad[idx] = bad_new
        return g, redraws

    values, redraws = _run_blocks(N, seed, draw, workers)
    worst = float(np.max(np.abs(values)))
    if worst > bound + 1e-12:
        raise AssertionError(f"|sqrt(b1)| = {worst!r} exceeds the range bound {bound!r}")
    return SampleBatch(Family.NORMAL_SKEWNESS, n, N, seed, values, redraws=redraws)


def sample(family: Family | str, n: int, N: int, seed: int, workers: int | None = None) -> SampleBatch:
    if Family(family) is Family.UNIFORM_SUM:
        return sample_uniform_sum(n, N, seed, workers)
    return sample_skewness(n, N, seed, workers)


def sample_inverse_cdf(
    cdf: Callable[[np.ndarray], np.ndarray],
    A: float,
    N: int,
    seed: int,
    family: Family,
    n: int,
    iterations: int = 60,
) -> SampleBatch:
    """Inverse-transform sampling by vectorised bisection of a nondecreasing ``cdf`` on [-A, A]."""
    u = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed))).random(N)
    lo = np.full(N, -A)
    hi = np.full(N, A)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        below = np.asarray(cdf(mid)) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return SampleBatch(family, n, N, seed, np.sort(0.5 * (lo + hi)), generator=GENERATOR + " inverse-cdf")


def ks_distance(batch: SampleBatch, model: FourierCosineModel) -> float:
    """Kolmogorov-Smirnov distance between the batch ECDF and the model cdf."""
    if model.n != batch.n or (model.family is not None and model.family != batch.family):
        raise ValueError("batch and model must share family and n")
    F = np.asarray(cdf_eval(model, batch.values))
    i = np.arange(1, batch.N + 1)
    upper = np.max(i / batch.N - F)
    lower = np.max(F - (i - 1) / batch.N)
    return float(max(upper, lower))


def histogram(batch: SampleBatch, bins: int) -> Histogram:
    """Density histogram with ``bins`` equal bins spanning [-A, A]."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    A = batch.A
    edges = np.linspace(-A, A, bins + 1)
    counts, _ = np.histogram(np.clip(batch.values, -A, A), bins=edges)
    return Histogram(edges, counts)
