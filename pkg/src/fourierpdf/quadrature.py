"""Composite Gauss-Legendre quadrature on breakpoint-aligned panels."""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

import numpy as np


class QuadratureError(RuntimeError):
    """Refinement limit reached; carries the best estimate and its error bound."""

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(f"{message} (estimate={estimate!r}, error bound={error_bound:.3e})")
        self.estimate = estimate
        self.error_bound = error_bound


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def fixed_panels(f: Callable[[np.ndarray], np.ndarray], edges: Sequence[float], order: int) -> float:
    """Apply ``order``-point Gauss-Legendre on every ``[edges[i], edges[i+1]]``."""
    t, w = gauss_legendre(order)
    edges = np.asarray(edges, dtype=np.float64)
    left, right = edges[:-1], edges[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    x = mid[:, None] + half[:, None] * t[None, :]
    fx = np.asarray(f(x.ravel()), dtype=np.float64).reshape(x.shape)
    return float(np.sum((fx * w[None, :]) * half[:, None]))


def composite(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    order: int = 64,
    tol: float = 1e-13,
    max_doublings: int = 10,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[breakpoints[0], breakpoints[-1]]``.

    Every interval between consecutive breakpoints starts as one panel; panels
    are halved until two successive estimates differ by less than ``tol``.
    Returns ``(estimate, last_difference)``.
    """
    base = np.asarray(sorted(set(float(b) for b in breakpoints)), dtype=np.float64)
    if base.size < 2:
        return 0.0, 0.0
    prev = fixed_panels(f, base, order)
    edges = base
    diff = float("inf")
    for _ in range(max_doublings):
        mids = 0.5 * (edges[:-1] + edges[1:])
        edges = np.sort(np.concatenate([edges, mids]))
        cur = fixed_panels(f, edges, order)
        diff = abs(cur - prev)
        prev = cur
        if diff < tol:
            return cur, diff
    raise QuadratureError("composite Gauss-Legendre did not converge", prev, diff)
