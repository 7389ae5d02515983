"""Pure numpy implementation of the series kernels (fallback for ``_kernels``).

``a`` holds the cosine coefficients ``a_0..a_K`` of the density and ``b`` the
sine coefficients ``b_k = a_k A / (k pi)`` of the distribution function
(``b[0]`` is ignored).  Series are evaluated at ``|x|`` and mirrored, which
makes the density exactly even and ``cdf(x) + cdf(-x) == 1`` up to one
rounding.
"""
from __future__ import annotations

import math

import numpy as np

NAME = "python"


def pdf_series(x, a, A):
    x = np.asarray(x, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    ax = np.abs(x)
    k = np.arange(1, a.shape[0], dtype=np.float64)
    theta = np.multiply.outer(ax * (math.pi / A), k)
    out = 0.5 * a[0] + np.cos(theta) @ a[1:]
    return np.where(ax > A, 0.0, out)


def cdf_series(x, b, A):
    x = np.asarray(x, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    ax = np.abs(x)
    k = np.arange(1, b.shape[0], dtype=np.float64)
    theta = np.multiply.outer(ax * (math.pi / A), k)
    upper = 0.5 * (ax / A + 1.0) + np.sin(theta) @ b[1:]
    upper = np.clip(upper, 0.0, 1.0)
    upper = np.where(ax >= A, 1.0, upper)
    return np.where(x < 0, 1.0 - upper, upper)


def _scalar_pdf(x: float, a, A: float) -> float:
    return float(pdf_series(np.array([x]), a, A)[0])


def _scalar_cdf(x: float, b, A: float) -> float:
    return float(cdf_series(np.array([x]), b, A)[0])


def solve_quantile(a, b, A, alpha, tol=1e-12, max_iter=200):
    """Bracketed Newton iteration from 0 on [-A, A] with bisection fallback.

    Returns ``(x, iterations)``.  A Newton step that leaves the current
    bracket, or a density below 1e-12, triggers a bisection step instead.
    """
    lo, hi = -A, A
    x = 0.0
    best_x, best_f = x, math.inf
    for it in range(1, max_iter + 1):
        f = _scalar_cdf(x, b, A) - alpha
        if abs(f) < best_f:
            best_x, best_f = x, abs(f)
        if f == 0.0:
            return x, it
        if f < 0.0:
            lo = x
        else:
            hi = x
        d = _scalar_pdf(x, a, A)
        step = None
        if abs(d) >= 1e-12:
            cand = x - f / d
            if lo < cand < hi:
                step = cand
        if step is None:
            step = 0.5 * (lo + hi)
        if abs(f) <= tol and abs(step - x) <= 1e-13 * max(1.0, abs(x)):
            return best_x, it
        if hi - lo <= 4e-16 * max(1.0, abs(x)):
            return best_x, it
        x = step
    return best_x, max_iter
