"""Closed-form reference distributions used to check the series models."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import mpmath
import numpy as np

from . import quadrature
from .numerics import beta_half
from .series import FourierCosineModel, SupportSpec, pdf_eval
from .series import skewness_support as _skewness_support


@dataclass(frozen=True)
class PiecewisePolynomialPdf:
    """Density of the centred sum of ``n`` uniforms on [-1/2, 1/2].

    Piece ``i`` covers ``[-n/2 + i, -n/2 + i + 1]`` and is stored as exact
    rational coefficients in the local variable ``u = x - (-n/2 + i)``
    (ascending powers).  ``cdf_pieces`` are the antiderivatives normalised so
    that the cumulative mass at the left end of each piece is included.
    """

    n: int
    pdf_pieces: tuple[tuple[Fraction, ...], ...]
    cdf_pieces: tuple[tuple[Fraction, ...], ...]

    @property
    def breakpoints(self) -> list[Fraction]:
        return [Fraction(-self.n, 2) + i for i in range(self.n + 1)]

    @property
    def half_width(self) -> Fraction:
        return Fraction(self.n, 2)

    def total_mass(self) -> Fraction:
        return _poly_at(self.cdf_pieces[-1], Fraction(1))

    def _locate(self, x):
        left = -self.n / 2
        i = np.floor(np.asarray(x, dtype=np.float64) - left).astype(np.int64)
        i = np.clip(i, 0, self.n - 1)
        u = np.asarray(x, dtype=np.float64) - (left + i)
        return i, u

    def _evaluate(self, pieces, x, below: float, above: float):
        if isinstance(x, Fraction):
            return self._exact(pieces, x, below, above)
        x_arr = np.asarray(x, dtype=np.float64)
        i, u = self._locate(x_arr)
        table = _float_table(pieces)
        out = np.zeros_like(u)
        for p in range(table.shape[1] - 1, -1, -1):
            out = out * u + table[i, p]
        half = self.n / 2
        out = np.where(x_arr < -half, below, np.where(x_arr > half, above, out))
        return float(out) if out.ndim == 0 else out

    def _exact(self, pieces, x: Fraction, below: float, above: float) -> Fraction:
        half = Fraction(self.n, 2)
        if x < -half:
            return Fraction(below)
        if x > half:
            return Fraction(above)
        i = min(int(math.floor(x + half)), self.n - 1)
        return _poly_at(pieces[i], x + half - i)

    def pdf(self, x):
        """Density at ``x``; exact when ``x`` is a Fraction, double otherwise."""
        return self._evaluate(self.pdf_pieces, x, 0.0, 0.0)

    def cdf(self, x):
        return self._evaluate(self.cdf_pieces, x, 0.0, 1.0)


def _poly_at(coeffs: Sequence[Fraction], u: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * u + c
    return out


@lru_cache(maxsize=None)
def _float_table(pieces: tuple[tuple[Fraction, ...], ...]) -> np.ndarray:
    width = max(len(p) for p in pieces)
    table = np.zeros((len(pieces), width))
    for i, p in enumerate(pieces):
        table[i, : len(p)] = [float(c) for c in p]
    return table


@lru_cache(maxsize=None)
def irwin_hall(n: int) -> PiecewisePolynomialPdf:
    """Exact piecewise representation of the centred Irwin-Hall law."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    deg = n - 1
    scale = Fraction(1, factorial(deg))
    pdf_pieces = []
    for i in range(n):
        # sum_{j<=i} (-1)^j C(n, j) (u + i - j)^(n-1), expanded in powers of u
        coeffs = [Fraction(0)] * (deg + 1)
        for j in range(i + 1):
            sign = -1 if j % 2 else 1
            shift = i - j
            for p in range(deg + 1):
                coeffs[p] += sign * comb(n, j) * comb(deg, p) * shift ** (deg - p)
        pdf_pieces.append(tuple(c * scale for c in coeffs))
    cdf_pieces = []
    mass = Fraction(0)
    for piece in pdf_pieces:
        integral = [mass] + [c / (p + 1) for p, c in enumerate(piece)]
        cdf_pieces.append(tuple(integral))
        mass = _poly_at(integral, Fraction(1))
    return PiecewisePolynomialPdf(n, tuple(pdf_pieces), tuple(cdf_pieces))


def irwin_hall_pdf(n: int, x):
    return irwin_hall(n).pdf(x)


def irwin_hall_cdf(n: int, x):
    return irwin_hall(n).cdf(x)


def uniform_sum_coeff_exact(n: int, k: int) -> float:
    """Exact Fourier cosine coefficient of the uniform-sum density on ``[-n/2, n/2]``.

    Equals ``(2/n) * (sin(k pi / n) / (k pi / n))**n``, i.e. the characteristic
    function of the sum at ``k pi / A`` divided by ``A``.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if k == 0:
        return 2.0 / n
    if k % n == 0:
        return 0.0
    with mpmath.workprec(128):
        t = k * mpmath.pi / n
        return float(2 * (mpmath.sin(t) / t) ** n / n)


def skewness_support(n: int, precision_bits: int = 320) -> SupportSpec:
    """Range ``[-A, A]`` of sqrt(b1), ``A = (n-2)/sqrt(n-1)``."""
    return _skewness_support(n, precision_bits)


@dataclass(frozen=True)
class GearyCheck:
    n: int
    grid: np.ndarray
    rhs: np.ndarray
    model: np.ndarray
    quad_error: np.ndarray

    @property
    def deviation(self) -> np.ndarray:
        return np.abs(self.rhs - self.model)

    @property
    def max_deviation(self) -> float:
        return float(np.max(self.deviation))


def geary_rhs(model_prev: FourierCosineModel, n: int, x, quad_points: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """Right side of Geary's density recurrence for sample size ``n`` at the points ``x``.

    ``f_{n-1}`` is the previous model (zero outside its support).  With
    ``z = sin(theta)`` the weight ``(1-z^2)^((n-7)/2) dz`` becomes
    ``cos(theta)^(n-6) dtheta``, bounded for ``n >= 6``.  Returns the values
    and the difference between ``quad_points`` and ``2 * quad_points`` rules.
    """
    if n < 6:
        raise ValueError(f"the recurrence check needs n >= 6 (integrable weight), got {n}")
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    prefactor = math.sqrt((n - 1) / n) / float(beta_half(n))
    root_nm1 = math.sqrt(n - 1)
    root_n = math.sqrt(n)

    def rule(points: int) -> np.ndarray:
        t, w = quadrature.gauss_legendre(points)
        theta = 0.5 * math.pi * t
        z = np.sin(theta)
        c = np.cos(theta)
        weight = 0.5 * math.pi * w * c ** (n - 6)
        sigma = (root_nm1 * x[:, None] - 3 * z[None, :] + (n + 1) * z[None, :] ** 3) / (
            root_n * c[None, :] ** 3
        )
        f = np.asarray(pdf_eval(model_prev, sigma.ravel())).reshape(sigma.shape)
        return prefactor * (f @ weight)

    coarse = rule(quad_points)
    fine = rule(2 * quad_points)
    return fine, np.abs(fine - coarse)


def geary_consistency(
    model_prev: FourierCosineModel,
    model_cur: FourierCosineModel,
    grid: Sequence[float],
    quad_points: int = 256,
) -> GearyCheck:
    """Compare ``model_cur`` with the recurrence applied to ``model_prev`` on ``grid``."""
    if model_prev.n != model_cur.n - 1:
        raise ValueError("models must be for consecutive sample sizes")
    if model_prev.family is not None and model_prev.family != model_cur.family:
        raise ValueError("models must belong to the same family")
    x = np.asarray(grid, dtype=np.float64)
    rhs, err = geary_rhs(model_prev, model_cur.n, x, quad_points)
    if not np.all(np.isfinite(rhs)):
        bad = x[~np.isfinite(rhs)]
        raise quadrature.QuadratureError(f"non-finite recurrence value at x={bad.tolist()}", float("nan"), float("inf"))
    return GearyCheck(model_cur.n, x, rhs, np.asarray(pdf_eval(model_cur, x)), err)
