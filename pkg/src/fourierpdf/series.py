"""Truncated Fourier cosine models of even densities on ``[-A, A]``.

A model keeps ``a_0 = 1/A`` and ``a_1..a_K``; the density is
``a_0/2 + sum_k a_k cos(k pi x / A)`` and the distribution function the
termwise integral ``(x/A + 1)/2 + sum_k a_k A/(k pi) sin(k pi x / A)``.
Coefficients can come from even moments (exactly, as polynomials in
``pi**2``), from a density by quadrature, or from a closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

import mpmath
import numpy as np

from . import quadrature
from ._backend import kernels
from .moments import DEFAULT_SKEWNESS_ORDER, Family, MomentSequence, moments_for
from .numerics import DEFAULT_PRECISION_BITS, PiPolynomial, eval_pi_polynomial, sqrt_rational

UNIFORM_SUM_TRUNCATION = {
    2: (8, 35),
    4: (8, 35),
    6: (8, 30),
    8: (8, 30),
    10: (7, 25),
    12: (6, 20),
}
SKEWNESS_TRUNCATION = (12, DEFAULT_SKEWNESS_ORDER)


class InsufficientMomentsError(ValueError):
    pass


@dataclass(frozen=True)
class SupportSpec:
    """Half-width ``A`` of the support, held exactly through ``A**2``."""

    A_squared: Fraction
    n: int
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self) -> None:
        object.__setattr__(self, "A_squared", Fraction(self.A_squared))
        if self.A_squared <= 0:
            raise ValueError("support half-width must be positive")

    @property
    def A(self) -> mpmath.mpf:
        return sqrt_rational(self.A_squared, self.precision_bits)

    def A_at(self, precision_bits: int) -> mpmath.mpf:
        return sqrt_rational(self.A_squared, precision_bits)

    @property
    def A_float(self) -> float:
        return float(self.A)


def uniform_sum_support(n: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> SupportSpec:
    if n < 1:
        raise ValueError(f"uniform sum needs n >= 1, got {n}")
    return SupportSpec(Fraction(n * n, 4), n, precision_bits)


def skewness_support(n: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> SupportSpec:
    """Range of sqrt(b1) for ``n`` observations: ``A = (n-2)/sqrt(n-1)``."""
    if n < 3:
        raise ValueError(f"skewness support needs n >= 3, got {n}")
    return SupportSpec(Fraction((n - 2) ** 2, n - 1), n, precision_bits)


def support_for(family: Family | str, n: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> SupportSpec:
    if Family(family) is Family.UNIFORM_SUM:
        return uniform_sum_support(n, precision_bits)
    return skewness_support(n, precision_bits)


@dataclass(frozen=True)
class TruncationSpec:
    K: int
    J: int

    def __post_init__(self) -> None:
        if self.K < 0 or self.J < 0:
            raise ValueError(f"K and J must be nonnegative, got K={self.K}, J={self.J}")


def default_truncation(family: Family | str, n: int) -> TruncationSpec:
    """Default (K, J) for the family; uniform sums only have defaults for n = 2, 4, ..., 12."""
    family = Family(family)
    if family is Family.NORMAL_SKEWNESS:
        return TruncationSpec(*SKEWNESS_TRUNCATION)
    try:
        return TruncationSpec(*UNIFORM_SUM_TRUNCATION[n])
    except KeyError:
        raise ValueError(
            f"no default truncation for uniform-sum n={n}; pass K and J explicitly"
        ) from None


@dataclass(frozen=True, eq=False)
class FourierCosineModel:
    """Cosine coefficients ``a_0..a_K`` on ``[-A, A]`` plus their double views."""

    support: SupportSpec
    coeffs: tuple[mpmath.mpf, ...]
    provenance: str = "moments"
    J: int | None = None
    family: Family | None = None
    a: np.ndarray = field(init=False, repr=False)
    b: np.ndarray = field(init=False, repr=False)
    A: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a model needs at least a_0")
        prec = self.support.precision_bits
        with mpmath.workprec(prec):
            coeffs = tuple(mpmath.mpf(c) for c in self.coeffs)
            A = self.support.A
            sine = [mpmath.mpf(0)] + [coeffs[k] * A / (k * mpmath.pi) for k in range(1, len(coeffs))]
        a = np.array([float(c) for c in coeffs])
        b = np.array([float(c) for c in sine])
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "A", float(A))
        if abs(a[0] * self.A - 1.0) > 1e-14:
            raise ValueError(f"a_0 * A = {a[0] * self.A!r}; a density must integrate to one")

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    @property
    def n(self) -> int:
        return self.support.n

    def pdf(self, x):
        return pdf_eval(self, x)

    def cdf(self, x):
        return cdf_eval(self, x)

    def tail(self, x):
        return tail_prob(self, x)

    def ppf(self, alpha: float, tol: float = 1e-12) -> float:
        return percentile(self, alpha, tol)


def coeff_from_moments(support: SupportSpec, moments: MomentSequence, k: int, J: int) -> PiPolynomial:
    """Moment-series coefficient ``a_k^(J)`` as an exact polynomial in ``pi**2``.

    ``c_j = (-1)^j k^{2j} mu'_{2j} / ((2j)! A^{2j})`` for ``j = 0..J``, scaled by ``1/A``.
    """
    if k < 1:
        raise ValueError("coefficient index k must be >= 1; a_0 is 1/A")
    if J < 0:
        raise ValueError("J must be nonnegative")
    if moments.order < J:
        raise InsufficientMomentsError(
            f"J={J} needs even moments up to order {2 * J}; only {2 * moments.order} available"
        )
    inv_A2 = 1 / support.A_squared
    k2 = k * k
    coeffs = []
    ratio = Fraction(1)  # (k^2 / A^2)^j
    for j in range(J + 1):
        term = ratio * moments[j] / factorial(2 * j)
        coeffs.append(-term if j % 2 else term)
        ratio *= k2 * inv_A2
    return PiPolynomial(tuple(coeffs), scale_squared=inv_A2)


def coeff_from_pdf(
    pdf: Callable[[np.ndarray], np.ndarray],
    support: SupportSpec,
    k: int,
    breakpoints: Sequence[float] | None = None,
    order: int = 64,
    tol: float = 1e-13,
) -> float:
    """``(1/A) * integral_{-A}^{A} pdf(x) cos(k pi x / A) dx`` by composite Gauss-Legendre.

    ``breakpoints`` should list the points where ``pdf`` is not smooth;
    panels never straddle them.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    A = support.A_float
    knots = [-A, A]
    if breakpoints is not None:
        knots.extend(float(b) for b in breakpoints if -A < b < A)
    w = k * math.pi / A

    def integrand(x: np.ndarray) -> np.ndarray:
        return np.asarray(pdf(x), dtype=np.float64) * np.cos(w * x)

    value, _ = quadrature.composite(integrand, knots, order=order, tol=tol)
    return value / A


def model_from_coefficients(
    support: SupportSpec,
    coeffs: Sequence,
    provenance: str,
    family: Family | None = None,
    J: int | None = None,
) -> FourierCosineModel:
    return FourierCosineModel(support, tuple(coeffs), provenance=provenance, J=J, family=family)


def moment_coefficients(
    family: Family | str, n: int, trunc: TruncationSpec, precision_bits: int = DEFAULT_PRECISION_BITS
) -> list[mpmath.mpf]:
    """``[1/A, a_1^(J), ..., a_K^(J)]`` evaluated at ``precision_bits``."""
    family = Family(family)
    support = support_for(family, n, precision_bits)
    moments = moments_for(family, n, trunc.J)
    with mpmath.workprec(precision_bits):
        a0 = 1 / support.A
    out = [a0]
    for k in range(1, trunc.K + 1):
        out.append(eval_pi_polynomial(coeff_from_moments(support, moments, k, trunc.J), precision_bits))
    return out


_model_cache: dict[tuple, FourierCosineModel] = {}


def build_model(
    family: Family | str,
    n: int,
    trunc: TruncationSpec | None = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> FourierCosineModel:
    """Moment-based model ``f^(K, J)`` for one of the two families."""
    family = Family(family)
    if trunc is None:
        trunc = default_truncation(family, n)
    key = (family, n, trunc.K, trunc.J, precision_bits)
    model = _model_cache.get(key)
    if model is None:
        coeffs = moment_coefficients(family, n, trunc, precision_bits)
        model = FourierCosineModel(
            support_for(family, n, precision_bits),
            tuple(coeffs),
            provenance="moments",
            J=trunc.J,
            family=family,
        )
        _model_cache[key] = model
    return model


def _scalar_or_array(x, out: np.ndarray):
    if np.ndim(x) == 0:
        return float(np.ravel(out)[0])
    return out


def pdf_eval(model: FourierCosineModel, x):
    """Truncated density; zero outside ``[-A, A]``, raw (possibly negative) inside."""
    return _scalar_or_array(x, kernels.pdf_series(np.asarray(x, dtype=np.float64), model.a, model.A))


def cdf_eval(model: FourierCosineModel, x):
    """Truncated distribution function, 0 below ``-A``, 1 above ``A``, clamped to [0, 1]."""
    return _scalar_or_array(x, kernels.cdf_series(np.asarray(x, dtype=np.float64), model.b, model.A))


def tail_prob(model: FourierCosineModel, x):
    """Upper tail ``1 - F(x)``."""
    return _scalar_or_array(x, np.clip(1.0 - np.asarray(cdf_eval(model, x)), 0.0, 1.0))


def percentile(model: FourierCosineModel, alpha: float, tol: float = 1e-12) -> float:
    """Solve ``F(x) = alpha`` by safeguarded Newton iteration started at 0."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    x, _ = kernels.solve_quantile(model.a, model.b, model.A, float(alpha), float(tol))
    return float(x)
