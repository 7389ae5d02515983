"""Exact rational arithmetic and the polynomial-in-pi evaluation layer.

Rationals are :class:`fractions.Fraction`; multiprecision floats are
:class:`mpmath.mpf`.  Every moment, binomial and Pochhammer product stays
exact, and floating point enters only when a polynomial in ``pi**2`` is
finally evaluated, which keeps the alternating coefficient series free of
cancellation at any truncation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath

DEFAULT_PRECISION_BITS = 320
MIN_PRECISION_BITS = 64

BigRational = Fraction


def _check_precision(precision_bits: int, minimum: int = MIN_PRECISION_BITS) -> None:
    if precision_bits < minimum:
        raise ValueError(f"precision_bits must be >= {minimum}, got {precision_bits}")


def binomial(n: int, k: int) -> Fraction:
    """Exact binomial coefficient C(n, k); raises if k is outside 0..n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs nonnegative arguments, got ({n}, {k})")
    if k > n:
        raise ValueError(f"binomial({n}, {k}): k exceeds n")
    return Fraction(comb(n, k))


def pochhammer(a: Fraction | int, m: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+m-1)``; equal to 1 when ``m == 0``."""
    if m < 0:
        raise ValueError("pochhammer order must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    for t in range(m):
        out *= a + t
    return out


def to_mpf(q: Fraction | int, precision_bits: int) -> mpmath.mpf:
    """Round a rational once to a multiprecision float."""
    q = Fraction(q)
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(q.numerator) / q.denominator


def pi_at(precision_bits: int) -> mpmath.mpf:
    _check_precision(precision_bits)
    with mpmath.workprec(precision_bits):
        return +mpmath.pi


def sqrt_rational(q: Fraction | int, precision_bits: int) -> mpmath.mpf:
    """Square root of a nonnegative rational, correctly rounded at the working precision."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    with mpmath.workprec(precision_bits + 16):
        root = mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
    with mpmath.workprec(precision_bits):
        return +root


@dataclass(frozen=True)
class PiPolynomial:
    """``scale * sum_j coeffs[j] * pi**(2j)`` with exact rational ``coeffs``.

    The multiplier is kept as its exact square ``scale_squared`` (for example
    ``1/A**2``), so that it can be rounded afresh at whatever precision the
    polynomial is evaluated; ``scale_sign`` picks the root.
    """

    coeffs: tuple[Fraction, ...]
    scale_squared: Fraction = Fraction(1)
    scale_sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "scale_squared", Fraction(self.scale_squared))
        if self.scale_squared < 0:
            raise ValueError("scale_squared must be nonnegative")
        if self.scale_sign not in (1, -1):
            raise ValueError("scale_sign must be +1 or -1")

    @property
    def degree(self) -> int:
        """Highest power of ``pi**2`` present."""
        return len(self.coeffs) - 1

    def scale(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
        return self.scale_sign * sqrt_rational(self.scale_squared, precision_bits)

    def __call__(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
        return eval_pi_polynomial(self, precision_bits)


def eval_pi_polynomial(p: PiPolynomial, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    """Evaluate ``p`` at ``precision_bits``, summing terms in increasing power of pi.

    Each rational coefficient is rounded once, multiplied by the running power
    of ``pi**2`` and accumulated; the result is deterministic for a fixed
    precision.
    """
    _check_precision(precision_bits, 256)
    scale = p.scale(precision_bits)
    with mpmath.workprec(precision_bits):
        pi2 = mpmath.pi**2
        power = mpmath.mpf(1)
        total = mpmath.mpf(0)
        for c in p.coeffs:
            if c:
                total += (mpmath.mpf(c.numerator) / c.denominator) * power
            power *= pi2
        return total * scale


@dataclass(frozen=True)
class BetaHalf:
    """``B(1/2, (n-2)/2)`` written exactly as ``rational * pi**pi_power``."""

    rational: Fraction
    pi_power: int

    def evaluate(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
        value = to_mpf(self.rational, precision_bits)
        if self.pi_power:
            with mpmath.workprec(precision_bits):
                value *= mpmath.pi**self.pi_power
        return value


def beta_half_exact(n: int) -> BetaHalf:
    if n < 4:
        raise ValueError(f"beta_half needs n >= 4, got {n}")
    if n % 2 == 0:
        # B(1/2, m) = 4^m (m-1)! m! / (2m)!
        m = (n - 2) // 2
        return BetaHalf(Fraction(4**m * factorial(m - 1) * factorial(m), factorial(2 * m)), 0)
    # second argument p + 1/2: B = pi * C(2p, p) / 4^p
    p = (n - 3) // 2
    return BetaHalf(Fraction(comb(2 * p, p), 4**p), 1)


def beta_half(n: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    """Beta function ``B(1/2, (n-2)/2)`` for integer ``n >= 4``, rounded once."""
    return beta_half_exact(n).evaluate(precision_bits)

