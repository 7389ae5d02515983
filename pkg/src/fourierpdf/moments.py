"""Exact even moments for the centred uniform sum and for sample skewness.

Both families are symmetric, so only even moments about the origin are
carried; odd ones vanish.  Rows are built by recurrence in the sample size
and cached, since row ``n`` needs the whole of row ``n - 1``.
"""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

DEFAULT_SKEWNESS_ORDER = 50


class Family(str, enum.Enum):
    UNIFORM_SUM = "uniform-sum"
    NORMAL_SKEWNESS = "skewness"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MomentSequence:
    """Even moments ``mu'_{n,0}, mu'_{n,2}, ..., mu'_{n,2J}`` of a symmetric statistic."""

    family: Family
    n: int
    even_moments: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        """Largest ``J`` available (the sequence holds ``J + 1`` entries)."""
        return len(self.even_moments) - 1

    def __getitem__(self, j: int) -> Fraction:
        return self.even_moments[j]

    def __len__(self) -> int:
        return len(self.even_moments)

    def moment(self, r: int) -> Fraction:
        """Raw moment of order ``r``; zero for odd ``r`` by symmetry."""
        if r < 0:
            raise ValueError("moment order must be nonnegative")
        if r % 2:
            return Fraction(0)
        return self.even_moments[r // 2]


_lock = threading.Lock()
_uniform_rows: dict[int, list[Fraction]] = {}
_skewness_rows: dict[int, list[Fraction]] = {}


def _uniform_base(J: int) -> list[Fraction]:
    # moments of U(-1/2, 1/2)
    return [Fraction(1, (2 * j + 1) * 4**j) for j in range(J + 1)]


def _uniform_row(n: int, J: int) -> list[Fraction]:
    cached = _uniform_rows.get(n)
    if cached is not None and len(cached) > J:
        return cached
    base = _uniform_base(J)
    row = base
    for _ in range(2, n + 1):
        row = [
            sum((comb(2 * j, 2 * k) * base[k] * row[j - k] for k in range(j + 1)), Fraction(0))
            for j in range(J + 1)
        ]
    _uniform_rows[n] = row
    return row


def uniform_sum_moments(n: int, J: int) -> MomentSequence:
    """Even moments of ``X_1 + ... + X_n`` with ``X_i`` iid uniform on [-1/2, 1/2].

    Convolution with one more uniform gives
    ``mu'_{n,2j} = sum_k C(2j, 2k) mu'_{n-1,2j-2k} / ((2k+1) 4^k)``.
    """
    if n < 1:
        raise ValueError(f"uniform sum needs n >= 1, got {n}")
    if J < 0:
        raise ValueError("J must be nonnegative")
    with _lock:
        row = _uniform_row(n, J)
    return MomentSequence(Family.UNIFORM_SUM, n, tuple(row[: J + 1]))


def uniform4_moment_closed(j: int) -> Fraction:
    """Closed form for the sum of four uniforms: ``8 (4^{j+1} - 1) / ((2j+1)(2j+2)(2j+3)(2j+4))``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return Fraction(8 * (4 * 4**j - 1), (1 + 2 * j) * (2 + 2 * j) * (3 + 2 * j) * (4 + 2 * j))


def _skewness_step(n: int, prev: list[Fraction], S: int) -> list[Fraction]:
    """Lift the even moments of sqrt(b1) from sample size ``n`` to ``n + 1``.

    The half-integer Pochhammer symbols are carried as integers over a
    power of two, ``(1/2)_m = H_m / 2^m`` and ``((n-1)/2)_m = G_m / 2^m``, so
    the inner double sum for a given ``s`` is an integer over ``2^{3s}``; that
    power cancels against ``(n/2)_{3s} = P_{3s} / 2^{3s}`` in the prefactor.
    """
    top = 3 * S + 1
    H = [1] * (top + 1)
    G = [1] * (top + 1)
    P = [1] * (top + 1)
    for t in range(top):
        H[t + 1] = H[t] * (1 + 2 * t)
        G[t + 1] = G[t] * (n - 1 + 2 * t)
        P[t + 1] = P[t] * (n + 2 * t)
    one_minus_n = 1 - n
    row = []
    for s in range(S + 1):
        total = Fraction(0)
        for j in range(s + 1):
            mu = prev[s - j]
            if not mu:
                continue
            inner = 0
            for i in range(2 * j + 1):
                inner += comb(2 * j, i) * 3 ** (2 * j - i) * one_minus_n**i * H[j + i] * G[3 * s - j - i]
            total += mu * (comb(2 * s, 2 * j) * (n + 1) ** (s - j) * inner)
        row.append(total / (n**s * P[3 * s]))
    return row


def _skewness_row(n: int, S: int) -> list[Fraction]:
    cached = _skewness_rows.get(n)
    if cached is not None and len(cached) > S:
        return cached
    # n = 2: m3 vanishes identically, so sqrt(b1) is degenerate at zero
    row = [Fraction(1)] + [Fraction(0)] * S
    for m in range(2, n):
        hit = _skewness_rows.get(m + 1)
        if hit is not None and len(hit) > S:
            row = hit
            continue
        row = _skewness_step(m, row, S)
        _skewness_rows[m + 1] = row
    return row


def skewness_moments(n: int, S: int = DEFAULT_SKEWNESS_ORDER) -> MomentSequence:
    """Even moments of the sample skewness sqrt(b1) of ``n`` iid normal observations.

    Built upward from ``n = 2`` with a moment recurrence in the sample size;
    entries ``0..S`` are exact rationals.
    """
    if n < 3:
        raise ValueError(f"skewness moments need n >= 3, got {n}")
    if S < 0:
        raise ValueError("S must be nonnegative")
    with _lock:
        # row entries do not depend on S, so always build at least the default depth
        row = _skewness_row(n, max(S, DEFAULT_SKEWNESS_ORDER))
    return MomentSequence(Family.NORMAL_SKEWNESS, n, tuple(row[: S + 1]))


def skewness_variance(n: int) -> Fraction:
    """Closed-form variance ``6(n-2)/((n+1)(n+3))`` of sqrt(b1) under normality."""
    return Fraction(6 * (n - 2), (n + 1) * (n + 3))


def moments_for(family: Family | str, n: int, J: int) -> MomentSequence:
    family = Family(family)
    if family is Family.UNIFORM_SUM:
        return uniform_sum_moments(n, J)
    return skewness_moments(n, J)
