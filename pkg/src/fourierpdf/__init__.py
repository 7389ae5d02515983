"""Bounded even densities rebuilt from their even moments with Fourier cosine series.

Two worked families ship with the package: the centred sum of ``n`` uniform
variables and the sample skewness sqrt(b1) of ``n`` normal observations.

>>> from fourierpdf import build_model, percentile
>>> round(percentile(build_model("uniform-sum", 4), 0.99), 4)
1.3002
"""
from ._backend import BACKEND
from .exact_dists import (
    geary_consistency,
    irwin_hall,
    irwin_hall_cdf,
    irwin_hall_pdf,
    skewness_support,
    uniform_sum_coeff_exact,
)
from .moments import Family, MomentSequence, skewness_moments, uniform4_moment_closed, uniform_sum_moments
from .numerics import PiPolynomial, beta_half, binomial, eval_pi_polynomial, pi_at, pochhammer
from .series import (
    FourierCosineModel,
    SupportSpec,
    TruncationSpec,
    build_model,
    cdf_eval,
    coeff_from_moments,
    coeff_from_pdf,
    pdf_eval,
    percentile,
    tail_prob,
    uniform_sum_support,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Family",
    "FourierCosineModel",
    "MomentSequence",
    "PiPolynomial",
    "SupportSpec",
    "TruncationSpec",
    "beta_half",
    "binomial",
    "build_model",
    "cdf_eval",
    "coeff_from_moments",
    "coeff_from_pdf",
    "eval_pi_polynomial",
    "geary_consistency",
    "irwin_hall",
    "irwin_hall_cdf",
    "irwin_hall_pdf",
    "pdf_eval",
    "percentile",
    "pi_at",
    "pochhammer",
    "skewness_moments",
    "skewness_support",
    "tail_prob",
    "uniform4_moment_closed",
    "uniform_sum_coeff_exact",
    "uniform_sum_moments",
    "uniform_sum_support",
]
