"""Dedekind eta and Jacobi theta constants through short addition sequences
and sparse baby-step giant-step summation of their q-series."""

from .exponents import ExponentKind, exponent, sigma, sigma_inverse, term_sign, truncation_count
from .evaluator import EvalRequest, EvalReport, evaluate, eval_naive_oracle, reduce_tau, compute_q, truncation_order

__all__ = [
    "ExponentKind", "exponent", "sigma", "sigma_inverse", "term_sign",
    "truncation_count", "EvalRequest", "EvalReport", "evaluate",
    "eval_naive_oracle", "reduce_tau", "compute_q", "truncation_order",
]

__version__ = "0.1.0"
