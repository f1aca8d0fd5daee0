"""Benchmark-structure data: truncation orders and modeled speed-ups.

The reference argument is the complex-multiplication point
tau = (-B + sqrt(D)) / (2A) with A = 1305, B = 1523, D = -6961631, a
typical input in class-polynomial construction (|q| ~ 0.00174 in the eta
convention, slightly inside the worst case ~ 0.00433 at the corner of the
fundamental domain).

For a list of bit precisions this module emits, per table: the truncation
order T, the term count N, modeled FFT-cost of the addition-sequence and
baby-step giant-step summation, and their ratio (the mult-count "theory"
speed-up).  Wall-clock ratios are hardware-bound and deliberately not
produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from . import addseq, bsgs, evaluator
from .exponents import ExponentKind, truncation_count

CM_A, CM_B, CM_D = 1305, 1523, -6961631

TABLES = ("eta", "theta-simul", "theta-single")


def cm_tau(prec: int):
    """The benchmark CM point, not yet reduced to the fundamental domain."""
    gmpy2.get_context().precision = prec + 32
    re = mpfr(-CM_B) / (2 * CM_A)
    im = gmpy2.sqrt(mpfr(-CM_D)) / (2 * CM_A)
    return re, im


def _fft(mul, sqr) -> Fraction:
    return 3 * Fraction(mul) + Fraction(7, 3) * sqr


@dataclass
class BenchRow:
    prec: int
    T: int
    N: int
    as_mul: int
    as_sqr: int
    bsgs_mul: int
    bsgs_sqr: int
    theory: float

    def as_dict(self):
        return {
            "prec": self.prec, "T": self.T, "N": self.N,
            "as_cost": float(_fft(self.as_mul, self.as_sqr)),
            "bsgs_steps": self.bsgs_mul + self.bsgs_sqr,
            "bsgs_cost": 3.0 * (self.bsgs_mul + self.bsgs_sqr),
            "theory_speedup": round(self.theory, 3),
        }


def _as_counts_eta(T):
    N = truncation_count(ExponentKind.PENTAGONAL, T)
    nd, na, ndd = bsgs.optimized_pentagonal_counts(N)
    return N, na + ndd, nd + ndd


def _as_counts_theta_simul(T):
    # interleaved sequence: three squarings (members 2, 4, 8), one addition
    # for every other member beyond the leading zero
    N = truncation_count(ExponentKind.A182568, T)
    if N <= 1:
        return N, 0, 0
    seq = addseq.build_a182568(N) if N <= 2000 else None
    if seq is not None:
        mul, sqr = seq.complex_op_counts()
        return N, mul, sqr
    return N, N - 4, 3


def _as_counts_theta_single(T):
    N = truncation_count(ExponentKind.SQUARE, T)
    squares = [i * i for i in range(1, N + 1)]
    if not squares:
        return 0, 0, 0
    seq = addseq.complete_generic(squares)
    mul, sqr = seq.complex_op_counts()
    return N, mul, sqr


def _bsgs_counts_eta(T):
    est = bsgs.cost_estimate(bsgs.plan(ExponentKind.PENTAGONAL, T))
    return est.baby_muls + est.giant_mults, est.baby_sqrs


def _bsgs_counts_theta_single(T):
    est = bsgs.cost_estimate(bsgs.plan(ExponentKind.SQUARE, T))
    return est.baby_muls + est.giant_mults, est.baby_sqrs


def _bsgs_counts_theta_simul(T):
    plan_sq, plan_tri = bsgs.plan_theta_simultaneous(T)
    mul, sqr = plan_sq.residue_seq.complex_op_counts()
    giant = 2 * plan_sq.max_level + plan_tri.max_level
    return mul + giant, sqr


def benchmark_rows(table: str, precisions) -> list[BenchRow]:
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}")
    convention = "eta" if table == "eta" else "theta"
    coeff = 1 if table == "eta" else 2
    rows = []
    for p in precisions:
        re, im = cm_tau(p)
        (rre, rim), _ = evaluator.reduce_tau(re, im, p)
        qpt = evaluator.compute_q(rre, rim, convention, p)
        T = evaluator.truncation_order(p, qpt.abs_q, coeff)
        if table == "eta":
            N, am, asq = _as_counts_eta(T)
            bm, bsq = _bsgs_counts_eta(T)
        elif table == "theta-simul":
            N, am, asq = _as_counts_theta_simul(T)
            bm, bsq = _bsgs_counts_theta_simul(T)
        else:
            N, am, asq = _as_counts_theta_single(T)
            bm, bsq = _bsgs_counts_theta_single(T)
        # the addition sequence is costed per the FFT-model step table; the
        # BSGS side per its own cost model of one generic complex
        # multiplication per baby- or giant-step
        theory = float(_fft(am, asq) / (3 * (bm + bsq))) if bm + bsq else float("nan")
        rows.append(BenchRow(p, T, N, am, asq, bm, bsq, theory))
    return rows
