"""End-to-end evaluation of the Dedekind eta function and theta constants.

Evaluation splits into: computing q = e^{2 pi i tau} (eta) or e^{pi i tau}
(theta) together with the fractional prefactor power, selecting the
truncation order T from the target precision and |q|, and summing the
truncated q-series by a classical or optimized addition sequence or by the
sparse baby-step giant-step algorithm.

The term q^e only needs about p - e*|log2 |q|| bits to contribute at
tolerance 2^-p, so every series path computes each power at its own reduced
precision; the accumulator itself carries p plus guard bits.  No modular
transformation is applied here: tau is used as given, and ``reduce_tau`` is
a separate, explicit operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import gmpy2
from gmpy2 import mpfr

from . import addseq, bsgs
from .arb import ArbComplex, OpCounter
from .exponents import ExponentKind, exponent, term_sign, truncation_count

GUARD_BASE = 16
AUTO_CROSSOVER_T = 5000

FUNCTIONS = ("eta", "theta0", "theta1", "theta2", "theta-all")
METHODS = ("classical", "optimized", "bsgs", "auto")


class NotUpperHalfPlane(ValueError):
    pass


class QTooLarge(ValueError):
    """|q| is too close to 1 to certify the requested precision."""


@dataclass
class QPoint:
    """A prepared series argument: q, its fractional power, and |q| data."""

    q: ArbComplex
    abs_q: mpfr
    lam: float  # |log2 |q||
    root: ArbComplex | None  # e^{gamma/24} (eta) or e^{gamma/4} (theta)
    convention: str


@dataclass
class EvalRequest:
    function: str
    prec: int
    tau: tuple | None = None  # (re, im) as strings / floats / mpfr
    q: tuple | None = None
    method: str = "auto"
    precision_trick: bool = True
    crossover_T: int = AUTO_CROSSOVER_T


@dataclass
class EvalReport:
    values: dict[str, ArbComplex]
    T: int
    N: int
    method: str
    m: int | None = None
    mul: int = 0
    sqr: int = 0
    modeled_cost: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def value(self) -> ArbComplex:
        return next(iter(self.values.values()))


# ---------------------------------------------------------------------------
# argument preparation


def reduce_tau(tau_re, tau_im, prec: int):
    """Move tau to the fundamental domain |Re| <= 1/2, |tau| >= 1.

    Returns ((re, im), (a, b, c, d)) with tau' = (a tau + b) / (c tau + d),
    ad - bc = 1.  No function-value transformation is performed.
    """
    gmpy2.get_context().precision = prec + 32
    x = mpfr(tau_re)
    y = mpfr(tau_im)
    if not y > 0:
        raise NotUpperHalfPlane(f"Im(tau) = {y} must be positive")
    a, b, c, d = 1, 0, 0, 1
    for _ in range(4 * prec + 64):
        t = int(gmpy2.rint(x))
        if t != 0:
            x = x - t
            a, b = a - t * c, b - t * d
        n2 = x * x + y * y
        if n2 < 1:
            x, y = -x / n2, y / n2
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:
        raise RuntimeError("tau reduction did not converge")
    return (x, y), (a, b, c, d)


def compute_q(tau_re, tau_im, convention: str, prec: int) -> QPoint:
    """q = e^gamma with gamma = 2 pi i tau (eta) or pi i tau (theta).

    The fractional prefactor power (q^{1/24} for eta, q^{1/4} for theta) is
    computed as e^{gamma/24} or e^{gamma/4} directly, never by root
    extraction.
    """
    wp = prec + 32
    gmpy2.get_context().precision = wp
    x = mpfr(tau_re)
    y = mpfr(tau_im)
    if not y > 0:
        raise NotUpperHalfPlane(f"Im(tau) = {y} must be positive")
    ell = 2 if convention == "eta" else 1
    root_div = 24 if convention == "eta" else 4
    pi = gmpy2.const_pi()
    re_gamma = -ell * pi * y
    im_gamma = ell * pi * x

    def cexp(re_g, im_g):
        gmpy2.get_context().precision = wp
        mag = gmpy2.exp(re_g)
        s, c = gmpy2.sin_cos(im_g)
        return ArbComplex(mag * c, mag * s, wp)

    q = cexp(re_gamma, im_gamma)
    root = cexp(re_gamma / root_div, im_gamma / root_div)
    lam = float(-re_gamma / gmpy2.log(mpfr(2)))
    return QPoint(q, q.abs(wp), lam, root, convention)


def qpoint_from_raw(q_re, q_im, convention: str, prec: int) -> QPoint:
    """Prepare a raw q argument; the prefactor power uses the principal
    logarithm of q."""
    wp = prec + 32
    gmpy2.get_context().precision = wp
    q = ArbComplex(q_re, q_im, wp)
    a = q.abs(wp)
    if not a < 1:
        raise QTooLarge(f"|q| = {a} must be < 1")
    root_div = 24 if convention == "eta" else 4
    re_g = gmpy2.log(a)
    im_g = gmpy2.atan2(q.im, q.re)
    mag = gmpy2.exp(re_g / root_div)
    s, c = gmpy2.sin_cos(im_g / root_div)
    root = ArbComplex(mag * c, mag * s, wp)
    lam = float(-gmpy2.log2(a))
    return QPoint(q, a, lam, root, convention)


def truncation_order(p: int, abs_q, coeff_bound: int = 1, delta=None) -> int:
    """Smallest T with coeff_bound * |q|^{T+1} / delta < 2^{-p-2}."""
    if p < 8:
        raise ValueError("p >= 8 required")
    gmpy2.get_context().precision = 64
    aq = mpfr(abs_q)
    if not aq > 0:
        return 0
    if aq > 1 - gmpy2.exp2(-(p // 2)):
        raise QTooLarge(f"|q| = {aq} too close to 1 for precision {p}")
    if delta is None:
        delta = 1 - aq
    lam = -gmpy2.log2(aq)
    X = (p + 2 + float(gmpy2.log2(mpfr(coeff_bound) / delta))) / float(lam)
    return max(int(X) + 1, 1)


# ---------------------------------------------------------------------------
# series engines


def _prec_for(e: int, p_work: int, guard: int, lam: float | None, trick: bool) -> int:
    if not trick or lam is None:
        return p_work
    return max(guard, p_work - int(e * lam))


def run_addition_sequence(seq, qpt: QPoint, sign_fns, p_work: int, guard: int,
                          counter: OpCounter | None, trick: bool = True,
                          t_cap: int | None = None) -> list[ArbComplex]:
    """Execute an addition sequence over q once, accumulating one signed
    series sum per entry of ``sign_fns`` (None means all signs +1).

    Only the sequence's target exponents contribute to the sums; helper
    elements are computed but not accumulated.
    """
    powers = {1: qpt.q}
    sums = [ArbComplex.zero(p_work) for _ in sign_fns]
    one = ArbComplex.one(p_work)
    targets = seq.targets
    for step in seq.steps:
        e = step.target
        if step.kind == addseq.LEAF:
            val = one if e == 0 else qpt.q
        else:
            pe = _prec_for(e, p_work, guard, qpt.lam, trick)
            if step.kind == addseq.DOUBLE:
                val = powers[step.a].square(pe, counter)
            elif step.kind == addseq.ADD:
                val = powers[step.a].mul(powers[step.b], pe, counter)
            elif step.kind == addseq.DOUBLE_ADD:
                val = powers[step.a].square(pe, counter).mul(powers[step.b], pe, counter)
            else:
                raise ValueError(f"unexpected step kind {step.kind}")
            powers[e] = val
        if e in targets and (t_cap is None or e <= t_cap):
            for j, sign_of in enumerate(sign_fns):
                s = sign_of(e) if sign_of is not None else 1
                sums[j] = sums[j].add(val, p_work) if s > 0 else sums[j].sub(val, p_work)
    return sums


def _theta1_square_sign(e):
    return -1 if isqrt(e) % 2 else 1


def _theta1_almost_square_sign(e):
    return -1 if isqrt(e + 1) % 2 else 1


def _build_sequence(kind: ExponentKind, N: int, method: str):
    if method == "classical":
        return addseq.build_classical(kind, max(N, 1))
    if kind is ExponentKind.A182568:
        return addseq.build_a182568(max(N, 2))
    return addseq.build_optimized(kind, max(N, 2))


# ---------------------------------------------------------------------------
# top level


def evaluate(request: EvalRequest) -> EvalReport:
    if request.function not in FUNCTIONS:
        raise ValueError(f"unknown function {request.function!r}")
    if request.method not in METHODS:
        raise ValueError(f"unknown method {request.method!r}")
    p = request.prec
    if p < 8:
        raise bsgs.PrecisionUnderflow(f"precision {p} too small")
    convention = "eta" if request.function == "eta" else "theta"
    coeff = 1 if request.function == "eta" else 2

    def prepare(prec):
        if request.tau is not None:
            return compute_q(request.tau[0], request.tau[1], convention, prec)
        if request.q is not None:
            return qpoint_from_raw(request.q[0], request.q[1], convention, prec)
        raise ValueError("request needs tau or q")

    qpt = prepare(p)
    T = truncation_order(p, qpt.abs_q, coeff)
    guard_kind = (ExponentKind.PENTAGONAL if convention == "eta"
                  else ExponentKind.A182568)
    guard = GUARD_BASE + (truncation_count(guard_kind, T) + 2).bit_length()
    p_work = p + guard
    qpt = prepare(p_work)

    method = request.method
    if method == "auto":
        method = "optimized" if T <= request.crossover_T else "bsgs"

    counter = OpCounter()
    trick = request.precision_trick
    m_used = None

    if request.function == "theta-all":
        values, N, m_used = _eval_theta_all(qpt, T, method, p_work, guard, counter, trick)
    else:
        values, N, m_used = _eval_single(request.function, qpt, T, method,
                                         p_work, guard, counter, trick)
    return EvalReport(values=values, T=T, N=N, method=method, m=m_used,
                      mul=counter.mul, sqr=counter.sqr,
                      modeled_cost=float(counter.fft_cost()))


def _eval_single(function, qpt, T, method, p_work, guard, counter, trick):
    one = ArbComplex.one(p_work)
    m_used = None
    if function == "eta":
        if method == "bsgs":
            pl = bsgs.plan(ExponentKind.PENTAGONAL, max(T, 1))
            m_used = pl.m
            N = pl.n_terms
            S = bsgs.eval_plan(pl, qpt.q, term_sign, p_work, counter, guard,
                               qpt.lam, trick)
        else:
            N = truncation_count(ExponentKind.PENTAGONAL, T)
            seq = _build_sequence(ExponentKind.PENTAGONAL, N, method)
            (S,) = run_addition_sequence(seq, qpt, [term_sign], p_work, guard,
                                         counter, trick, t_cap=T)
        return {"eta": qpt.root.mul(S, p_work)}, N, m_used

    if function in ("theta0", "theta1"):
        if method == "bsgs":
            pl = bsgs.plan(ExponentKind.SQUARE, max(T, 1))
            m_used = pl.m
            N = pl.n_terms
            sign = _theta1_square_sign if function == "theta1" else None
            S = bsgs.eval_plan(pl, qpt.q, sign, p_work, counter, guard,
                               qpt.lam, trick)
            value = one.add(S.scale_int(2), p_work)
        elif method == "classical":
            N = truncation_count(ExponentKind.SQUARE, T)
            seq = _build_sequence(ExponentKind.SQUARE, N, method)
            sign = _theta1_square_sign if function == "theta1" else None
            (S,) = run_addition_sequence(seq, qpt, [sign], p_work, guard,
                                         counter, trick, t_cap=T)
            value = one.add(S.scale_int(2), p_work)
        else:
            # almost-square route: theta = 1 + 2 q sum s_n q^{n^2 - 1}
            N = truncation_count(ExponentKind.ALMOST_SQUARE, max(T - 1, 0))
            seq = _build_sequence(ExponentKind.ALMOST_SQUARE, N, method)
            sign = _theta1_almost_square_sign if function == "theta1" else None
            (S,) = run_addition_sequence(seq, qpt, [sign], p_work, guard,
                                         counter, trick, t_cap=max(T - 1, 0))
            value = one.add(qpt.q.mul(S, p_work).scale_int(2), p_work)
        return {function: value}, N, m_used

    if function == "theta2":
        if method == "bsgs":
            pl = bsgs.plan(ExponentKind.TRIGONAL, max(T, 1))
            m_used = pl.m
            N = pl.n_terms
            S = bsgs.eval_plan(pl, qpt.q, None, p_work, counter, guard,
                               qpt.lam, trick)
        else:
            N = truncation_count(ExponentKind.TRIGONAL, T)
            seq = _build_sequence(ExponentKind.TRIGONAL, N, method)
            (S,) = run_addition_sequence(seq, qpt, [None], p_work, guard,
                                         counter, trick, t_cap=T)
        return {"theta2": qpt.root.mul(S, p_work).scale_int(2)}, N, m_used

    raise ValueError(function)


def _eval_theta_all(qpt, T, method, p_work, guard, counter, trick):
    one = ArbComplex.one(p_work)
    if method == "bsgs":
        plan_sq, plan_tri = bsgs.plan_theta_simultaneous(max(T, 1))
        s_plus, s_alt, s_tri = bsgs.eval_simultaneous(
            [(plan_sq, None), (plan_sq, _theta1_square_sign), (plan_tri, None)],
            qpt.q, p_work, counter, guard, qpt.lam, trick)
        th0 = one.add(s_plus.scale_int(2), p_work)
        th1 = one.add(s_alt.scale_int(2), p_work)
        th2 = qpt.root.mul(s_tri, p_work).scale_int(2)  # plan includes the 0 term
        return ({"theta0": th0, "theta1": th1, "theta2": th2},
                plan_sq.n_terms + plan_tri.n_terms, plan_sq.m)

    if method == "classical":
        n_sq = truncation_count(ExponentKind.SQUARE, T)
        seq_sq = _build_sequence(ExponentKind.SQUARE, n_sq, method)
        s_plus, s_alt = run_addition_sequence(
            seq_sq, qpt, [None, _theta1_square_sign], p_work, guard, counter,
            trick, t_cap=T)
        n_tri = truncation_count(ExponentKind.TRIGONAL, T)
        seq_tri = _build_sequence(ExponentKind.TRIGONAL, n_tri, method)
        (s_tri,) = run_addition_sequence(seq_tri, qpt, [None], p_work, guard,
                                         counter, trick, t_cap=T)
        th0 = one.add(s_plus.scale_int(2), p_work)
        th1 = one.add(s_alt.scale_int(2), p_work)
        th2 = qpt.root.mul(s_tri, p_work).scale_int(2)
        return {"theta0": th0, "theta1": th1, "theta2": th2}, n_sq + n_tri, None

    # single interleaved pass: indices n = 0 mod 4 give even squares,
    # n = 2 mod 4 even almost-squares (one q split off), odd n trigonal
    kind = ExponentKind.A182568
    N = truncation_count(kind, T)
    seq = _build_sequence(kind, N, "optimized")
    powers = {1: qpt.q}
    s_sq = ArbComplex.zero(p_work)
    s_asq = ArbComplex.zero(p_work)
    s_tri = ArbComplex.zero(p_work)
    index_of = {exponent(kind, i): i for i in range(1, N + 1)}
    for step in seq.steps:
        e = step.target
        if step.kind == addseq.LEAF:
            val = one if e == 0 else qpt.q
        else:
            pe = _prec_for(e, p_work, guard, qpt.lam, trick)
            if step.kind == addseq.DOUBLE:
                val = powers[step.a].square(pe, counter)
            elif step.kind == addseq.ADD:
                val = powers[step.a].mul(powers[step.b], pe, counter)
            else:
                val = powers[step.a].square(pe, counter).mul(powers[step.b], pe, counter)
            powers[e] = val
        i = index_of.get(e)
        if i is None:
            continue
        n = i + 1
        if n % 4 == 0:
            s_sq = s_sq.add(val, p_work)
        elif n % 4 == 2:
            if e <= T - 1:
                s_asq = s_asq.add(val, p_work)
        else:
            s_tri = s_tri.add(val, p_work)
    q_s_asq = qpt.q.mul(s_asq, p_work)
    th0 = one.add(s_sq.add(q_s_asq, p_work).scale_int(2), p_work)
    th1 = one.add(s_sq.sub(q_s_asq, p_work).scale_int(2), p_work)
    th2 = qpt.root.mul(one.add(s_tri, p_work), p_work).scale_int(2)
    return {"theta0": th0, "theta1": th1, "theta2": th2}, N, None


def eval_naive_oracle(request: EvalRequest) -> dict[str, ArbComplex]:
    """Reference evaluation: every power by its own binary exponentiation,
    full precision throughout, no shared powers."""
    p = request.prec
    convention = "eta" if request.function == "eta" else "theta"
    coeff = 1 if request.function == "eta" else 2
    if request.tau is not None:
        qpt = compute_q(request.tau[0], request.tau[1], convention, p + 64)
    else:
        qpt = qpoint_from_raw(request.q[0], request.q[1], convention, p + 64)
    T = truncation_order(p, qpt.abs_q, coeff)
    wp = p + 64
    q = qpt.q
    one = ArbComplex.one(wp)

    def power(e):
        return one if e == 0 else q.pow_int(e, wp)

    def sum_kind(kind, sign_of=None):
        S = ArbComplex.zero(wp)
        for i in range(1, truncation_count(kind, T) + 1):
            e = exponent(kind, i)
            s = sign_of(e) if sign_of is not None else 1
            S = S.add(power(e), wp) if s > 0 else S.sub(power(e), wp)
        return S

    if request.function == "eta":
        return {"eta": qpt.root.mul(sum_kind(ExponentKind.PENTAGONAL, term_sign), wp)}
    if request.function in ("theta0", "theta1"):
        sign = _theta1_square_sign if request.function == "theta1" else None
        S = sum_kind(ExponentKind.SQUARE, sign)
        return {request.function: one.add(S.scale_int(2), wp)}
    if request.function == "theta2":
        S = sum_kind(ExponentKind.TRIGONAL)
        return {"theta2": qpt.root.mul(S, wp).scale_int(2)}
    if request.function == "theta-all":
        out = {}
        for f in ("theta0", "theta1", "theta2"):
            out.update(eval_naive_oracle(EvalRequest(f, p, tau=request.tau, q=request.q)))
        return out
    raise ValueError(request.function)
