"""Sparse baby-step giant-step evaluation of quadratic-exponent q-series.

Writing every exponent as e = k*m + r, only the residues r that the
quadratic sequence actually hits modulo m need baby-step powers q^r; the
splitting parameter m is drawn from the successive-minima tables so that
this residue set is small.  The outer sum over levels k is evaluated by
Horner's rule in q^m (giant steps).  Levels are streamed from the exponent
enumeration rather than stored, so memory stays proportional to the
residue table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import addseq, modcount
from .arb import ArbComplex, OpCounter
from .exponents import ExponentKind, exponent, truncation_count


class PrecisionUnderflow(ValueError):
    pass


class MismatchedModulus(ValueError):
    pass


@dataclass(frozen=True)
class BsgsPlan:
    kind: ExponentKind
    T: int
    m: int
    residue_seq: addseq.AdditionSequence  # covers hit residues > 0, plus m
    n_terms: int

    @property
    def max_level(self) -> int:
        if self.n_terms == 0:
            return 0
        return exponent(self.kind, self.n_terms) // self.m

    @property
    def insertions(self) -> int:
        produced = sum(1 for s in self.residue_seq.steps if s.kind != addseq.LEAF)
        want = len(self.residue_seq.targets - {1})
        return produced - want

    def levels_desc(self):
        """Yield (k, [exponents at level k]) for k descending; exponents <= T."""
        i = self.n_terms
        bucket = []
        cur = None
        while i >= 1:
            e = exponent(self.kind, i)
            k = e // self.m
            if cur is None or k == cur:
                bucket.append(e)
                cur = k
            else:
                yield cur, bucket
                bucket = [e]
                cur = k
            i -= 1
        if cur is not None:
            yield cur, bucket

    def debug_dump(self) -> str:
        return json.dumps({
            "kind": str(self.kind),
            "T": self.T,
            "m": self.m,
            "terms": self.n_terms,
            "residues": len(self.residue_seq.targets),
            "insertions": self.insertions,
            "levels": self.max_level + 1,
        })


@dataclass(frozen=True)
class BsgsCostEstimate:
    giant_mults: int
    baby_muls: int
    baby_sqrs: int
    modeled_fft: float

    @property
    def total_mults(self) -> int:
        return self.giant_mults + self.baby_muls + self.baby_sqrs


def plan(kind: ExponentKind, T: int, table: modcount.MinimaTable | None = None,
         g: int = 1, m: int | None = None) -> BsgsPlan:
    """Choose m, collect the residues hit by exponents <= T and complete
    them (plus m itself, needed for the giant steps) to an addition
    sequence."""
    if T < 1:
        raise ValueError("T >= 1 required")
    if m is None:
        if table is None:
            table = modcount.default_table(kind)
        m = modcount.choose_m(kind, T, table, g)
    n = truncation_count(kind, T)
    residues = {exponent(kind, i) % m for i in range(1, n + 1)}
    residues.discard(0)
    residues.add(m)
    seq = addseq.complete_generic(sorted(residues))
    return BsgsPlan(kind, T, m, seq, n)


def cost_estimate(p: BsgsPlan) -> BsgsCostEstimate:
    mul, sqr = p.residue_seq.complex_op_counts()
    giant = p.max_level
    modeled = float(3 * Fraction(mul + giant) + Fraction(7, 3) * sqr)
    return BsgsCostEstimate(giant, mul, sqr, modeled)


def _run_baby_steps(seq, q: ArbComplex, p: int, counter) -> dict[int, ArbComplex]:
    powers = {1: q}
    for s in seq.steps:
        if s.kind == addseq.LEAF:
            continue
        if s.kind == addseq.DOUBLE:
            powers[s.target] = powers[s.a].square(p, counter)
        elif s.kind == addseq.ADD:
            powers[s.target] = powers[s.a].mul(powers[s.b], p, counter)
        elif s.kind == addseq.DOUBLE_ADD:
            powers[s.target] = powers[s.a].square(p, counter).mul(powers[s.b], p, counter)
        else:
            raise ValueError(f"unexpected step kind {s.kind}")
    return powers


def _giant_pass(pl: BsgsPlan, powers, sign_of, p_work, guard, lam, counter, trick):
    one = ArbComplex.one(p_work)

    def prec_at(level):
        if not trick or lam is None:
            return p_work
        return max(guard, p_work - int(level * pl.m * lam))

    S = None
    prev_k = None
    for k, exps in pl.levels_desc():
        if S is not None:
            for down in range(prev_k, k, -1):
                S = S.mul(powers[pl.m], prec_at(down - 1), counter)
        lvl_prec = prec_at(k)
        lvl = ArbComplex.zero(lvl_prec)
        for e in exps:
            r = e % pl.m
            term = one if r == 0 else powers[r]
            s = sign_of(e) if sign_of is not None else 1
            lvl = lvl.add(term, lvl_prec) if s > 0 else lvl.sub(term, lvl_prec)
        S = lvl if S is None else S.add(lvl, lvl_prec)
        prev_k = k
    if S is None:
        return ArbComplex.zero(p_work)
    for down in range(prev_k, 0, -1):
        S = S.mul(powers[pl.m], prec_at(down - 1), counter)
    return S


def eval_plan(pl: BsgsPlan, q: ArbComplex, sign_of, p: int,
              counter: OpCounter | None = None, guard: int = 16,
              lam: float | None = None, precision_trick: bool = True) -> ArbComplex:
    """Sum sign(e) * q^e over the plan's exponents e <= T.

    Baby-step powers are computed at full precision; the giant-step Horner
    multiplications drop precision with the level, since a term entering at
    level k is later multiplied by q^{k m} and its error shrinks with it.
    """
    if p < 8:
        raise PrecisionUnderflow(f"precision {p} too small")
    p_work = p
    powers = _run_baby_steps(pl.residue_seq, q, p_work, counter)
    return _giant_pass(pl, powers, sign_of, p_work, guard, lam, counter, precision_trick)


def plan_theta_simultaneous(T: int, m: int | None = None):
    """Square and trigonal plans sharing one modulus and one baby table.

    m minimizes 3T/m + s(m) + t(m) over the union of the square and
    trigonal minima tables unless given explicitly.
    """
    if T < 1:
        raise ValueError("T >= 1 required")
    if m is None:
        cands = {mm for mm, _ in modcount.default_table(ExponentKind.SQUARE).entries}
        cands |= {mm for mm, _ in modcount.default_table(ExponentKind.TRIGONAL).entries}
        best, best_num, best_den = None, None, None
        for mm in sorted(cands):
            c = (modcount.count_values(ExponentKind.SQUARE, mm)
                 + modcount.count_values(ExponentKind.TRIGONAL, mm))
            num = 3 * T + c * mm
            if best is None or num * best_den < best_num * mm:
                best, best_num, best_den = mm, num, mm
        m = best
    n_sq = truncation_count(ExponentKind.SQUARE, T)
    n_tri = truncation_count(ExponentKind.TRIGONAL, T)
    residues = {(i * i) % m for i in range(1, n_sq + 1)}
    residues |= {((i - 1) * i) % m for i in range(1, n_tri + 1)}
    residues.discard(0)
    residues.add(m)
    seq = addseq.complete_generic(sorted(residues))
    return (BsgsPlan(ExponentKind.SQUARE, T, m, seq, n_sq),
            BsgsPlan(ExponentKind.TRIGONAL, T, m, seq, n_tri))


def eval_simultaneous(passes, q: ArbComplex, p: int,
                      counter: OpCounter | None = None, guard: int = 16,
                      lam: float | None = None, precision_trick: bool = True):
    """Evaluate several (plan, sign_of) series over one shared baby table.

    All plans must share the same modulus and residue sequence; the giant
    steps run separately per series.
    """
    if p < 8:
        raise PrecisionUnderflow(f"precision {p} too small")
    first = passes[0][0]
    for pl, _ in passes[1:]:
        if pl.m != first.m or pl.residue_seq is not first.residue_seq:
            raise MismatchedModulus("plans do not share modulus and baby table")
    powers = _run_baby_steps(first.residue_seq, q, p, counter)
    return tuple(
        _giant_pass(pl, powers, sign_of, p, guard, lam, counter, precision_trick)
        for pl, sign_of in passes
    )


# ---------------------------------------------------------------------------
# modeled cost curves (the data behind the normalized-cost figure)


def _pell_doubles_upto(T: int) -> set[int]:
    out = set()
    z, x = 1, 1
    while True:
        z, x = 3 * z + 4 * x, 2 * z + 3 * x
        c = (z * z - 1) // 24
        if c > T:
            return out
        out.add(c)


def optimized_pentagonal_counts(N: int) -> tuple[int, int, int]:
    """(double, add, double_add) step counts of the optimized pentagonal
    sequence on e_1..e_N, from the decomposition criteria: c = 2a exactly on
    the Pell family, otherwise c = a+b iff 12c+1 is composite."""
    from .primes import is_prime

    if N < 3:
        return (0, 0, 0)
    pell = _pell_doubles_upto(exponent(ExponentKind.PENTAGONAL, N))
    nd = na = ndd = 0
    for i in range(3, N + 1):
        c = exponent(ExponentKind.PENTAGONAL, i)
        if c in pell:
            nd += 1
        elif is_prime(12 * c + 1):
            ndd += 1
        else:
            na += 1
    return (nd, na, ndd)


def classical_pentagonal_count(N: int) -> int:
    """Number of non-leaf steps of the classical pentagonal sequence,
    mirroring the builder without materializing steps."""
    if N <= 2:
        return 0
    have = {0, 1, 2, 3}
    steps = 2
    helpers = {0: 4, 1: 5}
    terms = {0: 1, 1: 2}
    for i in range(4, N + 1):
        branch = 0 if i % 2 == 0 else 1
        h = helpers[branch]
        if h not in have:
            steps += 1
            have.add(h)
        t = terms[branch] + h
        if t not in have:
            steps += 1
            have.add(t)
        terms[branch] = t
        helpers[branch] = h + 3
    return steps


def cost_curve(T_list, table: modcount.MinimaTable | None = None):
    """Rows (T, N, normalized classical / optimized / BSGS cost) for the
    pentagonal (eta) series in the FFT model."""
    rows = []
    for T in T_list:
        N = truncation_count(ExponentKind.PENTAGONAL, T)
        classical = addseq.normalized_cost_from_counts(classical_pentagonal_count(N), 0, N)
        nd, na, ndd = optimized_pentagonal_counts(N)
        optimized = addseq.normalized_cost_from_counts(na + ndd, nd + ndd, N)
        est = cost_estimate(plan(ExponentKind.PENTAGONAL, T, table))
        bs = addseq.normalized_cost_from_counts(est.baby_muls + est.giant_mults,
                                                est.baby_sqrs, N)
        rows.append({"T": T, "N": N, "classical": classical,
                     "optimized": optimized, "bsgs": bs})
    return rows
