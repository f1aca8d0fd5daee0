"""Exhaustive verification of the number-theoretic decomposition statements.

Each statement about the exponent families (existence of c = a+b or
c = 2a+b splits with smaller members, primality criteria for when they
fail, the Pell-equation families of c = 2a / c = 3a coincidences, and the
powers-of-three proposition) is checked by direct search over all members
up to a bound.  The searches here are deliberately independent of the
sequence builders in :mod:`qseries.addseq`: they certify the builders
rather than share code with them.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass, field

from .exponents import ExponentKind, UnsupportedKind, exponent, is_member, members_upto
from .primes import is_prime


@dataclass
class VerificationReport:
    statement: str
    range_checked: tuple[int, int]
    counterexamples: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self):
        return {
            "statement": self.statement,
            "range": list(self.range_checked),
            "passed": self.passed,
            "counterexamples": self.counterexamples[:20],
            "witnesses": self.witnesses[:5],
            "elapsed": round(self.elapsed, 3),
        }


# ---------------------------------------------------------------------------
# brute-force split searches (members include 0 where the kind has it)


def _find_add(c, mlist, mset):
    """c = a + b with members 1 <= b <= a < c, or None."""
    hi = bisect_left(mlist, c)
    for i in range(hi - 1, -1, -1):
        a = mlist[i]
        if 2 * a < c:
            break
        b = c - a
        if b >= 1 and b in mset:
            return (a, b)
    return None


def _find_double_add(c, mlist, mset):
    """c = 2a + b with members a >= 1, b >= 0, both < c, or None."""
    if c % 2 == 0 and c // 2 in mset:
        return (c // 2, 0)
    hi = bisect_left(mlist, (c + 1) // 2)
    for i in range(hi - 1, -1, -1):
        a = mlist[i]
        if a < 1:
            break
        b = c - 2 * a
        if b in mset:
            return (a, b)
    return None


def _find_triple_sum(c, mlist, mset):
    """c = a + b (+ d) with members >= 1, at most three parts, or None."""
    pair = _find_add(c, mlist, mset)
    if pair is not None:
        return pair
    hi = bisect_left(mlist, c)
    for i in range(hi - 1, -1, -1):
        a = mlist[i]
        if 3 * a < c:
            break
        rest = c - a
        if rest < 2:
            continue
        for j in range(min(i, bisect_left(mlist, rest) - 1), -1, -1):
            b = mlist[j]
            if b < 1 or 2 * b < rest:  # would force d = rest - b > b
                break
            d = rest - b
            if d >= 1 and d in mset:
                return (a, b, d)
    return None


# (kind, form) -> (threshold, criterion or None for unconditional existence)
def _crit_add_pentagonal(c):
    return not is_prime(12 * c + 1)


def _crit_add_trigonal(c):
    return not is_prime(2 * c + 1)


def _crit_dadd_trigonal(c):
    return not is_prime(4 * c + 3)


def _is_p_or_2p(k):
    return is_prime(k) or (k % 2 == 0 and is_prime(k // 2))


def _crit_add_almost_square(c):
    return not _is_p_or_2p(c + 2)


def _crit_dadd_almost_square(c):
    k = c + 3
    if _is_p_or_2p(k):
        return False
    if k % 2 == 0:
        r = _isqrt_exact(k // 2)
        if r is not None and is_prime(r):
            return False
    return True


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


_STATEMENTS = {
    (ExponentKind.PENTAGONAL, "add"): (2, _crit_add_pentagonal),
    (ExponentKind.PENTAGONAL, "double_add"): (5, None),
    (ExponentKind.TRIGONAL, "add"): (6, _crit_add_trigonal),
    (ExponentKind.TRIGONAL, "double_add"): (6, _crit_dadd_trigonal),
    (ExponentKind.TRIGONAL, "triple_sum"): (6, None),
    (ExponentKind.ALMOST_SQUARE, "add"): (3, _crit_add_almost_square),
    (ExponentKind.ALMOST_SQUARE, "double_add"): (3, _crit_dadd_almost_square),
    (ExponentKind.ALMOST_SQUARE, "triple_sum"): (24, None),
}

_SEARCHES = {"add": _find_add, "double_add": _find_double_add,
             "triple_sum": _find_triple_sum}


def verify_decomposition(kind: ExponentKind, form: str, c_max: int) -> VerificationReport:
    """Check a decomposition statement over all members <= c_max.

    For statements with a primality criterion the verified claim is the
    equivalence  (split exists) <=> (criterion holds);  for the others it is
    unconditional existence above the stated threshold.
    """
    key = (kind, form)
    if key not in _STATEMENTS:
        raise UnsupportedKind(f"no statement for {kind}/{form}")
    threshold, criterion = _STATEMENTS[key]
    started = time.monotonic()
    members = members_upto(kind, c_max)
    mset = set(members)
    report = VerificationReport(f"{kind}:{form}", (threshold, c_max))
    search = _SEARCHES[form]
    for c in members:
        if c < threshold:
            continue
        found = search(c, members, mset)
        if criterion is None:
            ok = found is not None
        else:
            ok = (found is not None) == criterion(c)
        if not ok:
            report.counterexamples.append(c)
        elif found is not None and len(report.witnesses) < 5:
            report.witnesses.append((c, found))
    report.elapsed = time.monotonic() - started
    return report


# ---------------------------------------------------------------------------
# Pell-equation families: pentagonal c = 2a and c = 3a

PENTAGONAL_DOUBLE = "pentagonal_double"
PENTAGONAL_TRIPLE = "pentagonal_triple"


def pell_family(family: str, count: int) -> list[tuple[int, int]]:
    """First ``count`` nontrivial (c, a) pairs of the family, by recurrence.

    pentagonal_double: c = 2a through solutions of z^2 + 1 = 2 x^2;
    pentagonal_triple: c = 3a through solutions of z^2 + 2 = 3 x^2, dropping
    the k with 3 | x_k (k = 1, and k >= 4 with 4 | k) where a leaves the
    pentagonal family.
    """
    if count < 0 or count > 40:
        raise ValueError("count must be in 0..40")
    out = []
    z, x = 1, 1
    k = 0
    while len(out) < count:
        k += 1
        if family == PENTAGONAL_DOUBLE:
            z, x = 3 * z + 4 * x, 2 * z + 3 * x
        elif family == PENTAGONAL_TRIPLE:
            z, x = 2 * z + 3 * x, z + 2 * x
            if x % 3 == 0:
                continue
        else:
            raise ValueError(f"unknown family {family!r}")
        out.append(((z * z - 1) // 24, (x * x - 1) // 24))
    return out


def pell_exhaustive(family: str, c_max: int) -> list[tuple[int, int]]:
    """All nontrivial in-range pairs of the family found by direct scan."""
    mult = {PENTAGONAL_DOUBLE: 2, PENTAGONAL_TRIPLE: 3}[family]
    out = []
    i = 1
    while True:
        c = exponent(ExponentKind.PENTAGONAL, i)
        if c > c_max:
            break
        if c > 0 and c % mult == 0 and is_member(ExponentKind.PENTAGONAL, c // mult):
            out.append((c, c // mult))
        i += 1
    return out


# ---------------------------------------------------------------------------
# remaining statements


def powers_of_three_check(n_max: int) -> VerificationReport:
    """Solutions of x^2 = 3^n - 2 for 0 <= n <= n_max; expects n in {1, 3}."""
    if n_max > 120:
        raise ValueError("n_max <= 120")
    started = time.monotonic()
    report = VerificationReport("powers-of-three", (0, n_max))
    p = 1
    for n in range(n_max + 1):
        x = _isqrt_exact(p - 2) if p >= 2 else None
        if x is not None:
            if n in (1, 3):
                report.witnesses.append((n, x))
            else:
                report.counterexamples.append((n, x))
        p *= 3
    if [n for n, _ in report.witnesses] != [1, 3]:
        report.counterexamples.append(("missing-expected", report.witnesses))
    report.elapsed = time.monotonic() - started
    return report


class LeadingCoefficientNonpositive(ValueError):
    pass


def prime_density(poly: tuple[int, int, int], N: int) -> tuple[int, float]:
    """Count primes among f(1..N) for f = a2 n^2 + a1 n + a0.

    Returns (prime_count, C_hat) with C_hat = prime_count * log(f(N)) / N,
    the empirical constant of the conjectured C*N/log N prime count.
    """
    from math import log

    a2, a1, a0 = poly
    if a2 <= 0:
        raise LeadingCoefficientNonpositive("leading coefficient must be positive")
    count = 0
    for n in range(1, N + 1):
        if is_prime(a2 * n * n + a1 * n + a0):
            count += 1
    c_hat = count * log(a2 * N * N + a1 * N + a0) / N
    return count, c_hat
