"""Counting distinct values of quadratic exponent polynomials modulo m.

The number of squares modulo a prime power has a closed form; counts for
general m follow by multiplicativity (CRT).  Completing the square reduces
any quadratic progression to the square count away from the primes dividing
its leading coefficient and denominator: the trigonal polynomial X^2+X is
two-to-one onto the even residues modulo 2^e, and the pentagonal polynomial
X(3X-1)/2 is a bijection modulo 2^e and modulo 3^e.

Moduli m where the value-count ratio count(m)/m sets a strict record are the
useful baby-step giant-step splitting parameters; ``successive_minima``
computes them, and tables for the square, trigonal and pentagonal families
up to 10^8 ship with the package.
"""

from __future__ import annotations

import os
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exponents import ExponentKind, UnsupportedKind
from .primes import factorize, is_prime, primes_upto


class NotPrime(ValueError):
    pass


def s_prime_power(p: int, e: int) -> int:
    """Number of squares modulo p^e (0 included)."""
    if e < 1:
        raise ValueError("e >= 1 required")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    tail = pow(p, (e + 1) % 2)
    if p == 2:
        if e <= 2:
            return 2
        return 2 ** (e - 3) + (2 ** (e - 3) - tail) // 3 + 2
    return (p**e - p ** (e - 1)) // 2 + (p ** (e - 1) - tail) // (2 * (p + 1)) + 1


_COUNTABLE = (ExponentKind.SQUARE, ExponentKind.ALMOST_SQUARE,
              ExponentKind.TRIGONAL, ExponentKind.PENTAGONAL)


def _prime_power_count(kind: ExponentKind, p: int, e: int) -> int:
    if kind is ExponentKind.TRIGONAL and p == 2:
        return 2 ** (e - 1)
    if kind is ExponentKind.PENTAGONAL and p in (2, 3):
        return p**e
    return s_prime_power(p, e)


def count_values(kind: ExponentKind, m: int) -> int:
    """Number of distinct values of the kind's polynomial modulo m."""
    if kind not in _COUNTABLE:
        raise UnsupportedKind(f"no closed-form value count for {kind}")
    if m < 1:
        raise ValueError("m >= 1 required")
    out = 1
    for p, e in factorize(m):
        out *= _prime_power_count(kind, p, e)
    return out


# ---------------------------------------------------------------------------
# brute-force enumeration

# enumeration length as a multiple of m covering one full period
_PERIOD_MULTIPLE = {
    ExponentKind.SQUARE: 1,
    ExponentKind.TRIGONAL: 1,
    ExponentKind.ALMOST_SQUARE: 1,
    ExponentKind.PENTAGONAL: 2,
    ExponentKind.QUARTER_SQUARE: 2,
    ExponentKind.A182568: 4,
}


def _values_mod(kind: ExponentKind, n: np.ndarray, m: int) -> np.ndarray:
    if kind is ExponentKind.SQUARE:
        return (n * n) % m
    if kind is ExponentKind.TRIGONAL:
        return (n * (n + 1)) % m
    if kind is ExponentKind.ALMOST_SQUARE:
        return (n * n - 1) % m
    if kind is ExponentKind.PENTAGONAL:
        return (n * (3 * n - 1) // 2) % m
    if kind is ExponentKind.QUARTER_SQUARE:
        return ((n + 1) * (n + 1) // 4) % m
    if kind is ExponentKind.A182568:
        return (2 * (n * n // 8)) % m
    raise UnsupportedKind(kind)


@dataclass(frozen=True)
class ResidueProfile:
    kind: ExponentKind
    m: int
    residues: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.residues)


def residues(kind: ExponentKind, m: int) -> ResidueProfile:
    """Values of the kind's polynomial modulo m over one full period."""
    if m < 2:
        raise ValueError("m >= 2 required")
    period = _PERIOD_MULTIPLE[kind] * m
    start = 2 if kind is ExponentKind.A182568 else 0
    seen = []
    for lo in range(start, start + period, 10**7):
        n = np.arange(lo, min(lo + 10**7, start + period), dtype=np.int64)
        seen.append(_values_mod(kind, n, m))
    vals = np.unique(np.concatenate(seen))
    return ResidueProfile(kind, m, tuple(int(v) for v in vals))


# ---------------------------------------------------------------------------
# successive minima of count(m)/m


@dataclass(frozen=True)
class MinimaTable:
    kind: ExponentKind
    entries: tuple[tuple[int, int], ...]  # (m, count), ratio strictly decreasing

    def ratios(self) -> list[float]:
        return [c / m for m, c in self.entries]

    def __len__(self):
        return len(self.entries)


_FULL_SCAN_LIMIT = 10**6
_DFS_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]


def _scan_records(candidates) -> tuple[tuple[int, int], ...]:
    """Keep (m, count) pairs whose ratio is a strict record, m ascending."""
    best_num, best_den = None, None
    out = []
    for m, c in candidates:
        if best_num is None or c * best_den < best_num * m:
            out.append((m, c))
            best_num, best_den = c, m
    return tuple(out)


def _candidates_full(kind: ExponentKind, limit: int):
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in primes_upto(limit):
        spf[p::p][spf[p::p] == 0] = p
    for m in range(2, limit + 1):
        n, c = m, 1
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            c *= _prime_power_count(kind, p, e)
        yield m, c


def _candidates_smooth(kind: ExponentKind, limit: int):
    """All products of the small DFS primes up to ``limit``.

    Justified restrictions: pentagonal counts are unchanged in ratio by
    factors of 2 and 3 (bijections), and the trigonal ratio is independent
    of the exponent of 2, so those exponents are skipped or capped.
    """
    primes = list(_DFS_PRIMES)
    out = []
    if kind is ExponentKind.PENTAGONAL:
        # factors of 2 and 3 never improve the ratio; only m = 2 survives as
        # the trivial first record
        primes = [p for p in primes if p >= 5]
        out.append((2, 2))
    caps = {2: 1} if kind is ExponentKind.TRIGONAL else {}

    def rec(i, m, c):
        if m >= 2:
            out.append((m, c))
        for j in range(i, len(primes)):
            p = primes[j]
            if m * p > limit:
                break
            pe, e = p, 1
            while m * pe <= limit and e <= caps.get(p, 10**9):
                rec(j + 1, m * pe, c * _prime_power_count(kind, p, e))
                pe *= p
                e += 1

    rec(0, 1, 1)
    out.sort()
    return out


def successive_minima(kind: ExponentKind, m_limit: int) -> MinimaTable:
    """All m <= m_limit whose ratio count(m)/m beats every smaller modulus."""
    if kind not in _COUNTABLE:
        raise UnsupportedKind(f"no closed-form value count for {kind}")
    if m_limit <= _FULL_SCAN_LIMIT:
        candidates = _candidates_full(kind, m_limit)
    else:
        candidates = _candidates_smooth(kind, m_limit)
    return MinimaTable(kind, _scan_records(candidates))


def choose_m(kind: ExponentKind, T: int, table: MinimaTable, g: int = 1) -> int:
    """Table entry minimizing g*T/m + count(m); ties go to the smaller m.

    Comparisons are exact (cross-multiplied integers).
    """
    if not table.entries:
        raise ValueError("empty minima table")
    if T < 0:
        raise ValueError("T >= 0 required")
    best_m, best_num, best_den = None, None, None
    for m, c in table.entries:
        num = g * T + c * m  # objective times m
        if best_m is None or num * best_den < best_num * m:
            best_m, best_num, best_den = m, num, m
    return best_m


def objective(T: int, m: int, count: int, g: int = 1) -> Fraction:
    return Fraction(g * T, m) + count


# ---------------------------------------------------------------------------
# table persistence

_DATA_ENV = "QSERIES_MINIMA_DIR"
_TABLE_FILES = {
    ExponentKind.SQUARE: "minima_square.tsv",
    ExponentKind.TRIGONAL: "minima_trigonal.tsv",
    ExponentKind.PENTAGONAL: "minima_pentagonal.tsv",
}
_table_cache: dict[ExponentKind, MinimaTable] = {}


def write_table(path: str, table: MinimaTable) -> None:
    with open(path, "w") as f:
        for m, c in table.entries:
            f.write(f"{m}\t{c}\t{c / m:.6g}\n")


def read_table(path: str, kind: ExponentKind) -> MinimaTable:
    entries = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            entries.append((int(parts[0]), int(parts[1])))
    return MinimaTable(kind, tuple(entries))


def default_table(kind: ExponentKind) -> MinimaTable:
    """The packaged minima table (records with m <= 10^8) for the kind."""
    if kind is ExponentKind.ALMOST_SQUARE:
        kind = ExponentKind.SQUARE  # identical value counts
    if kind in _table_cache:
        return _table_cache[kind]
    if kind not in _TABLE_FILES:
        raise UnsupportedKind(f"no shipped minima table for {kind}")
    directory = os.environ.get(_DATA_ENV)
    if directory is None:
        directory = os.path.join(os.path.dirname(__file__), "data")
    table = read_table(os.path.join(directory, _TABLE_FILES[kind]), kind)
    _table_cache[kind] = table
    return table
