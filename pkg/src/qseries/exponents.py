"""Quadratic exponent sequences of the eta and theta q-series.

Six exponent families are supported, each a strictly increasing enumeration
e_1 < e_2 < ... of nonnegative integers (1-based indexing):

  PENTAGONAL      n(3n-1)/2 over n in Z        eta series
  TRIGONAL        n(n+1), n >= 0               theta2 series (q^{1/4} split off)
  SQUARE          n^2, n >= 1                  theta0/theta1 series
  ALMOST_SQUARE   n^2 - 1, n >= 1              theta0/theta1 with one q split off
  QUARTER_SQUARE  floor((n+1)^2/4), n >= 0     squares and trigonal interleaved
  A182568         2*floor(n^2/8), n >= 2       trigonal, even squares and even
                                               almost-squares interleaved

PENTAGONAL, TRIGONAL and ALMOST_SQUARE carry a sigma map c -> sqrt(k*c + r)
that puts members in bijection with a congruence-structured set of positive
integers; it converts additive decomposition questions about members into
sums-of-squares statements.  All membership tests are exact integer
arithmetic (no floating point).
"""

from __future__ import annotations

import enum
from math import isqrt


class ExponentKind(enum.Enum):
    PENTAGONAL = "pentagonal"
    TRIGONAL = "trigonal"
    SQUARE = "square"
    ALMOST_SQUARE = "almost-square"
    QUARTER_SQUARE = "quarter-square"
    A182568 = "a182568"

    def __str__(self):
        return self.value


class NotAMember(ValueError):
    """Raised when an integer is not in the requested exponent sequence."""


class UnsupportedKind(ValueError):
    """Raised when an operation is not defined for the given kind."""


def exponent(kind: ExponentKind, i: int) -> int:
    """The i-th exponent e_i of the kind's increasing enumeration, i >= 1."""
    if i < 1:
        raise ValueError("index is 1-based")
    if kind is ExponentKind.PENTAGONAL:
        # i-th positive integer coprime to 6 is z, member is (z^2-1)/24
        z = 3 * i - 2 if i % 2 == 1 else 3 * i - 1
        return (z * z - 1) // 24
    if kind is ExponentKind.TRIGONAL:
        return (i - 1) * i
    if kind is ExponentKind.SQUARE:
        return i * i
    if kind is ExponentKind.ALMOST_SQUARE:
        return i * i - 1
    if kind is ExponentKind.QUARTER_SQUARE:
        return (i * i) // 4
    if kind is ExponentKind.A182568:
        # starts at n = 2, collapsing the duplicate leading zero f(1) = f(2) = 0
        n = i + 1
        return 2 * (n * n // 8)
    raise UnsupportedKind(kind)


def truncation_count(kind: ExponentKind, T: int) -> int:
    """Number of exponents e_i <= T."""
    if T < 0:
        return 0
    if kind is ExponentKind.PENTAGONAL:
        z = isqrt(24 * T + 1)
        r = z % 6
        return (z // 6) * 2 + (1 if r >= 1 else 0) + (1 if r >= 5 else 0)
    if kind is ExponentKind.TRIGONAL:
        return (isqrt(4 * T + 1) - 1) // 2 + 1
    if kind is ExponentKind.SQUARE:
        return isqrt(T)
    if kind is ExponentKind.ALMOST_SQUARE:
        return isqrt(T + 1)
    if kind is ExponentKind.QUARTER_SQUARE:
        return isqrt(4 * T + 3)
    if kind is ExponentKind.A182568:
        return isqrt(8 * (T // 2) + 7) - 1
    raise UnsupportedKind(kind)


def members_upto(kind: ExponentKind, T: int) -> list[int]:
    """All exponents <= T, ascending."""
    return [exponent(kind, i) for i in range(1, truncation_count(kind, T) + 1)]


def is_member(kind: ExponentKind, c: int) -> bool:
    if c < 0:
        return False
    if kind is ExponentKind.PENTAGONAL:
        k = 24 * c + 1
        z = isqrt(k)
        return z * z == k and z % 2 == 1 and z % 3 != 0
    if kind is ExponentKind.TRIGONAL:
        k = 4 * c + 1
        z = isqrt(k)
        return z * z == k  # sqrt(4c+1) is odd automatically
    if kind is ExponentKind.SQUARE:
        z = isqrt(c)
        return c >= 1 and z * z == c
    if kind is ExponentKind.ALMOST_SQUARE:
        z = isqrt(c + 1)
        return z * z == c + 1
    if kind is ExponentKind.QUARTER_SQUARE:
        # c = floor(i^2/4) for some i >= 1  <=>  4c or 4c+1 is a square
        return isqrt(4 * c) ** 2 == 4 * c or isqrt(4 * c + 1) ** 2 == 4 * c + 1
    if kind is ExponentKind.A182568:
        if c % 2 == 1:
            return False
        h = c // 2  # h = floor(n^2/8)  <=>  some of 8h..8h+7 is a square
        lo = isqrt(8 * h)
        return any((8 * h <= z * z <= 8 * h + 7) for z in (lo, lo + 1))
    raise UnsupportedKind(kind)


_SIGMA_PARAMS = {
    # kind: (multiplier k, shift r) with z = sqrt(k*c + r)
    ExponentKind.PENTAGONAL: (24, 1),
    ExponentKind.TRIGONAL: (4, 1),
    ExponentKind.ALMOST_SQUARE: (1, 1),
    ExponentKind.SQUARE: (1, 0),
}


def sigma(kind: ExponentKind, c: int) -> int:
    """The sigma map z = sqrt(k*c + r); bijection onto the kind's codomain.

    Codomains: PENTAGONAL -> positive integers coprime to 6, TRIGONAL -> odd
    positive integers, ALMOST_SQUARE and SQUARE -> positive integers.
    """
    if kind not in _SIGMA_PARAMS:
        raise UnsupportedKind(f"no sigma map for {kind}")
    if not is_member(kind, c):
        raise NotAMember(f"{c} is not a {kind} member")
    k, r = _SIGMA_PARAMS[kind]
    return isqrt(k * c + r)


def sigma_inverse(kind: ExponentKind, z: int) -> int:
    """Inverse of sigma: the member c with sigma(c) = z."""
    if kind not in _SIGMA_PARAMS:
        raise UnsupportedKind(f"no sigma map for {kind}")
    k, r = _SIGMA_PARAMS[kind]
    if z < 1 or (z * z - r) % k != 0:
        raise NotAMember(f"{z} is not in the sigma codomain of {kind}")
    if kind is ExponentKind.PENTAGONAL and (z % 2 == 0 or z % 3 == 0):
        raise NotAMember(f"{z} is not coprime to 6")
    if kind is ExponentKind.TRIGONAL and z % 2 == 0:
        raise NotAMember(f"{z} is not odd")
    return (z * z - r) // k


def term_sign(c: int) -> int:
    """Sign (-1)^n of the eta-series term q^c, c = n(3n-1)/2 generalized pentagonal."""
    z = sigma(ExponentKind.PENTAGONAL, c)
    # z = 6n-1 for n >= 1 (z = 5 mod 6), z = 1-6n for n <= 0 (z = 1 mod 6);
    # the sign only depends on |n|
    n = (z + 1) // 6 if z % 6 == 5 else (z - 1) // 6
    return -1 if n % 2 else 1
