"""Arbitrary-precision complex arithmetic with operation counting.

Values are pairs of MPFR binary floats tagged with a working precision in
bits.  Multiplication and squaring are distinct operations so that measured
counts line up with the cost model for complex series evaluation:

    (x+yi)^2     = (x^2 - y^2) + 2xy i                  2 squarings + 1 mult
    (x+yi)(t+ui) = (xt - yu) + ((x+y)(t+u) - xt - yu)i  3 mults

Additions, subtractions and multiplications by small integer constants are
treated as free.  Each operation rounds its result to an explicitly supplied
precision, which is how the per-term precision reduction of the series
evaluators is realized.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

_MIN_PREC = 8


class OpCounter:
    """Counts complex multiplications and complex squarings."""

    __slots__ = ("mul", "sqr")

    def __init__(self):
        self.mul = 0
        self.sqr = 0

    def fft_cost(self) -> Fraction:
        """Modeled cost in units of one real multiplication, S = 2M/3."""
        return 3 * Fraction(self.mul) + Fraction(7, 3) * self.sqr

    def cost(self, squaring_ratio: Fraction) -> Fraction:
        return 3 * Fraction(self.mul) + (2 * squaring_ratio + 1) * self.sqr

    def as_tuple(self):
        return (self.mul, self.sqr)

    def __repr__(self):
        return f"OpCounter(mul={self.mul}, sqr={self.sqr})"


def _set_prec(prec: int) -> None:
    gmpy2.get_context().precision = max(int(prec), _MIN_PREC)


class ArbComplex:
    """Immutable complex value at a stated binary precision."""

    __slots__ = ("re", "im", "prec")

    def __init__(self, re, im, prec: int):
        self.prec = max(int(prec), _MIN_PREC)
        _set_prec(self.prec)
        self.re = mpfr(re)
        self.im = mpfr(im)

    @staticmethod
    def zero(prec: int) -> "ArbComplex":
        return ArbComplex(0, 0, prec)

    @staticmethod
    def one(prec: int) -> "ArbComplex":
        return ArbComplex(1, 0, prec)

    def mul(self, other: "ArbComplex", prec: int, counter: OpCounter | None = None) -> "ArbComplex":
        """Complex product, three real multiplications."""
        _set_prec(prec)
        x, y, t, u = self.re, self.im, other.re, other.im
        xt = x * t
        yu = y * u
        s = (x + y) * (t + u)
        out = ArbComplex.__new__(ArbComplex)
        out.prec = max(int(prec), _MIN_PREC)
        out.re = xt - yu
        out.im = s - xt - yu
        if counter is not None:
            counter.mul += 1
        return out

    def square(self, prec: int, counter: OpCounter | None = None) -> "ArbComplex":
        """Complex square, two real squarings and one real multiplication."""
        _set_prec(prec)
        x, y = self.re, self.im
        s1 = x * x
        s2 = y * y
        m = x * y
        out = ArbComplex.__new__(ArbComplex)
        out.prec = max(int(prec), _MIN_PREC)
        out.re = s1 - s2
        out.im = m + m
        if counter is not None:
            counter.sqr += 1
        return out

    def add(self, other: "ArbComplex", prec: int | None = None) -> "ArbComplex":
        p = self.prec if prec is None else prec
        _set_prec(p)
        out = ArbComplex.__new__(ArbComplex)
        out.prec = max(int(p), _MIN_PREC)
        out.re = self.re + other.re
        out.im = self.im + other.im
        return out

    def sub(self, other: "ArbComplex", prec: int | None = None) -> "ArbComplex":
        p = self.prec if prec is None else prec
        _set_prec(p)
        out = ArbComplex.__new__(ArbComplex)
        out.prec = max(int(p), _MIN_PREC)
        out.re = self.re - other.re
        out.im = self.im - other.im
        return out

    def neg(self) -> "ArbComplex":
        out = ArbComplex.__new__(ArbComplex)
        out.prec = self.prec
        out.re = -self.re
        out.im = -self.im
        return out

    def scale_int(self, k: int) -> "ArbComplex":
        """Multiplication by a small integer constant (free in the cost model)."""
        _set_prec(self.prec)
        out = ArbComplex.__new__(ArbComplex)
        out.prec = self.prec
        out.re = self.re * k
        out.im = self.im * k
        return out

    def abs(self, prec: int | None = None) -> mpfr:
        _set_prec(prec or self.prec)
        return gmpy2.sqrt(self.re * self.re + self.im * self.im)

    def pow_int(self, e: int, prec: int, counter: OpCounter | None = None) -> "ArbComplex":
        """Binary exponentiation, e >= 0; used by the naive reference oracle."""
        if e == 0:
            return ArbComplex.one(prec)
        result = None
        base = self
        while True:
            if e & 1:
                result = base if result is None else result.mul(base, prec, counter)
            e >>= 1
            if not e:
                return result
            base = base.square(prec, counter)

    def distance(self, other: "ArbComplex") -> mpfr:
        p = max(self.prec, other.prec) + 16
        _set_prec(p)
        dr = self.re - other.re
        di = self.im - other.im
        return gmpy2.sqrt(dr * dr + di * di)

    def to_decimal(self, digits: int | None = None) -> tuple[str, str]:
        _set_prec(self.prec)
        d = digits or max(2, int(self.prec * 0.30103))
        return (f"{self.re:.{d}g}", f"{self.im:.{d}g}")

    def to_hex(self) -> tuple[str, str]:
        """Bit-exact hex mantissa/exponent form 'mantissa@exp' (base 16)."""

        def one(x):
            digs, exp, _ = x.digits(16)
            return f"{digs}@{exp}"

        return (one(self.re), one(self.im))

    def __repr__(self):
        r, i = self.to_decimal(12)
        return f"ArbComplex({r}, {i}, prec={self.prec})"


def mpfr_from_str(s: str, prec: int) -> mpfr:
    _set_prec(prec)
    return mpfr(s)


def log2_abs(value: ArbComplex, prec: int = 64) -> float:
    _set_prec(max(prec, 64))
    a = value.abs(max(prec, 64))
    if a == 0:
        raise ValueError("log2 of zero")
    return float(gmpy2.log2(a))
