"""Directed rational enclosures of real quantities built from logarithms.

Every transcendental value is represented by an :class:`Interval` with dyadic
rational endpoints that is guaranteed to contain it.  Decisions (comparisons,
ceilings) are made by re-evaluating at doubled precision until the enclosure
settles the question.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import DomainError, PrecisionExhausted

# Past this many bits of precision an undecided comparison is treated as a bug
# (exact ties between transcendental expressions do not occur in this package).
MAX_BITS = 1 << 15


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative exponent")
        if self.lo >= 0:
            return Interval(self.lo ** e, self.hi ** e)
        out = Interval.point(1)
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


def _atanh_scaled(u: int, v: int, p: int) -> tuple[int, int]:
    """Enclose ``2^p * atanh(u/v)`` for ``0 <= u/v <= 1/3`` by integers."""
    if u == 0:
        return 0, 0
    u2, v2 = u * u, v * v
    plo = (u << p) // v
    phi = -((-u << p) // v)
    slo = shi = 0
    j = 0
    while True:
        d = 2 * j + 1
        slo += plo // d
        shi += -(-phi // d)
        plo = plo * u2 // v2
        phi = -(-phi * u2 // v2)
        j += 1
        # remaining tail <= z^(2j+1)/(2j+1) / (1 - z^2) and 1/(1 - z^2) <= 9/8
        tail = -(-(phi * 9) // (8 * (2 * j + 1)))
        if tail <= 2:
            return slo, shi + tail


@lru_cache(maxsize=64)
def _ln2_scaled(p: int) -> tuple[int, int]:
    lo, hi = _atanh_scaled(1, 3, p)
    return 2 * lo, 2 * hi


def _log_int_scaled(a: int, p: int) -> tuple[int, int]:
    """Enclose ``2^p * log(a)`` for a positive integer ``a``."""
    if a <= 0:
        raise DomainError("log of a non-positive number")
    n = a.bit_length()
    if n > p + 40:
        shift = n - (p + 40)
        top = a >> shift
        lo, _ = _log_int_scaled(top, p)
        _, hi = _log_int_scaled(top + 1, p)
        l2lo, l2hi = _ln2_scaled(p)
        return lo + shift * l2lo, hi + shift * l2hi
    e = n - 1
    # pick the nearer power of two so that |u/v| <= 0.172
    if a * a >= 1 << (2 * e + 1):
        e += 1
    u = a - (1 << e)
    v = a + (1 << e)
    if u < 0:
        slo, shi = _atanh_scaled(-u, v, p)
        l2lo, l2hi = _ln2_scaled(p)
        return e * l2lo - 2 * shi, e * l2hi - 2 * slo
    slo, shi = _atanh_scaled(u, v, p)
    l2lo, l2hi = _ln2_scaled(p)
    return e * l2lo + 2 * slo, e * l2hi + 2 * shi


def _log_positive(x: Fraction, bits: int) -> Interval:
    p = bits + 8
    num_lo, num_hi = _log_int_scaled(x.numerator, p)
    if x.denominator == 1:
        lo, hi = num_lo, num_hi
    else:
        den_lo, den_hi = _log_int_scaled(x.denominator, p)
        lo, hi = num_lo - den_hi, num_hi - den_lo
    scale = 1 << p
    return Interval(Fraction(lo, scale), Fraction(hi, scale))


def log(x, bits: int = 64) -> Interval:
    """Enclosure of the natural log of a positive rational or interval.

    The width is a small multiple of ``2^-bits`` (plus the width of ``x``
    propagated through ``log``).
    """
    if isinstance(x, Interval):
        if x.lo <= 0:
            raise DomainError("log of an interval reaching zero")
        if x.lo == x.hi:
            return _log_positive(x.lo, bits)
        return Interval(_log_positive(x.lo, bits).lo, _log_positive(x.hi, bits).hi)
    x = Fraction(x)
    if x <= 0:
        raise DomainError("log of a non-positive number")
    if x == 1:
        return Interval.point(0)
    return _log_positive(x, bits)


def decide_greater(lhs: Callable[[int], Interval], rhs: Callable[[int], Interval],
                   bits: int = 64) -> bool:
    """Certified ``lhs > rhs``; ``False`` means ``lhs <= rhs`` was certified."""
    while bits <= MAX_BITS:
        a, b = lhs(bits), rhs(bits)
        if a.lo > b.hi:
            return True
        if a.hi <= b.lo:
            return False
        bits *= 2
    raise PrecisionExhausted("comparison not resolved at maximum precision")


def certified_ceil(expr: Callable[[int], Interval], bits: int = 64) -> int:
    while bits <= MAX_BITS:
        iv = expr(bits)
        lo, hi = math.ceil(iv.lo), math.ceil(iv.hi)
        if lo == hi:
            return lo
        bits *= 2
    raise PrecisionExhausted("ceiling not resolved at maximum precision")


def certified_floor(expr: Callable[[int], Interval], bits: int = 64) -> int:
    while bits <= MAX_BITS:
        iv = expr(bits)
        lo, hi = math.floor(iv.lo), math.floor(iv.hi)
        if lo == hi:
            return lo
        bits *= 2
    raise PrecisionExhausted("floor not resolved at maximum precision")


def upper(expr: Callable[[int], Interval], rel: Fraction = Fraction(1, 10**9),
          bits: int = 64) -> Fraction:
    """Rational upper bound whose relative excess over the true value is below ``rel``."""
    while bits <= MAX_BITS:
        iv = expr(bits)
        if iv.lo > 0 and iv.hi - iv.lo <= rel * iv.lo:
            return iv.hi
        if iv.lo == iv.hi:
            return iv.hi
        bits *= 2
    raise PrecisionExhausted("upper bound not resolved at maximum precision")


def log_range(start: int, stop: int, bits: int = 64):
    """Yield ``(n, log n enclosure)`` for ``start <= n < stop``.

    Consecutive values are chained through ``log n = log(n-1) + 2 atanh(1/(2n-1))``,
    whose series converges in a handful of terms, so scanning long ranges is cheap.
    """
    if start < 1:
        raise DomainError("log_range needs start >= 1")
    p = bits + 8 + max(1, stop - start).bit_length()
    lo, hi = _log_int_scaled(start, p)
    scale = 1 << p
    for n in range(start, stop):
        if n > start:
            slo, shi = _atanh_scaled(1, 2 * n - 1, p)
            lo, hi = lo + 2 * slo, hi + 2 * shi
        yield n, Interval(Fraction(lo, scale), Fraction(hi, scale))
