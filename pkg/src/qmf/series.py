"""Truncated q-series with exact rational coefficients.

A :class:`QSeries` stores the coefficients of ``q^0 .. q^(prec-1)``.  Binary
operations truncate to the smaller precision of their operands.  Products are
computed by Kronecker substitution (pack into one big integer, multiply,
unpack), which gives exactly the Cauchy product; :func:`convolve_naive` is the
plain quadratic reference kept for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import DomainError, NonIntegralCoefficient

INFINITE = math.inf


def convolve_naive(a: Sequence, b: Sequence, n: int) -> list:
    """First ``n`` terms of the Cauchy product, by the definition."""
    out = []
    for k in range(n):
        s = 0
        for j in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
            s += a[j] * b[k - j]
        out.append(s)
    return out


def _pack(values: Sequence[int], bits: int) -> int:
    x = 0
    for v in reversed(values):
        x = (x << bits) + v
    return x


def _unpack_signed(x: int, bits: int, n: int) -> list[int]:
    # bits is a multiple of 8 here, so digits can be read straight from bytes
    nbytes = bits // 8
    low = x & ((1 << (bits * n)) - 1)
    raw = low.to_bytes(nbytes * n, "little")
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    carry = 0
    for i in range(n):
        t = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if t >= half:
            out.append(t - full)
            carry = 1
        else:
            out.append(t)
            carry = 0
    return out


def convolve_int(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` terms of the Cauchy product of two integer sequences."""
    a = list(a[:n])
    b = list(b[:n])
    if n <= 0:
        return []
    ma = max((abs(v) for v in a), default=0)
    mb = max((abs(v) for v in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * n
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    bits = -(-bits // 8) * 8
    return _unpack_signed(_pack(a, bits) * _pack(b, bits), bits, n)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


@dataclass(frozen=True)
class QSeries:
    """Exact truncated power series ``sum_{n < prec} coeffs[n] q^n``."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, prec: int) -> "QSeries":
        return cls([0] * prec)

    @classmethod
    def one(cls, prec: int) -> "QSeries":
        return cls([1] + [0] * (prec - 1)) if prec > 0 else cls([])

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    @cached_property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @cached_property
    def denominator(self) -> int:
        """Least common denominator of the coefficients."""
        return reduce(_lcm, (c.denominator for c in self.coeffs), 1)

    def numerators(self) -> list[int]:
        """Integer coefficients of ``denominator * self``."""
        d = self.denominator
        return [c.numerator * (d // c.denominator) for c in self.coeffs]

    def ints(self) -> list[int]:
        if not self.is_integral:
            raise NonIntegralCoefficient("series has non-integral coefficients")
        return [c.numerator for c in self.coeffs]

    def truncate(self, prec: int) -> "QSeries":
        return QSeries(self.coeffs[:prec])

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.prec > 6 else ""
        return f"QSeries([{head}{more}], prec={self.prec})"

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, Fraction(1) / other)
        return NotImplemented

    def __pow__(self, e):
        return power(self, e)

    def to_json(self) -> dict:
        return {"prec": self.prec,
                "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "QSeries":
        coeffs = [Fraction(s) for s in obj["coeffs"]]
        if len(coeffs) != int(obj["prec"]):
            raise DomainError("prec does not match number of coefficients")
        return cls(coeffs)


def add(a: QSeries, b: QSeries) -> QSeries:
    n = min(a.prec, b.prec)
    return QSeries(a.coeffs[i] + b.coeffs[i] for i in range(n))


def scale(a: QSeries, c) -> QSeries:
    c = Fraction(c)
    return QSeries(x * c for x in a.coeffs)


def mul(a: QSeries, b: QSeries) -> QSeries:
    n = min(a.prec, b.prec)
    if a.is_integral and b.is_integral:
        return QSeries(convolve_int(a.ints(), b.ints(), n))
    da, db = a.denominator, b.denominator
    prod = convolve_int(a.numerators(), b.numerators(), n)
    den = da * db
    return QSeries(Fraction(v, den) for v in prod)


def power(a: QSeries, e: int) -> QSeries:
    if e < 0:
        raise DomainError("negative exponent")
    result = QSeries.one(a.prec)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def derivative(a: QSeries) -> QSeries:
    """The operator q d/dq: coefficient n is multiplied by n."""
    return QSeries(n * c for n, c in enumerate(a.coeffs))


def ord_infinity(a: QSeries):
    """Index of the first nonzero coefficient, or ``INFINITE`` if none is stored."""
    for n, c in enumerate(a.coeffs):
        if c != 0:
            return n
    return INFINITE


def content(a: QSeries) -> Fraction:
    """Positive generator of the fractional ideal spanned by the coefficients."""
    g = 0
    for v in a.numerators():
        g = math.gcd(g, v)
    return Fraction(g, a.denominator)


def reduce_mod(a: QSeries, m: int) -> "QSeriesModM":
    if m < 2:
        raise DomainError("modulus must be at least 2")
    out = []
    for c in a.coeffs:
        den = c.denominator
        if den == 1:
            out.append(c.numerator % m)
        elif math.gcd(den, m) > 1:
            raise NonIntegralCoefficient(f"denominator {den} is not invertible mod {m}")
        else:
            out.append(c.numerator * pow(den, -1, m) % m)
    return QSeriesModM(tuple(out), m)


@dataclass(frozen=True)
class QSeriesModM:
    coeffs: tuple
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise DomainError("modulus must be at least 2")
        if any(not 0 <= c < self.modulus for c in self.coeffs):
            raise DomainError("residues must lie in [0, modulus)")

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def _check(self, other):
        if self.modulus != other.modulus:
            raise DomainError("moduli differ")

    def __add__(self, other):
        self._check(other)
        m = self.modulus
        n = min(self.prec, other.prec)
        return QSeriesModM(tuple((self.coeffs[i] + other.coeffs[i]) % m for i in range(n)), m)

    def __mul__(self, other):
        self._check(other)
        m = self.modulus
        n = min(self.prec, other.prec)
        prod = convolve_int(self.coeffs, other.coeffs, n)
        return QSeriesModM(tuple(v % m for v in prod), m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def ord_infinity(self):
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return INFINITE
