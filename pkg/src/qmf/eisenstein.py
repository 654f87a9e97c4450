"""Eisenstein series, Delta, divisor sums and dimensions of level-one spaces.

The weight-``2k`` quasimodular space is spanned by the monomials
``E2^a E4^b E6^c`` with ``2a + 4b + 6c = 2k``.  Monomials are listed in a fixed
canonical order: descending in ``a``, ties broken by ascending ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .errors import DomainError
from .series import QSeries, mul, power, scale


class Monomial(NamedTuple):
    """Exponents of ``E2^a E4^b E6^c``."""

    a: int
    b: int
    c: int

    @property
    def weight(self) -> int:
        return 2 * self.a + 4 * self.b + 6 * self.c

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        a, b, c = (int(t) for t in text.split(","))
        return cls(a, b, c)


@dataclass(frozen=True)
class SpaceDescriptor:
    weight: int
    dim_modular: int
    dim_quasimodular: int
    monomials: tuple

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "dim_modular": self.dim_modular,
            "dim_quasimodular": self.dim_quasimodular,
            "monomials": [list(m) for m in self.monomials],
        }


def sigma(ell: int, n: int) -> int:
    if n < 1:
        raise DomainError("sigma is defined for n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** ell
            e = n // d
            if e != d:
                total += e ** ell
        d += 1
    return total


@lru_cache(maxsize=64)
def sigma_table(ell: int, size: int) -> tuple:
    """``(0, sigma_ell(1), ..., sigma_ell(size-1))``."""
    table = [0] * size
    for d in range(1, size):
        p = d ** ell
        for m in range(d, size, d):
            table[m] += p
    return tuple(table)


@lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple:
    # B_0..B_n with the B_1 = -1/2 convention
    B = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, j) * B[j] for j in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """Even-index Bernoulli number ``B_n``, ``n >= 2``."""
    if n < 2 or n % 2:
        raise DomainError("bernoulli expects an even index >= 2")
    return _bernoulli_list(n)[n]


def eisenstein_coefficient(weight: int) -> Fraction:
    """The constant ``-2k / B_k`` multiplying ``sigma_{k-1}(n)`` in ``E_k``."""
    return -Fraction(2 * weight) / bernoulli(weight)


@lru_cache(maxsize=256)
def eisenstein(weight: int, prec: int) -> QSeries:
    if weight < 2 or weight % 2:
        raise DomainError("Eisenstein series need an even weight >= 2")
    c = eisenstein_coefficient(weight)
    sig = sigma_table(weight - 1, prec)
    if prec <= 0:
        return QSeries([])
    return QSeries([1] + [c * sig[n] for n in range(1, prec)])


def delta(prec: int) -> QSeries:
    """Ramanujan's Delta as ``(E4^3 - E6^2) / 1728``."""
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    return scale(power(e4, 3) - power(e6, 2), Fraction(1, 1728))


def dim_modular(weight: int) -> int:
    if weight % 2:
        raise DomainError("level-one modular forms have even weight")
    if weight < 0:
        raise DomainError("weight must be non-negative")
    if weight % 12 == 2:
        return weight // 12
    return weight // 12 + 1


def dim_quasimodular(weight: int) -> int:
    if weight % 2 or weight < 0:
        raise DomainError("weight must be even and non-negative")
    return sum(dim_modular(2 * j) for j in range(weight // 2 + 1))


@lru_cache(maxsize=None)
def _monomials(weight: int) -> tuple:
    out = []
    for a in range(weight // 2, -1, -1):
        rest = weight - 2 * a
        for b in range(rest // 4 + 1):
            r = rest - 4 * b
            if r % 6 == 0:
                out.append(Monomial(a, b, r // 6))
    return tuple(out)


def monomials(weight: int) -> list[Monomial]:
    if weight % 2 or weight < 0:
        raise DomainError("weight must be even and non-negative")
    return list(_monomials(weight))


def space(weight: int) -> SpaceDescriptor:
    mons = monomials(weight)
    return SpaceDescriptor(weight, dim_modular(weight), len(mons), tuple(mons))


@lru_cache(maxsize=512)
def _eis_power(weight: int, e: int, prec: int) -> QSeries:
    if e == 0:
        return QSeries.one(prec)
    if e == 1:
        return eisenstein(weight, prec)
    half = _eis_power(weight, e // 2, prec)
    sq = mul(half, half)
    return mul(sq, eisenstein(weight, prec)) if e % 2 else sq


def monomial_series(m: Monomial, prec: int) -> QSeries:
    """q-expansion of ``E2^a E4^b E6^c`` to ``prec`` coefficients."""
    m = Monomial(*m)
    out = QSeries.one(prec)
    for w, e in ((2, m.a), (4, m.b), (6, m.c)):
        if e:
            out = mul(out, _eis_power(w, e, prec))
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def lift_mod_p(m: Monomial, p: int, prec: int) -> QSeries:
    """A weight ``2kp`` modular form congruent to the monomial mod ``p``.

    Uses ``E2 = E_{p+1}`` and ``1 = E_{p-1}`` mod ``p``:
    ``E4^b E6^c E_{p+1}^a E_{p-1}^(2k-a)`` has weight ``2kp`` exactly.
    """
    if p < 5 or not _is_prime(p):
        raise DomainError("lift_mod_p needs a prime p >= 5")
    m = Monomial(*m)
    k = m.weight // 2
    out = monomial_series(Monomial(0, m.b, m.c), prec)
    if m.a:
        out = mul(out, power(eisenstein(p + 1, prec), m.a))
    if 2 * k - m.a:
        out = mul(out, power(eisenstein(p - 1, prec), 2 * k - m.a))
    return out
