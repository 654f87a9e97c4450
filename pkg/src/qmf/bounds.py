"""Closed-form coefficient bounds and the bound-descent pipeline.

All logarithms are natural.  Every real quantity that feeds a decision is
handled through :mod:`qmf.enclosure`, so ceilings and inequalities are
certified rather than floating-point guesses.

The descent repeatedly asks: if ``m`` coefficients suffice, how many primes
``11, 13, ..., p_N`` does the CRT/Hadamard argument need, and how many rows
(``floor(k p_N / 6) + 1``) does checking rank modulo those primes take?  That
row count is the new ``m``; iteration stops at a fixpoint.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import enclosure as enc
from . import primes
from .eisenstein import dim_quasimodular
from .enclosure import Interval
from .errors import BudgetExceeded, DomainError, NoProgress

# Upper enclosures, only used by the optional intermediate-bound checks.
ZETA3 = Fraction(1202056903159595, 10**15)  # zeta(3) = 1.2020569031595942...
ZETA5 = Fraction(1036927755143370, 10**15)  # zeta(5) = 1.0369277551433699...

LOG_REL = Fraction(1, 10**6)


class Mode(str, enum.Enum):
    Z_BASIS = "z"
    Q_BASIS = "q"

    @classmethod
    def parse(cls, text) -> "Mode":
        if isinstance(text, Mode):
            return text
        t = str(text).lower()
        for m in cls:
            if t in (m.value, m.name.lower()):
                return m
        raise DomainError(f"unknown mode {text!r}")


@dataclass(frozen=True)
class GrowthBound:
    """``|x_n| <= A n^alpha (1 + log n)^gamma`` for ``n >= 1``."""

    A: Fraction
    alpha: int
    gamma: int

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        if self.A <= 0 or self.alpha < 0 or self.gamma < 0:
            raise DomainError("GrowthBound needs A > 0 and alpha, gamma >= 0")

    def upper(self, n: int) -> Fraction:
        """Rational upper value at ``n`` (log replaced by an upper enclosure)."""
        if n < 1:
            raise DomainError("n must be >= 1")
        return self.A * n ** self.alpha * (1 + _log_upper(n)) ** self.gamma


def _log_upper(n: int) -> Fraction:
    if n == 1:
        return Fraction(0)
    return enc.upper(lambda b: enc.log(n, b), rel=LOG_REL / 4)


def convolution_bound(a: GrowthBound, b: GrowthBound) -> list[GrowthBound]:
    """Three-term bound for the coefficients of a product of two series.

    If ``|a_n|`` and ``|b_n|`` obey ``a`` and ``b`` (and both constant terms are
    1) then the product's coefficients are bounded by the sum of the returned
    terms; the cross term carries the Beta-integral constant
    ``alpha! beta! / (alpha + beta + 1)!``.
    """
    cross = a.A * b.A * Fraction(math.factorial(a.alpha) * math.factorial(b.alpha),
                                 math.factorial(a.alpha + b.alpha + 1))
    return [a, b, GrowthBound(cross, a.alpha + b.alpha + 1, a.gamma + b.gamma)]


def c_max(weight: int, sharp: bool = False) -> Fraction:
    """Leading constant of :func:`coefficient_bound`.

    ``sharp=True`` gives the alternative ``244 (11/7)^(2k-1) - 42``; it is
    offered for experiments and never used by certificates.
    """
    _check_weight(weight)
    if sharp:
        return 244 * Fraction(11, 7) ** (weight - 1) - 42
    return Fraction(109 * 2 ** (weight - 1))


def _check_weight(weight: int):
    if weight < 2 or weight % 2:
        raise DomainError("weight must be even and >= 2")


def coefficient_bound(weight: int, n: int, sharp: bool = False) -> Fraction:
    """Upper value of ``109 * 2^(2k-1) * n^(2k-1) * (1 + log n)^k``.

    Bounds ``|s_{a,b,c}(n)|`` for every monomial of weight ``2k``.  ``log n`` is
    replaced by a rational upper bound with relative error below ``1e-6``.
    """
    _check_weight(weight)
    k = weight // 2
    return GrowthBound(c_max(weight, sharp), weight - 1, k).upper(n)


def zbasis_coefficient_bound(weight: int, n: int) -> Fraction:
    """Coefficient bound for the saturated basis: ``((k+6)/6)^ceil(k^2/3)`` times the monomial bound."""
    _check_weight(weight)
    k = weight // 2
    if k < 10:
        warnings.warn("zbasis_coefficient_bound is only proved for k >= 10", stacklevel=2)
    return Fraction(k + 6, 6) ** (-(-k * k // 3)) * coefficient_bound(weight, n)


def theorem_bound(k: int, mode) -> int:
    """``ceil(k^5 log k / 12) + 1`` (Z mode) or ``ceil(k^4 log k / 2) + 1`` (Q mode)."""
    mode = Mode.parse(mode)
    if k < 1:
        raise DomainError("k must be >= 1")
    if k == 1:
        return 1
    coef = Fraction(k ** 5, 12) if mode is Mode.Z_BASIS else Fraction(k ** 4, 2)
    return enc.certified_ceil(lambda b: coef * enc.log(k, b)) + 1


def tower(k: int, x: int) -> int:
    """Repeated exponential ``E_k(1) = k``, ``E_k(x) = k^E_k(x-1)``; display only."""
    if x < 1:
        raise DomainError("tower height must be >= 1")
    v = k
    for _ in range(x - 1):
        if v.bit_length() > 64:
            raise BudgetExceeded("tower value too large to materialize")
        v = k ** v
    return v


@dataclass(frozen=True)
class Power:
    """The integer ``base ** exp`` kept symbolic; only its logarithm is needed."""

    base: int
    exp: int

    def log(self, bits: int) -> Interval:
        return self.exp * enc.log(self.base, bits)

    def __str__(self):
        return f"{self.base}^{self.exp}"


def _log_m(m, bits: int) -> Interval:
    return m.log(bits) if isinstance(m, Power) else enc.log(m, bits)


def _r_k(k: int, bits: int) -> Interval:
    """The constant term ``R_k`` of the Q-mode inequality."""
    kk = k * k
    return (6 + Fraction(kk, 9) * enc.log(109, bits)
            + Fraction(kk * (2 * k - 1), 9) * enc.log(2, bits)
            + Fraction(kk, 18) * enc.log(Fraction(kk, 9), bits))


def rhs(k: int, m, mode, bits: int) -> Interval:
    """Right-hand side of the prime-count inequality for assumed bound ``m``."""
    mode = Mode.parse(mode)
    lm = _log_m(m, bits)
    tail = Fraction(k ** 3, 9) * enc.log(1 + lm, bits)
    if mode is Mode.Z_BASIS:
        return Fraction(k ** 4, 27) * enc.log(k, bits) + Fraction(2 * k ** 3, 9) * lm + tail
    return _r_k(k, bits) + Fraction(k * k * (2 * k - 1), 9) * lm + tail


def lhs(N: int, bits: int) -> Interval:
    """``N log N + N log log N - 2N``."""
    ln = enc.log(N, bits)
    return N * ln + N * enc.log(ln, bits) - 2 * N


def satisfies(k: int, m, mode, N: int, bits: int = 64, _rhs=None) -> bool:
    """Certified ``lhs(N) > rhs(k, m)``."""
    r = _rhs if _rhs is not None else (lambda b: rhs(k, m, mode, b))
    return enc.decide_greater(lambda b: lhs(N, b), r, bits=bits)


def _memo(fn: Callable[[int], Interval]) -> Callable[[int], Interval]:
    cache: dict[int, Interval] = {}

    def inner(bits: int) -> Interval:
        if bits not in cache:
            cache[bits] = fn(bits)
        return cache[bits]
    return inner


def _mid(iv: Interval) -> Fraction:
    return (iv.lo + iv.hi) / 2


def least_N(k: int, m, mode) -> int:
    """Least ``N >= 3`` with ``lhs(N) > rhs(k, m)`` (``lhs`` is increasing for ``N >= 3``).

    A Newton iteration on midpoints locates the crossing; the answer is then
    pinned down by certified comparisons at ``N`` and ``N - 1``.
    """
    r = _memo(lambda b: rhs(k, m, mode, b))
    if satisfies(k, m, mode, 3, _rhs=r):
        return 3
    target = r(64).hi
    bits = 64 + 2 * max(1, math.ceil(target)).bit_length()
    tgt = _mid(r(bits))
    # N log N ~ target gives the starting point
    x = max(4, math.ceil(tgt / _mid(enc.log(max(tgt, Fraction(3)), bits))))
    for _ in range(200):
        ln = _mid(enc.log(x, bits))
        lln = _mid(enc.log(ln, bits))
        f = x * ln + x * lln - 2 * x - tgt
        fp = ln + lln + 1 / ln - 1
        step = f / fp
        nx = max(3, math.floor(x - step))
        if abs(nx - x) <= 1:
            x = nx
            break
        x = nx
    cb = bits

    def sat(n: int) -> bool:
        return satisfies(k, m, mode, n, bits=cb, _rhs=r)

    # gallop to a bracket [lo, hi] with sat(hi) and not sat(lo)
    step = 1
    if sat(x):
        hi = x
        lo = max(3, x - step)
        while lo > 3 and sat(lo):
            hi = lo
            step *= 2
            lo = max(3, lo - step)
        if sat(lo):
            return lo
    else:
        lo = x
        hi = x + step
        while not sat(hi):
            lo = hi
            step *= 2
            hi = hi + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sat(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class DescentStep:
    m_in: object  # int or Power
    N: int
    p_N_upper: int
    m_out: int

    def to_json(self) -> dict:
        return {"m_in": str(self.m_in), "N": str(self.N),
                "p_N_upper": str(self.p_N_upper), "m_out": str(self.m_out)}


@dataclass(frozen=True)
class DescentConfig:
    """Knobs for :func:`descent`.

    ``exact_primes`` replaces Bertrand's ``2 N log N`` by the true ``p_N``
    whenever it lies within ``sieve_budget``.
    """

    exact_primes: bool = False
    sieve_budget: int = primes.SIEVE_BUDGET
    max_steps: int = 64


def _m_lt(a, b) -> bool:
    """``a < b`` where either side may be a :class:`Power`."""
    if not isinstance(a, Power) and not isinstance(b, Power):
        return a < b
    return enc.decide_greater(lambda bits: _log_m(b, bits), lambda bits: _log_m(a, bits))


def descent_step(k: int, m_in, mode, config: DescentConfig = DescentConfig()) -> DescentStep:
    """One round of the descent; raises :class:`NoProgress` at a fixpoint."""
    mode = Mode.parse(mode)
    if k < 10:
        raise DomainError("the descent inequalities are proved only for k >= 10")
    if not isinstance(m_in, Power) and m_in < dim_quasimodular(2 * k):
        raise DomainError("m_in must be at least the dimension of the space")
    N = least_N(k, m_in, mode)
    p_upper = None
    if config.exact_primes:
        try:
            p_upper = primes.nth_prime(N, budget=config.sieve_budget)
        except BudgetExceeded:
            p_upper = None
    if p_upper is None:
        p_upper = enc.certified_ceil(lambda b: 2 * N * enc.log(N, b))
    m_out = k * p_upper // 6 + 1
    step = DescentStep(m_in, N, p_upper, m_out)
    if not _m_lt(m_out, m_in):
        raise NoProgress(f"fixpoint reached at m = {m_in}", step=step)
    return step


def initial_bound(k: int, mode):
    """Starting point: ``k^2 k^k k^(k^k)`` (Z mode) or ``k^(k+3)`` (Q mode)."""
    mode = Mode.parse(mode)
    if mode is Mode.Z_BASIS:
        return Power(k, 2 + k + k ** k)
    return k ** (k + 3)


@dataclass
class DescentTrace:
    k: int
    mode: Mode
    steps: list = field(default_factory=list)
    final_bound: int = 0

    def strictly_decreasing(self) -> bool:
        body = self.steps[:-1]
        return all(_m_lt(s.m_out, s.m_in) for s in body)

    def crosses(self, milestone: Callable[[int], Interval]) -> bool:
        """True when some step moves from above the milestone to at or below it."""
        def above(m):
            return enc.decide_greater(lambda b: _log_m(m, b), lambda b: enc.log(milestone(b), b)) \
                if isinstance(m, Power) else enc.decide_greater(lambda b: Interval.point(m), milestone)
        for s in self.steps:
            if above(s.m_in) and not above(s.m_out):
                return True
        return False

    def to_json(self) -> dict:
        return {"k": self.k, "mode": self.mode.name, "final_bound": str(self.final_bound),
                "steps": [s.to_json() for s in self.steps]}


def descent(k: int, mode, config: DescentConfig = DescentConfig()) -> DescentTrace:
    mode = Mode.parse(mode)
    if k < 10:
        raise DomainError("descent is only run for k >= 10")
    trace = DescentTrace(k, mode)
    m = initial_bound(k, mode)
    for _ in range(config.max_steps):
        try:
            step = descent_step(k, m, mode, config)
        except NoProgress as exc:
            st = exc.step
            trace.steps.append(st)
            # both ends are valid bounds; keep the smaller
            trace.final_bound = st.m_in if _m_lt(st.m_in, st.m_out) else st.m_out
            return trace
        trace.steps.append(step)
        m = step.m_out
    raise BudgetExceeded("descent did not reach a fixpoint")


def milestones(k: int, mode) -> dict[str, Callable[[int], Interval]]:
    """Intermediate bounds the descent should pass through, as enclosure builders."""
    mode = Mode.parse(mode)
    lk = lambda b: enc.log(k, b)
    if mode is Mode.Z_BASIS:
        return {
            "k^(k+5)": lambda b: Interval.point(k ** (k + 5)),
            "2 k^5 log k loglog k": lambda b: 2 * k ** 5 * lk(b) * enc.log(lk(b), b),
        }
    return {
        "4 k^5 log k / 9": lambda b: Fraction(4 * k ** 5, 9) * lk(b),
        "5 k^4 log k / 9": lambda b: Fraction(5 * k ** 4, 9) * lk(b),
    }
