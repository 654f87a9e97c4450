"""Primes: sieve, n-th prime, and certified Rosser / Bertrand / product bounds.

The n-th prime is computed exactly by sieving up to an explicit budget;
beyond it :class:`~qmf.errors.BudgetExceeded` is raised instead of guessing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import enclosure as enc
from .errors import BudgetExceeded, DomainError

SIEVE_BUDGET = 10**7

# deterministic Miller-Rabin witnesses for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=8)
def _sieve(limit: int) -> np.ndarray:
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if is_p[i]:
            is_p[i * i::i] = False
    return np.flatnonzero(is_p)


def primes_up_to(limit: int, budget: int = SIEVE_BUDGET) -> list[int]:
    if limit < 2:
        return []
    if limit > budget:
        raise BudgetExceeded(f"sieve limit {limit} exceeds budget {budget}")
    # sieve in power-of-two blocks so repeated calls share the cache
    size = max(1024, 1 << (limit - 1).bit_length())
    arr = _sieve(min(size, budget))
    return [int(p) for p in arr[: np.searchsorted(arr, limit, side="right")]]


def _nth_prime_ceiling(n: int) -> int:
    # p_n < n (log n + log log n) for n >= 6
    if n < 6:
        return 13
    x = n * (math.log(n) + math.log(math.log(n)))
    return int(x * 1.001) + 10


def nth_prime(n: int, budget: int = SIEVE_BUDGET) -> int:
    """The n-th prime, ``p_1 = 2``."""
    if n < 1:
        raise DomainError("nth_prime needs n >= 1")
    limit = _nth_prime_ceiling(n)
    if limit > budget:
        raise BudgetExceeded(f"p_{n} lies beyond the sieve budget {budget}")
    size = max(1024, 1 << (limit - 1).bit_length())
    arr = _sieve(min(size, budget))
    if len(arr) < n:
        arr = _sieve(limit)
    return int(arr[n - 1])


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Least prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def primes_from(floor: int):
    """Infinite increasing generator of primes ``>= floor``."""
    p = floor if is_prime(floor) else next_prime(floor)
    while True:
        yield p
        p = next_prime(p)


def _nlogn(n: int, bits: int) -> enc.Interval:
    return n * enc.log(n, bits)


def rosser_lower(n: int, bits: int = 64) -> Fraction:
    """Rational lower approximation of ``n log n``."""
    return _nlogn(n, bits).lo


def bertrand_upper(n: int, bits: int = 64) -> Fraction:
    """Rational upper approximation of ``2 n log n``."""
    return 2 * _nlogn(n, bits).hi


def rosser_holds(n: int, p: int | None = None) -> bool:
    """Certified ``p_n > n log n``."""
    p = nth_prime(n) if p is None else p
    return enc.decide_greater(lambda b: enc.Interval.point(p), lambda b: _nlogn(n, b))


def bertrand_holds(n: int, p: int | None = None) -> bool:
    """Certified ``p_n < 2 n log n``."""
    p = nth_prime(n) if p is None else p
    return enc.decide_greater(lambda b: 2 * _nlogn(n, b), lambda b: enc.Interval.point(p))


def bracket_scan(n_max: int, n_min: int = 3) -> list[int]:
    """Indices ``n_min <= n <= n_max`` where Rosser or Bertrand fails to certify.

    Uses chained log enclosures; an undecided case falls back to the adaptive
    single-value checks.  An empty list means every case was certified.
    """
    ps = primes_up_to(nth_prime(n_max))
    bad = []
    for n, ln in enc.log_range(n_min, n_max + 1):
        p = ps[n - 1]
        lo, hi = n * ln.lo, n * ln.hi
        if p > hi and p < 2 * lo:
            continue
        if not (rosser_holds(n, p) and bertrand_holds(n, p)):
            bad.append(n)
    return bad


def p11_product(n: int) -> int:
    """``11 * 13 * ... * p_n``; the lower bound of :func:`product_bound_holds` is checked."""
    if n < 5:
        raise DomainError("p11_product needs n >= 5")
    ps = primes_up_to(nth_prime(n))
    out = math.prod(ps[4:n])
    if not product_bound_holds(n, out):
        raise ArithmeticError(f"product lower bound fails at n={n}")
    return out


def product_lower_log(n: int, bits: int) -> enc.Interval:
    """Enclosure of ``log((n log n)^n e^(-2n-2)) = n log n + n log log n - 2n - 2``."""
    ln = enc.log(n, bits)
    return n * ln + n * enc.log(ln, bits) - 2 * n - 2


def product_bound_holds(n: int, product: int | None = None) -> bool:
    """Certified ``P_11(n) > (n log n)^n e^(-2n-2)``, compared in the log domain."""
    if product is None:
        product = p11_product(n)
    return enc.decide_greater(lambda b: enc.log(product, b), lambda b: product_lower_log(n, b))
