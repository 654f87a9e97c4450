"""Full-column-rank certificates for integer matrices.

A matrix with ``d`` columns has full column rank over Q iff some ``d x d``
minor is nonzero.  One prime with full rank mod ``p`` proves that directly.
Conversely, if every prime in a list fails and their product exceeds the
Hadamard bound on all ``d x d`` minors, each minor is divisible by a number
larger than itself and hence zero, so the rank is deficient.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import DomainError, EntryBoundViolated
from .primes import primes_from


class Verdict(str, enum.Enum):
    FULL_RANK = "FULL_RANK"
    NOT_FULL_RANK = "NOT_FULL_RANK"
    INCONCLUSIVE = "INCONCLUSIVE"


def hadamard_bound(B: int, n: int) -> int:
    """``B^n * ceil(n^(n/2))``: bounds ``|det|`` of an ``n x n`` matrix with entries in ``[-B, B]``."""
    if B < 1 or n < 1:
        raise DomainError("hadamard_bound needs B, n >= 1")
    nn = n ** n
    r = math.isqrt(nn)
    if r * r < nn:
        r += 1
    return B ** n * r


def _entries(mat) -> list[list[int]]:
    return mat.as_lists() if hasattr(mat, "as_lists") else [list(r) for r in mat]


def rank_mod_p(mat, p: int) -> int:
    return linalg.rank_mod_p(_entries(mat), p)


def sturm_rows_mod_p(k: int, p: int) -> int:
    """Rows that determine a weight-``2k`` form mod ``p``: ``floor(kp/6) + 1``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if p < 3:
        raise DomainError("p must be >= 3")
    return k * p // 6 + 1


@dataclass
class RankCertificate:
    verdict: Verdict
    primes_used: list = field(default_factory=list)
    per_prime_rank: dict = field(default_factory=dict)
    hadamard_bound: int = 0
    prime_product: int = 1
    entry_bound_B: int = 0
    ncols: int = 0

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "primes_used": self.primes_used,
            "per_prime_rank": {str(p): r for p, r in self.per_prime_rank.items()},
            "hadamard_bound": str(self.hadamard_bound),
            "prime_product": str(self.prime_product),
            "entry_bound_B": str(self.entry_bound_B),
            "ncols": self.ncols,
        }


def max_abs_entry(mat) -> int:
    return max((abs(x) for row in _entries(mat) for x in row), default=0)


def certify(mat, entry_bound: int | None = None, prime_floor: int = 11) -> RankCertificate:
    """Decide full column rank by scanning primes upward from ``prime_floor``.

    ``entry_bound`` defaults to the largest absolute entry; a supplied bound
    that some entry exceeds raises :class:`EntryBoundViolated`.
    """
    rows = _entries(mat)
    d = len(rows[0]) if rows else 0
    if d == 0:
        raise DomainError("matrix has no columns")
    biggest = max_abs_entry(rows)
    if entry_bound is None:
        entry_bound = max(1, biggest)
    if entry_bound < 1:
        raise DomainError("entry_bound must be positive")
    if biggest > entry_bound:
        raise EntryBoundViolated(f"entry of size {biggest} exceeds bound {entry_bound}")
    bound = hadamard_bound(entry_bound, d)
    cert = RankCertificate(Verdict.INCONCLUSIVE, hadamard_bound=bound,
                           entry_bound_B=entry_bound, ncols=d)
    if len(rows) < d:
        # fewer rows than columns: every d x d minor is empty, rank is deficient
        cert.verdict = Verdict.NOT_FULL_RANK
        return cert
    for p in primes_from(max(2, prime_floor)):
        r = linalg.rank_mod_p(rows, p)
        cert.primes_used.append(p)
        cert.per_prime_rank[p] = r
        cert.prime_product *= p
        if r == d:
            cert.verdict = Verdict.FULL_RANK
            return cert
        if cert.prime_product > bound:
            cert.verdict = Verdict.NOT_FULL_RANK
            return cert


def rows_for_primes(k: int, prime_list: Sequence[int]) -> int:
    """Rows needed to check rank modulo every listed prime."""
    return max(sturm_rows_mod_p(k, p) for p in prime_list)
