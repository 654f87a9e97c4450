"""Determination questions: how many coefficients pin down a form.

Over Q the question is the rank of the monomial coefficient matrix.  Mod
``m`` it is asked of the saturated Z-basis (see :mod:`qmf.zbasis`), since
the monomials themselves can be congruent (``E2^2 = E4 mod 12``).
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .bounds import Mode, theorem_bound
from .eisenstein import dim_quasimodular, monomial_series, monomials
from .errors import DomainError, NotFoundWithinBudget, NotInSpace, UnderDetermined
from .series import QSeries, reduce_mod
from .zbasis import ZBasis, build_matrix, determines_mod, saturate


def _check_weight(weight: int):
    if weight < 0 or weight % 2:
        raise DomainError("weight must be even and non-negative")


def optimal_sturm_bound(weight: int, max_rows: int | None = None) -> int:
    """Least ``m`` such that the first ``m`` coefficients separate the monomials over Q."""
    _check_weight(weight)
    d = dim_quasimodular(weight)
    if max_rows is None:
        max_rows = 2 * d + 10
    if max_rows < d:
        raise NotFoundWithinBudget(f"max_rows {max_rows} is below the dimension {d}")
    rows = build_matrix(weight, max_rows).as_lists()
    chosen = linalg.greedy_row_basis(rows)
    if len(chosen) < d:
        # rank mod the witness prime can undercount; settle exactly
        if linalg.exact_rank(rows) < d:
            raise NotFoundWithinBudget(f"no bound within {max_rows} rows for weight {weight}")
        m = max_rows
    else:
        # full rank mod a prime on these rows certifies full rank over Q
        m = chosen[-1] + 1
    # rank mod p never exceeds rank over Q, so only smaller m need an exact look
    while m > d and linalg.exact_rank(rows[:m - 1]) == d:
        m -= 1
    return m


def is_determined_by(weight: int, num_coeffs: int, modulus: int | None = None,
                     basis: str = "zbasis") -> bool:
    """Do the first ``num_coeffs`` coefficients determine a form?

    Without ``modulus`` this is the rational question.  With ``modulus`` it is
    asked for integral forms mod ``m``: on the saturated Z-basis by default, or
    on the raw monomials with ``basis="standard"``.
    """
    _check_weight(weight)
    d = dim_quasimodular(weight)
    if num_coeffs < d:
        return False
    if modulus is None:
        return linalg.exact_rank(build_matrix(weight, num_coeffs).as_lists()) == d
    if basis == "standard":
        mat = build_matrix(weight, num_coeffs)
    elif basis == "zbasis":
        mat = _zbasis(weight).matrix(num_coeffs)
    else:
        raise DomainError(f"unknown basis {basis!r}")
    return determines_mod(mat, modulus)


@lru_cache(maxsize=32)
def _zbasis(weight: int) -> ZBasis:
    return saturate(weight)


@dataclass(frozen=True)
class Decomposition:
    weight: int
    coefficients: tuple
    residual_prec: int

    def recombine(self, prec: int | None = None) -> QSeries:
        prec = self.residual_prec if prec is None else prec
        out = QSeries.zero(prec)
        for m, c in zip(monomials(self.weight), self.coefficients):
            if c:
                out = out + monomial_series(m, prec) * c
        return out

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "residual_prec": self.residual_prec,
            "coefficients": [[str(m), f"{c.numerator}/{c.denominator}"]
                             for m, c in zip(monomials(self.weight), self.coefficients)],
        }


def decompose(f: QSeries, weight: int) -> Decomposition:
    """Coordinates of ``f`` on the monomials of ``weight``, checked on all of ``f``'s coefficients."""
    _check_weight(weight)
    d = dim_quasimodular(weight)
    if f.prec < 1:
        raise UnderDetermined("no coefficients supplied")
    mat = build_matrix(weight, f.prec).as_lists()
    x, rank = linalg.solve_rational(mat, f.coeffs)
    if x is None:
        raise NotInSpace(f"series is not in the weight-{weight} space (checked to q^{f.prec - 1})")
    if rank < d:
        raise UnderDetermined(f"{f.prec} coefficients give rank {rank} < {d}")
    return Decomposition(weight, tuple(x), f.prec)


class CertificateKind(str, enum.Enum):
    STURM_CERTIFIED = "STURM_CERTIFIED"
    PREFIX_ONLY = "PREFIX_ONLY"


@dataclass(frozen=True)
class CongruenceVerdict:
    modulus: int
    congruent: bool
    checked_prec: int
    certificate_kind: CertificateKind
    required_prec: int
    first_difference: int | None = None

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "congruent": self.congruent,
            "checked_prec": self.checked_prec,
            "certificate_kind": self.certificate_kind.value,
            "required_prec": str(self.required_prec),
            "first_difference": self.first_difference,
        }


def required_prec(weight: int, conjectural: bool = False) -> int:
    """Coefficients needed to certify a mod-``m`` statement in weight ``weight``.

    The proved bound ``ceil(k^5 log k / 12) + 1`` by default; with
    ``conjectural`` the dimension of the space, which is the observed optimal
    bound.
    """
    _check_weight(weight)
    if weight == 0:
        return 1
    if conjectural:
        return dim_quasimodular(weight)
    return theorem_bound(weight // 2, Mode.Z_BASIS)


def congruent_mod(f: QSeries, g: QSeries, m: int, weight: int,
                  conjectural: bool = False) -> CongruenceVerdict:
    """Compare ``f`` and ``g`` mod ``m`` on their common prefix.

    Both are assumed to lie in the weight-``weight`` space.  The verdict is
    ``STURM_CERTIFIED`` only when the prefix reaches :func:`required_prec`.
    A differing coefficient is reported in ``first_difference``.
    """
    if m < 2:
        raise DomainError("modulus must be >= 2")
    a, b = reduce_mod(f, m), reduce_mod(g, m)
    n = min(a.prec, b.prec)
    need = required_prec(weight, conjectural)
    diff = next((i for i in range(n) if a.coeffs[i] != b.coeffs[i]), None)
    kind = CertificateKind.STURM_CERTIFIED if n >= need else CertificateKind.PREFIX_ONLY
    return CongruenceVerdict(m, diff is None, n, kind, need, diff)


@dataclass(frozen=True)
class ScanRow:
    k: int
    dim: int
    bound: int

    @property
    def match(self) -> bool:
        return self.bound == self.dim

    def to_json(self) -> dict:
        return {"k": self.k, "dim": self.dim, "bound": self.bound, "match": self.match}


def _scan_one(k: int) -> ScanRow:
    w = 2 * k
    return ScanRow(k, dim_quasimodular(w), optimal_sturm_bound(w))


def thread_count() -> int:
    """Worker count from ``QMF_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("QMF_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"QMF_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise DomainError("QMF_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def conjecture_scan(max_k: int, min_k: int = 1, workers: int | None = None) -> list[ScanRow]:
    """Optimal Sturm bound against the dimension for ``min_k <= k <= max_k``."""
    if min_k < 1 or max_k < min_k:
        raise DomainError("need 1 <= min_k <= max_k")
    ks = list(range(min_k, max_k + 1))
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(ks) == 1:
        return [_scan_one(k) for k in ks]
    with ProcessPoolExecutor(max_workers=min(workers, len(ks))) as pool:
        return list(pool.map(_scan_one, ks))
