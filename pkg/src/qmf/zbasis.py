"""Coefficient matrices, column Hermite normal form and prime saturation.

The lattice of integral forms in the weight-``2k`` quasimodular space is
found by starting from the monomials ``E2^a E4^b E6^c`` and, for each small
prime ``p``, repeatedly replacing a column by ``(sum c_i f_i) / p^M`` whenever
the columns are dependent mod ``p``.  Each replacement enlarges the lattice
by ``p^M``; the process stops when the columns are independent modulo every
prime ``p <= 2k + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .eisenstein import Monomial, dim_modular, monomial_series, monomials, _is_prime
from .errors import DomainError, PrecisionExhausted, RankDeficient
from .series import QSeries
from .rankcert import sturm_rows_mod_p


def _unit(d: int, i: int) -> tuple:
    return tuple(Fraction(int(i == j)) for j in range(d))


@dataclass(frozen=True)
class BasisMatrix:
    """``rows x d`` integer matrix; column ``j`` is the q-expansion of ``labels[j]``.

    A label is a vector of rational coefficients on ``monomials(weight)``.
    Row ``n`` holds the coefficient of ``q^n``, starting at ``n = 0``.
    """

    entries: tuple
    weight: int
    column_labels: tuple

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.column_labels)

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.entries]

    def truncate(self, rows: int) -> "BasisMatrix":
        if rows > self.rows:
            raise PrecisionExhausted(f"matrix has only {self.rows} rows")
        return BasisMatrix(self.entries[:rows], self.weight, self.column_labels)

    def label_dict(self, j: int) -> dict:
        mons = monomials(self.weight)
        return {m: c for m, c in zip(mons, self.column_labels[j]) if c}


def _monomial_matrix(weight: int, rows: int) -> list[list[int]]:
    cols = [monomial_series(m, rows).ints() for m in monomials(weight)]
    return [[c[n] for c in cols] for n in range(rows)]


def build_matrix(weight: int, rows: int) -> BasisMatrix:
    """Matrix of the first ``rows`` coefficients of each standard monomial."""
    if rows < 1:
        raise DomainError("rows must be >= 1")
    mons = monomials(weight)
    d = len(mons)
    ent = _monomial_matrix(weight, rows)
    return BasisMatrix(tuple(tuple(r) for r in ent), weight, tuple(_unit(d, i) for i in range(d)))


def matrix_from_labels(weight: int, labels: Sequence[Sequence], rows: int) -> BasisMatrix:
    """Evaluate rational monomial combinations to ``rows`` coefficients.

    Raises :class:`PrecisionExhausted` if some combination is not integral at
    that precision (the combination is then not an integral form).
    """
    std = _monomial_matrix(weight, rows)
    labels = [tuple(Fraction(x) for x in lab) for lab in labels]
    ent = []
    for r in std:
        row = []
        for lab in labels:
            v = sum((c * x for c, x in zip(lab, r) if c), Fraction(0))
            if v.denominator != 1:
                raise PrecisionExhausted("combination is not integral at the checked precision")
            row.append(v.numerator)
        ent.append(tuple(row))
    return BasisMatrix(tuple(ent), weight, tuple(labels))


def _combine_labels(labels: Sequence[Sequence[Fraction]], U: Sequence[Sequence[int]]) -> tuple:
    d = len(U)
    out = []
    for j in range(len(U[0]) if d else 0):
        out.append(tuple(sum((labels[i][t] * U[i][j] for i in range(d)), Fraction(0))
                         for t in range(len(labels[0]))))
    return tuple(out)


def hnf(mat: BasisMatrix) -> tuple[BasisMatrix, list[list[int]]]:
    """Column Hermite normal form ``H = mat U`` with ``U`` unimodular.

    Pivots are positive, pivot rows strictly increase from left to right, and
    entries left of a pivot are reduced into ``[0, pivot)``.
    """
    H, U, pivots = linalg.column_hnf(mat.as_lists())
    if len(pivots) < mat.ncols:
        raise RankDeficient(f"columns have rank {len(pivots)} < {mat.ncols} over Q")
    labels = _combine_labels(mat.column_labels, U)
    return BasisMatrix(tuple(tuple(r) for r in H), mat.weight, labels), U


def dependent_mod_p(mat: BasisMatrix, p: int) -> list[int] | None:
    """A nonzero ``c`` over ``F_p`` with ``mat c = 0 mod p``, or ``None``.

    The returned vector has entries in ``[0, p)``, a 1 at the first column
    that is not a pivot of the reduced echelon form, and 0 at the other
    non-pivot columns.
    """
    basis = linalg.nullspace_mod_p(mat.as_lists(), p, mat.ncols)
    return basis[0] if basis else None


def _pval_content(values: Sequence[int], p: int) -> int | None:
    """Largest ``M`` with ``p^M`` dividing every value; ``None`` for the zero vector."""
    g = 0
    for v in values:
        g = math.gcd(g, v)
    if g == 0:
        return None
    M = 0
    while g % p == 0:
        g //= p
        M += 1
    return M


def small_primes(weight: int) -> list[int]:
    return [p for p in range(2, weight + 2) if _is_prime(p)]


def default_rows(weight: int) -> int:
    """Rows used by :func:`saturate` unless told otherwise.

    The dimension, raised to the per-prime row budget ``floor(kp/6) + 1`` for
    the largest saturation prime.
    """
    k = weight // 2
    d = len(monomials(weight))
    budget = max((sturm_rows_mod_p(k, p) for p in small_primes(weight) if p >= 3), default=1)
    return max(d, budget, 1)


@dataclass(frozen=True)
class SaturationStep:
    prime: int
    column: int
    exponent: int


@dataclass(frozen=True)
class ZBasis:
    weight: int
    elements: tuple
    labels: tuple
    index_removed: int
    steps: tuple = field(default=(), compare=False)

    @property
    def monomials(self) -> list[Monomial]:
        return monomials(self.weight)

    def label_dicts(self) -> list[dict]:
        mons = self.monomials
        return [{m: c for m, c in zip(mons, lab) if c} for lab in self.labels]

    def matrix(self, rows: int | None = None) -> BasisMatrix:
        rows = self.elements[0].prec if rows is None else rows
        if self.elements and rows <= self.elements[0].prec:
            ent = tuple(tuple(int(e[n]) for e in self.elements) for n in range(rows))
            return BasisMatrix(ent, self.weight, self.labels)
        return matrix_from_labels(self.weight, self.labels, rows)

    def to_json(self) -> dict:
        out = []
        for lab, el in zip(self.label_dicts(), self.elements):
            out.append({
                "label": [[str(m), f"{c.numerator}/{c.denominator}"] for m, c in lab.items()],
                "coeffs": [str(c.numerator) for c in el.coeffs],
            })
        return {"weight": self.weight, "index_removed": str(self.index_removed), "elements": out}


def saturate_matrix(mat: BasisMatrix, primes: Sequence[int] | None = None) -> tuple[BasisMatrix, list]:
    """Saturate the column lattice of ``mat`` at each prime, in increasing order.

    For each prime, the kernel of the matrix mod ``p`` is computed in reduced
    form: one vector per free column ``f``, equal to 1 at ``f`` and 0 at the
    other free columns.  Column ``f`` is replaced by ``(A v) / p^M`` with ``M``
    maximal; since ``v`` only touches ``f`` and pivot columns, every old column
    stays in the new lattice.  This repeats until the columns are independent
    mod ``p``.  Labels of the result are recovered by one exact solve.

    Returns the new matrix (same rows) and the list of replacements made.
    Raises :class:`PrecisionExhausted` when a dependence mod ``p`` comes from a
    combination that vanishes identically on the stored rows, i.e. the rows
    cannot separate the columns.
    """
    if primes is None:
        primes = small_primes(mat.weight)
    rows, d = mat.rows, mat.ncols
    cols = [mat.column(j) for j in range(d)]
    steps = []
    for p in sorted(primes):
        while True:
            cur = [[c[n] for c in cols] for n in range(rows)]
            dep = linalg.kernel_mod_p(cur, p, d)
            if not dep:
                break
            new_cols = list(cols)
            for f, v in dep:
                combo = [0] * rows
                for i, vi in enumerate(v):
                    if vi:
                        ci = cols[i]
                        combo = [x + vi * y for x, y in zip(combo, ci)]
                M = _pval_content(combo, p)
                if M is None:
                    raise PrecisionExhausted(
                        f"columns are dependent on the first {rows} rows; more rows are needed")
                q = p ** M
                new_cols[f] = [x // q for x in combo]
                steps.append(SaturationStep(p, f, M))
            cols = new_cols
    ent = tuple(tuple(c[n] for c in cols) for n in range(rows))
    labels = recover_labels(mat, ent)
    return BasisMatrix(ent, mat.weight, labels), steps


def recover_labels(mat: BasisMatrix, entries: Sequence[Sequence[int]]) -> tuple:
    """Labels of columns ``entries`` given as combinations of ``mat``'s columns.

    Solves ``mat X = entries`` exactly on a set of rows where ``mat`` has full
    rank, then composes with ``mat``'s own labels.
    """
    d = mat.ncols
    a = mat.as_lists()
    _, _, piv_rows = linalg.column_hnf(a)
    if len(piv_rows) < d:
        raise RankDeficient("matrix does not have full column rank")
    sq = [a[r] for r in piv_rows]
    out = []
    for j in range(d):
        x, _ = linalg.solve_rational(sq, [entries[r][j] for r in piv_rows])
        lab = [sum((mat.column_labels[i][t] * x[i] for i in range(d) if x[i]), Fraction(0))
               for t in range(len(mat.column_labels[0]))]
        out.append(tuple(lab))
    return tuple(out)


def saturate(weight: int, prec: int | None = None, check_prec: int | None = None) -> ZBasis:
    """A Z-basis of the integral forms of weight ``weight``.

    ``prec`` rows drive the elimination (default :func:`default_rows`); the
    resulting elements are re-evaluated to ``check_prec`` coefficients
    (default ``2 * prec``) and must still be integral, otherwise
    :class:`PrecisionExhausted` is raised so the caller can retry with more
    rows.  The output is put in column Hermite normal form.
    """
    d = len(monomials(weight))
    if prec is None:
        prec = default_rows(weight)
    if prec < d:
        raise PrecisionExhausted(f"prec {prec} is below the dimension {d}")
    check_prec = 2 * prec if check_prec is None else max(check_prec, prec)
    mat = build_matrix(weight, prec)
    if linalg.exact_rank(mat.as_lists()) < d:
        raise PrecisionExhausted(f"{prec} rows do not separate the monomials")
    sat, steps = saturate_matrix(mat)
    H, _ = hnf(sat)
    # re-evaluate at higher precision: raises if a division was not genuine
    full = matrix_from_labels(weight, H.column_labels, check_prec)
    elements = tuple(QSeries(full.column(j)[:prec]) for j in range(d))
    det = linalg.det([[H.column_labels[j][i] for j in range(d)] for i in range(d)])
    index = Fraction(1) / abs(Fraction(det))
    if index.denominator != 1:
        raise PrecisionExhausted("saturated lattice does not contain the monomial lattice")
    return ZBasis(weight, elements, H.column_labels, int(index), tuple(steps))


def relation_count_mod_p(weight: int, p: int) -> int:
    """Predicted number of mod-``p`` relations in weight ``weight``.

    Multiplication by ``E_{p-1} = 1 mod p`` embeds the weight ``2k-(p-1)``
    forms into weight ``2k`` without changing their reductions, so
    ``dim M_{2k-(p-1)}`` weight-``2k`` forms reduce to forms of lower weight.
    """
    if p < 5 or not _is_prime(p):
        raise DomainError("relation_count_mod_p needs a prime p >= 5")
    if weight < p - 1:
        return 0
    return dim_modular(weight - (p - 1))


def _solve_integral(cols: Sequence[Sequence[int]], target: Sequence) -> list[Fraction] | None:
    rows = [[c[n] for c in cols] for n in range(len(target))]
    x, rank = linalg.solve_rational(rows, target)
    if x is None or rank < len(cols):
        return None
    return x


def lattice_contains(basis: Sequence[QSeries], f: QSeries) -> bool:
    """Whether ``f`` is an integer combination of ``basis`` (on the common prefix).

    Needs enough coefficients for the basis to have full column rank;
    otherwise :class:`PrecisionExhausted` is raised.
    """
    n = min([f.prec] + [b.prec for b in basis])
    cols = [list(b.coeffs[:n]) for b in basis]
    rows = [[c[i] for c in cols] for i in range(n)]
    if linalg.exact_rank(rows) < len(basis):
        raise PrecisionExhausted("basis is not separated by the available coefficients")
    x, _ = linalg.solve_rational(rows, f.coeffs[:n])
    if x is None:
        return False
    return all(v.denominator == 1 for v in x)


def same_lattice(a: Sequence[QSeries], b: Sequence[QSeries]) -> bool:
    """Two-way membership test for equality of integer spans."""
    return (len(a) == len(b)
            and all(lattice_contains(b, f) for f in a)
            and all(lattice_contains(a, g) for g in b))


def determines_mod(mat: BasisMatrix, m: int) -> bool:
    """Whether ``x -> mat x`` is injective on ``(Z/m)^d``.

    Decided from the row Hermite form: injective iff the product of its
    pivots (the gcd of the maximal minors) is a unit mod ``m``.
    """
    if m < 2:
        raise DomainError("modulus must be >= 2")
    H, _, pivots = linalg.column_hnf(linalg.transpose(mat.as_lists()))
    if len(pivots) < mat.ncols:
        return False
    g = 1
    for t, r in enumerate(pivots):
        g *= H[r][t]
    return math.gcd(g, m) == 1
