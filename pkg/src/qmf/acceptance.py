"""The acceptance criteria as runnable checks.

Shared by ``tests/test_acceptance.py`` and ``qmf repro``.  Each check
returns a :class:`CriterionResult`; a criterion passes only if its
mathematical condition holds *and* it finishes inside its time budget.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import bounds, linalg, primes, rankcert, sturm, zbasis
from .eisenstein import (delta, eisenstein, lift_mod_p, monomial_series, monomials, sigma_table)
from .series import QSeries, derivative, reduce_mod


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    budget: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = "" if self.budget == float("inf") else f" / {self.budget:g}s"
        return f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.2f}s{budget}) {self.detail}"

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3),
                "budget": None if self.budget == float("inf") else self.budget, "detail": self.detail}


def _product_delta(prec: int) -> list[int]:
    # q * prod (1 - q^n)^24, expanded directly
    poly = [0] * prec
    if prec > 1:
        poly[1] = 1
    for n in range(1, prec):
        for _ in range(24):
            for i in range(prec - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    return poly


def _form_with_prefix(weight: int, prefix: list[int]) -> QSeries:
    """The unique weight-``weight`` form whose first ``dim`` coefficients are given."""
    d = len(monomials(weight))
    dec = sturm.decompose(QSeries(prefix[:d]), weight)
    return dec.recombine(max(len(prefix), 40))


# -- criterion checks: each returns (passed, detail) ------------------------

def check_small_bases() -> tuple[bool, str]:
    notes = []
    ok = True
    prec = 40
    e2, e4 = eisenstein(2, prec), eisenstein(4, prec)
    claimed4 = [e4, (e2 * e2 - e4) / 12]
    z4 = zbasis.saturate(4, prec=prec)
    exp_ok = claimed4[0].coeffs[:2] == (1, 240) and claimed4[1].coeffs[:2] == (0, -24)
    eq4 = zbasis.same_lattice(z4.elements, [c.truncate(prec) for c in claimed4])
    if not (exp_ok and eq4):
        ok = False
        contains = all(zbasis.lattice_contains(z4.elements, c) for c in claimed4)
        notes.append(f"weight 4: saturated index {z4.index_removed}, listed basis spans a sublattice"
                     if contains and not eq4 else "weight 4: expansions or lattice differ")
    z6 = zbasis.saturate(6, prec=prec)
    for prefix in ([1, -72, 1512, -3744], [0, 1, -18, -204], [0, 0, 1, 8]):
        f = _form_with_prefix(6, prefix)
        if list(f.coeffs[:4]) != prefix or not f.is_integral or not zbasis.lattice_contains(z6.elements, f):
            ok = False
            notes.append(f"weight 6: {prefix} not in saturated lattice")
    return ok, "; ".join(notes) or "weights 4 and 6 agree"


def check_conjecture_scan() -> tuple[bool, str]:
    rows = sturm.conjecture_scan(20)
    bad = [r.k for r in rows if not r.match]
    return not bad, f"mismatch at k={bad}" if bad else "bound = dim for 1 <= k <= 20"


def check_eisenstein_congruences() -> tuple[bool, str]:
    bad = []
    for p in (5, 7, 11, 13):
        e2 = reduce_mod(eisenstein(2, 200), p)
        if reduce_mod(eisenstein(p + 1, 200), p) != e2:
            bad.append(f"E_{p + 1}")
        if any(reduce_mod(eisenstein(p - 1, 200), p).coeffs[1:]) or \
                reduce_mod(eisenstein(p - 1, 200), p).coeffs[0] != 1:
            bad.append(f"E_{p - 1}")
    for p in (5, 7):
        for w in range(0, 13, 2):
            for m in monomials(w):
                if reduce_mod(lift_mod_p(m, p, 100), p) != reduce_mod(monomial_series(m, 100), p):
                    bad.append(f"lift {tuple(m)} mod {p}")
    return not bad, f"failures: {bad}" if bad else "all congruences hold"


def check_coefficient_bound() -> tuple[bool, str]:
    N = 500
    bad = []
    for w in range(2, 21, 2):
        bnd = [None] + [bounds.coefficient_bound(w, n) for n in range(1, N + 1)]
        for m in monomials(w):
            s = monomial_series(m, N + 1).ints()
            for n in range(1, N + 1):
                if abs(s[n]) > bnd[n]:
                    bad.append((tuple(m), n))
                    break
    return not bad, f"violations: {bad[:5]}" if bad else "no violations"


def check_identities() -> tuple[bool, str]:
    P = 200
    e2, e4, e6 = eisenstein(2, P), eisenstein(4, P), eisenstein(6, P)
    bad = []
    if derivative(e2) * 12 != e2 * e2 - e4:
        bad.append("12 D E2")
    if derivative(e4) * 3 != e2 * e4 - e6:
        bad.append("3 D E4")
    N = 501
    s3, s1, s5 = sigma_table(3, N), sigma_table(1, N), sigma_table(5, N)
    a = monomial_series((2, 0, 0), N).ints()
    b = monomial_series((1, 1, 0), N).ints()
    if any(a[n] != 240 * s3[n] - 288 * n * s1[n] for n in range(1, N)):
        bad.append("s_200")
    if any(b[n] != 720 * n * s3[n] - 504 * s5[n] for n in range(1, N)):
        bad.append("s_110")
    if delta(P).ints() != _product_delta(P):
        bad.append("Delta product")
    return not bad, f"failures: {bad}" if bad else "all identities hold"


def check_rank_certification(trials: int = 500, seed: int = 20240601) -> tuple[bool, str]:
    rng = random.Random(seed)
    B = 10 ** 6
    disagreements = 0
    det_violations = 0
    for _ in range(trials):
        d = rng.randint(1, 6)
        rows = rng.randint(d, d + 3) if rng.random() < 0.85 else rng.randint(1, d)
        mat = [[rng.randint(-B, B) for _ in range(d)] for _ in range(rows)]
        if d > 1 and rng.random() < 0.4:
            # plant a dependence among the columns, keeping entries bounded
            i, j = rng.sample(range(d), 2)
            c = rng.choice((-1, 1))
            for r in mat:
                r[j] = c * r[i]
        cert = rankcert.certify(mat, entry_bound=B, prime_floor=11)
        full = linalg.exact_rank(mat) == d
        if full != (cert.verdict is rankcert.Verdict.FULL_RANK):
            disagreements += 1
        if rows == d and abs(linalg.det(mat)) > rankcert.hadamard_bound(B, d):
            det_violations += 1
    ok = disagreements == 0 and det_violations == 0
    return ok, f"{trials} matrices, {disagreements} disagreements, {det_violations} det > Hadamard"


def check_descent() -> tuple[bool, str]:
    bad = []
    for k in range(10, 61):
        for mode in (bounds.Mode.Z_BASIS, bounds.Mode.Q_BASIS):
            tr = bounds.descent(k, mode)
            if tr.final_bound > bounds.theorem_bound(k, mode):
                bad.append(f"k={k} {mode.name} above theorem bound")
            if not tr.strictly_decreasing():
                bad.append(f"k={k} {mode.name} not decreasing")
            for name, ms in bounds.milestones(k, mode).items():
                if not tr.crosses(ms):
                    bad.append(f"k={k} {mode.name} misses {name}")
    return not bad, f"failures: {bad[:6]}" if bad else "all traces within bounds"


def check_prime_estimates() -> tuple[bool, str]:
    bad = primes.bracket_scan(10 ** 5)
    ps = primes.primes_up_to(primes.nth_prime(500))
    prod = 1
    fails = []
    for n in range(5, 501):
        prod *= ps[n - 1]
        if not primes.product_bound_holds(n, prod):
            fails.append(n)
    ok = not bad and not fails
    return ok, f"bracket failures {bad[:5]}, product failures {fails[:5]}" if not ok else \
        "Rosser/Bertrand on 3..1e5, product bound on 5..500"


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    budget: float
    check: Callable[[], tuple]

    def run(self) -> CriterionResult:
        t0 = time.perf_counter()
        passed, detail = self.check()
        dt = time.perf_counter() - t0
        if passed and dt >= self.budget:
            passed, detail = False, f"{detail}; over time budget"
        return CriterionResult(self.number, self.title, passed, dt, self.budget, detail)


CRITERIA = (
    Criterion(1, "small-weight Z-bases", 1.0, check_small_bases),
    Criterion(2, "conjecture scan k <= 20", 300.0, check_conjecture_scan),
    Criterion(3, "Eisenstein congruences and lifts", float("inf"), check_eisenstein_congruences),
    Criterion(4, "coefficient bound, weight <= 20, n <= 500", 120.0, check_coefficient_bound),
    Criterion(5, "identity oracles", float("inf"), check_identities),
    Criterion(6, "rank certification soundness", 60.0, check_rank_certification),
    Criterion(7, "descent pipeline k = 10..60", 60.0, check_descent),
    Criterion(8, "prime estimates", 30.0, check_prime_estimates),
)


def run_all(only: list[int] | None = None) -> list[CriterionResult]:
    return [c.run() for c in CRITERIA if only is None or c.number in only]
