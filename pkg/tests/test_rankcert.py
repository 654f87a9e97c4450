from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from qmf import linalg
from qmf.errors import DomainError, EntryBoundViolated
from qmf.rankcert import (Verdict, certify, hadamard_bound, rank_mod_p, rows_for_primes,
                          sturm_rows_mod_p)
from qmf.zbasis import build_matrix

W4 = [[1, 1], [-48, 240]]


@pytest.mark.parametrize("B, n, expected", [(1, 2, 2), (1, 3, 6), (240, 2, 115200), (1, 1, 1)])
def test_hadamard_bound(B, n, expected):
    assert hadamard_bound(B, n) == expected


@given(st.integers(1, 50), st.integers(1, 6))
def test_hadamard_bound_is_ceiling(B, n):
    h = hadamard_bound(B, n)
    # h / B^n is the least integer r with r^2 >= n^n
    r = h // B ** n
    assert r * r >= n ** n > (r - 1) ** 2


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_within_hadamard(A):
    assert abs(linalg.det(A)) <= hadamard_bound(9, len(A))


@pytest.mark.parametrize("p, expected", [(5, 2), (2, 1)])
def test_rank_mod_p_weight_4(p, expected):
    assert rank_mod_p(W4, p) == expected


def test_rank_of_zero_matrix():
    assert rank_mod_p([[0, 0], [0, 0]], 7) == 0


def test_certify_weight_4():
    cert = certify(W4, entry_bound=240, prime_floor=11)
    assert cert.verdict is Verdict.FULL_RANK
    assert cert.primes_used == [11] and cert.per_prime_rank == {11: 2}


def test_certify_duplicated_column():
    cert = certify([[3, 3], [5, 5], [7, 7]])
    assert cert.verdict is Verdict.NOT_FULL_RANK
    assert cert.prime_product > cert.hadamard_bound


def test_certify_one_by_one():
    cert = certify([[1]])
    assert cert.verdict is Verdict.FULL_RANK and len(cert.primes_used) == 1


def test_certify_entry_bound_violation():
    with pytest.raises(EntryBoundViolated):
        certify(W4, entry_bound=100)


def test_certify_wide_matrix():
    assert certify([[1, 2, 3]]).verdict is Verdict.NOT_FULL_RANK


def test_certify_rejects_empty():
    with pytest.raises(DomainError):
        certify([[]])


def test_certify_monomial_matrix():
    cert = certify(build_matrix(12, 10))
    assert cert.verdict is Verdict.FULL_RANK


def test_certificate_json():
    obj = certify(W4).to_json()
    assert obj["verdict"] == "FULL_RANK" and obj["hadamard_bound"] == str(hadamard_bound(240, 2))


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.just(d), st.lists(st.lists(st.integers(-10 ** 4, 10 ** 4), min_size=d, max_size=d),
                         min_size=1, max_size=d + 2))))
def test_certify_is_sound(args):
    d, A = args
    cert = certify(A, entry_bound=10 ** 4)
    assert (cert.verdict is Verdict.FULL_RANK) == (linalg.exact_rank(A) == d)


@given(st.integers(1, 4), st.integers(-3, 3))
def test_certify_planted_dependence(d, c):
    A = [[(i * 7 + j * 3) % 11 - 5 for j in range(d)] + [0] for i in range(d + 2)]
    for row in A:
        row[-1] = c * row[0]
    assert certify(A).verdict is Verdict.NOT_FULL_RANK


@pytest.mark.parametrize("k, p, expected", [(2, 11, 4), (1, 5, 1), (10, 11, 19)])
def test_sturm_rows_mod_p(k, p, expected):
    assert sturm_rows_mod_p(k, p) == expected


def test_rows_for_primes():
    assert rows_for_primes(10, [5, 7, 11]) == 19
