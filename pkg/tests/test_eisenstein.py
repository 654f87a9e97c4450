from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qmf.errors import DomainError
from qmf.eisenstein import (Monomial, bernoulli, delta, dim_modular, dim_quasimodular, eisenstein,
                            lift_mod_p, monomial_series, monomials, sigma, sigma_table, space)
from qmf.series import QSeries, derivative, power, reduce_mod

from conftest import product_delta


@pytest.mark.parametrize("ell, n, expected", [(1, 6, 12), (3, 2, 9), (5, 2, 33), (0, 12, 6)])
def test_sigma(ell, n, expected):
    assert sigma(ell, n) == expected


@given(st.integers(0, 7), st.integers(1, 300))
def test_sigma_table_matches_divisor_oracle(ell, n):
    assert sigma_table(ell, n + 1)[n] == sum(d ** ell for d in sympy.divisors(n))


@pytest.mark.parametrize("n, expected", [(2, Fraction(1, 6)), (4, Fraction(-1, 30)), (12, Fraction(-691, 2730))])
def test_bernoulli_values(n, expected):
    assert bernoulli(n) == expected


@pytest.mark.parametrize("n", range(2, 41, 2))
def test_bernoulli_matches_sympy(n):
    assert bernoulli(n) == Fraction(str(sympy.bernoulli(n)))


@pytest.mark.parametrize("weight, prec, expected", [
    (2, 3, [1, -24, -72]),
    (4, 3, [1, 240, 2160]),
    (6, 2, [1, -504]),
])
def test_eisenstein_prefixes(weight, prec, expected):
    assert eisenstein(weight, prec).ints() == expected


def test_e6_second_coefficient_uses_sigma5():
    assert eisenstein(6, 3)[2] == -504 * 33 == -16632


def test_eisenstein_rejects_odd_weight():
    with pytest.raises(DomainError):
        eisenstein(5, 4)


def test_delta_matches_product_formula():
    assert delta(120).ints() == product_delta(120)


def test_tau_values():
    d = delta(3)
    assert (d[1], d[2]) == (1, -24)


@pytest.mark.parametrize("weight, expected", [(12, 2), (14, 1), (2, 0), (0, 1), (4, 1), (24, 3)])
def test_dim_modular(weight, expected):
    assert dim_modular(weight) == expected


def test_dim_modular_is_generating_function_count():
    # dim M_{2k} = #{(b, c): 4b + 6c = 2k}
    for w in range(0, 200, 2):
        count = sum(1 for b in range(w // 4 + 1) for c in range(w // 6 + 1) if 4 * b + 6 * c == w)
        assert dim_modular(w) == count


def test_monomials_weight_4():
    assert monomials(4) == [(2, 0, 0), (0, 1, 0)]


def test_monomials_weight_6():
    assert set(monomials(6)) == {(3, 0, 0), (1, 1, 0), (0, 0, 1)}


def test_monomials_order_and_weight():
    for w in range(0, 60, 2):
        ms = monomials(w)
        assert all(m.weight == w for m in ms)
        assert ms == sorted(ms, key=lambda m: (-m.a, m.b))
        assert len(set(ms)) == len(ms) == dim_quasimodular(w)


@pytest.mark.parametrize("weight, expected", [(2, 1), (4, 2)])
def test_space_dimensions(weight, expected):
    assert space(weight).dim_quasimodular == expected


def test_space_40_is_sum_of_modular_dimensions():
    assert space(40).dim_quasimodular == sum(dim_modular(2 * j) for j in range(21))


def test_monomial_string_round_trip():
    assert Monomial.parse(str(Monomial(3, 0, 2))) == (3, 0, 2)


def test_monomial_series_110_first_coefficient():
    assert monomial_series((1, 1, 0), 2)[1] == 216


def test_monomial_series_matches_power():
    e2 = eisenstein(2, 30)
    assert monomial_series((3, 0, 0), 30) == power(e2, 3)
    assert monomial_series((0, 0, 0), 5).ints() == [1, 0, 0, 0, 0]


def test_ramanujan_identities():
    e2, e4, e6 = eisenstein(2, 80), eisenstein(4, 80), eisenstein(6, 80)
    assert derivative(e2) * 12 == e2 * e2 - e4
    assert derivative(e4) * 3 == e2 * e4 - e6
    assert derivative(e6) * 2 == e2 * e6 - e4 * e4


def test_divisor_sum_identities():
    N = 150
    s1, s3, s5 = sigma_table(1, N), sigma_table(3, N), sigma_table(5, N)
    a = monomial_series((2, 0, 0), N)
    b = monomial_series((1, 1, 0), N)
    for n in range(1, N):
        assert a[n] == 240 * s3[n] - 288 * n * s1[n]
        assert b[n] == 720 * n * s3[n] - 504 * s5[n]


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_eisenstein_congruences(p):
    assert reduce_mod(eisenstein(p + 1, 100), p) == reduce_mod(eisenstein(2, 100), p)
    assert reduce_mod(eisenstein(p - 1, 100), p) == reduce_mod(QSeries.one(100), p)


def test_lift_of_e2_mod_5():
    f = lift_mod_p(Monomial(1, 0, 0), 5, 60)
    assert reduce_mod(f, 5) == reduce_mod(eisenstein(2, 60), 5)


def test_lift_of_e4_mod_7():
    f = lift_mod_p(Monomial(0, 1, 0), 7, 60)
    assert reduce_mod(f, 7) == reduce_mod(eisenstein(4, 60), 7)


@pytest.mark.parametrize("p", [5, 7])
def test_lifts_are_modular_of_weight_2kp(p):
    # a modular form of weight w is a combination of E4^b E6^c, so its
    # coefficients lie in the span of the modular monomials
    from qmf.linalg import solve_rational
    from qmf.zbasis import build_matrix
    for m in monomials(6):
        w = m.weight * p
        f = lift_mod_p(m, p, 3 * dim_modular(w) + 5)
        mods = [mm for mm in monomials(w) if mm.a == 0]
        cols = [monomial_series(mm, f.prec).coeffs for mm in mods]
        rows = [[c[n] for c in cols] for n in range(f.prec)]
        x, _ = solve_rational(rows, f.coeffs)
        assert x is not None


def test_lift_rejects_small_primes():
    with pytest.raises(DomainError):
        lift_mod_p(Monomial(1, 0, 0), 3, 10)


def test_delta_times_e4_order_and_integrality():
    from qmf.series import ord_infinity
    f = delta(300) * eisenstein(4, 300)
    assert ord_infinity(f) == 1
    assert delta(300).is_integral
