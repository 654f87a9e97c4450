from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest

from qmf import linalg
from qmf.errors import EntryBoundViolated, PrecisionExhausted, RankDeficient
from qmf.eisenstein import dim_modular, eisenstein, monomial_series, monomials
from qmf.series import reduce_mod
from qmf.zbasis import (BasisMatrix, build_matrix, default_rows, dependent_mod_p, determines_mod, hnf,
                        lattice_contains, relation_count_mod_p, same_lattice, saturate, saturate_matrix)


def minor_gcd(weight: int, rows: int) -> int:
    """Index of the monomial lattice in its saturation: gcd of all maximal minors."""
    A = build_matrix(weight, rows).as_lists()
    d = len(A[0])
    g = 0
    for rs in itertools.combinations(range(rows), d):
        g = math.gcd(g, int(linalg.det([A[r] for r in rs])))
    return g


def test_build_matrix_weight_4():
    assert build_matrix(4, 2).as_lists() == [[1, 1], [-48, 240]]


def test_build_matrix_weight_2():
    assert build_matrix(2, 1).as_lists() == [[1]]


def test_hnf_weight_4():
    A = build_matrix(4, 6)
    H, U = hnf(A)
    assert linalg.matmul(A.as_lists(), U) == H.as_lists()
    assert abs(linalg.det(U)) == 1
    assert H.as_lists()[0] == [1, 0]


def test_hnf_rank_deficient():
    mat = BasisMatrix(((1, 1), (2, 2)), 4, ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))
    with pytest.raises(RankDeficient):
        hnf(mat)


def test_dependence_mod_2():
    assert dependent_mod_p(build_matrix(4, 6), 2) == [1, 1]


def test_no_dependence_mod_5():
    assert dependent_mod_p(build_matrix(4, 6), 5) is None


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_no_dependence_in_weight_2(p):
    assert dependent_mod_p(build_matrix(2, 3), p) is None


@pytest.mark.parametrize("weight, p, expected", [(10, 5, dim_modular(6)), (8, 11, 0), (12, 13, 1)])
def test_relation_count(weight, p, expected):
    assert relation_count_mod_p(weight, p) == expected


@pytest.mark.parametrize("weight, p", [(10, 5), (12, 5), (12, 7), (12, 13), (16, 7), (20, 11)])
def test_relation_count_matches_lifted_forms(weight, p):
    # each weight 2k-(p-1) modular monomial g gives g * E_{p-1}, a weight-2k
    # form congruent to g mod p; these are independent over Q
    from qmf.series import QSeries
    low = weight - (p - 1)
    mods = [m for m in monomials(low) if m.a == 0] if low >= 0 else []
    rows = 3 * dim_modular(weight) + 10
    lifted = [monomial_series(m, rows) * eisenstein(p - 1, rows) for m in mods]
    for m, f in zip(mods, lifted):
        assert reduce_mod(f, p) == reduce_mod(monomial_series(m, rows), p)
    A = [[f[n] for f in lifted] for n in range(rows)] if lifted else []
    rank = linalg.exact_rank(A) if lifted else 0
    assert rank == relation_count_mod_p(weight, p)


def test_weight_2_basis():
    zb = saturate(2, prec=3)
    assert zb.index_removed == 1
    assert zb.elements[0].ints()[:3] == [1, -24, -72]


@pytest.mark.parametrize("weight", [2, 4, 6, 8, 10, 12])
def test_index_matches_minor_gcd(weight):
    assert saturate(weight).index_removed == minor_gcd(weight, 13)


def test_weight_4_lattice():
    zb = saturate(4, prec=30)
    e2, e4 = eisenstein(2, 30), eisenstein(4, 30)
    # (E4 - E2^2)/288 = sum n sigma_1(n) q^n is integral
    f = (e4 - e2 * e2) / 288
    assert f.ints()[:4] == [0, 1, 6, 12]
    assert same_lattice(zb.elements, [e4, f])
    assert zb.index_removed == 288


def test_weight_4_listed_pair_is_a_proper_sublattice():
    zb = saturate(4, prec=30)
    e2, e4 = eisenstein(2, 30), eisenstein(4, 30)
    listed = [e4, (e2 * e2 - e4) / 12]
    assert all(lattice_contains(zb.elements, g) for g in listed)
    assert not same_lattice(zb.elements, listed)


def test_weight_6_contains_e2_cubed_minus_e2e4_over_288():
    zb = saturate(6, prec=30)
    e2, e4 = eisenstein(2, 30), eisenstein(4, 30)
    f = (e2 * e2 * e2 - e2 * e4) / 288
    assert f.is_integral
    assert f.ints()[:4] == [0, -1, 18, 204]
    assert lattice_contains(zb.elements, f)


@pytest.mark.parametrize("weight", [4, 6, 8, 10, 12, 14])
def test_saturated_basis_is_saturated(weight):
    zb = saturate(weight)
    d = len(zb.elements)
    mat = zb.matrix(3 * d + 10)
    for p in [2, 3, 5, 7, 11, 13, 17]:
        assert linalg.rank_mod_p(mat.as_lists(), p) == d


@pytest.mark.parametrize("weight", [4, 8, 12])
def test_saturation_is_idempotent(weight):
    zb = saturate(weight)
    again, steps = saturate_matrix(zb.matrix())
    assert steps == []
    assert again.as_lists() == zb.matrix().as_lists()


@pytest.mark.parametrize("weight", [6, 10, 16])
def test_elements_stay_integral_at_higher_precision(weight):
    zb = saturate(weight)
    long = zb.matrix(3 * zb.elements[0].prec)
    assert all(isinstance(x, int) for row in long.as_lists() for x in row)


def test_labels_reproduce_elements():
    zb = saturate(8)
    mons = monomials(8)
    for lab, el in zip(zb.labels, zb.elements):
        f = sum((monomial_series(m, el.prec) * c for m, c in zip(mons, lab) if c),
                start=monomial_series(mons[0], el.prec) * 0)
        assert f == el


def test_insufficient_precision():
    with pytest.raises(PrecisionExhausted):
        saturate(12, prec=3)


def test_default_rows_at_least_dimension():
    for w in range(2, 60, 2):
        assert default_rows(w) >= len(monomials(w))


def test_json_shape():
    obj = saturate(4, prec=4).to_json()
    assert obj["weight"] == 4 and obj["index_removed"] == "288"
    assert [e["coeffs"] for e in obj["elements"]] == [["1", "0", "720", "3840"], ["0", "1", "6", "12"]]


def test_determines_mod_standard_vs_saturated():
    std = build_matrix(4, 2)
    assert not determines_mod(std, 12)
    assert determines_mod(saturate(4).matrix(2), 12)


def test_weight_4_mod_12_congruence_in_standard_basis():
    e2, e4 = eisenstein(2, 40), eisenstein(4, 40)
    assert reduce_mod(e2 * e2, 12) == reduce_mod(e4, 12)


@pytest.mark.parametrize("weight", range(2, 21, 2))
def test_index_primes_bounded_by_2k_plus_1(weight):
    import sympy
    idx = saturate(weight).index_removed
    assert all(p <= weight + 1 for p in sympy.factorint(idx))


def test_weight_6_third_element_denominator():
    from qmf.series import content
    e2, e4, e6 = eisenstein(2, 200), eisenstein(4, 200), eisenstein(6, 200)
    f = e2 * e2 * e2 * 5 - e2 * e4 * 3 - e6 * 2
    assert content(f) == 51840
    g = f / 51840
    assert g.ints()[:4] == [0, 0, 1, 8]
    assert lattice_contains(saturate(6, prec=30).elements, g.truncate(30))
