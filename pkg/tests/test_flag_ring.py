from itertools import product
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagtc.f2poly import RawPoly, complete_symmetric, parse_poly
from flagtc.flag_ring import (
    FlagRing,
    RingMismatchError,
    basis_degree_counts,
    normal_form,
    poincare_polynomial,
    top_projection_rewrite,
    top_substitution_rule,
    verify_annihilator,
    verify_extended_relations,
    verify_heights,
    verify_ring,
    verify_symmetric_covariance,
    verify_tau_relations,
)
from flagtc.linalg_oracle import oracle_normal_forms

from oracles import poly_product_coeffs

SMALL = [(k, m) for k in range(1, 4) for m in range(1, 5)]
MEDIUM = [(k, m) for k in range(1, 5) for m in range(1, 6)]


@pytest.mark.parametrize("k,m", SMALL)
def test_normal_form_matches_linear_algebra(k, m):
    ring = FlagRing(k, m)
    oracle = oracle_normal_forms(k, m)
    for v, nf in oracle.items():
        assert frozenset(ring.basis[r] for r in normal_form(ring, RawPoly.monomial(v)).ranks()) == nf, v


@pytest.mark.parametrize("k,m", SMALL)
def test_counts_and_poincare(k, m):
    ring = FlagRing(k, m)
    assert ring.size == prod(m + i for i in range(1, k + 1))
    assert ring.dim == k * m + k * (k - 1) // 2
    expected = poly_product_coeffs([m + i for i in range(1, k + 1)])
    assert poincare_polynomial(ring) == expected
    assert basis_degree_counts(ring) == expected


@pytest.mark.parametrize("m", range(1, 8))
def test_projective_space(m):
    # F(1,m) = RP^m: truncated polynomial ring on one class
    ring = FlagRing(1, m)
    x = ring.gen(1)
    for e in range(m + 1):
        assert (x ** e).terms() == [(e,)]
    assert (x ** (m + 1)).is_zero()


def test_f111_by_hand():
    # F(1,1,1): h_2(x1, x2) = 0 and x1^3 = 0
    ring = FlagRing(2, 1)
    assert ring.bounds == (2, 1)
    assert str(normal_form(ring, parse_poly("x2^2", 2))) == "x1^2 + x1*x2"
    assert normal_form(ring, parse_poly("x1^3", 2)).is_zero()
    assert str(normal_form(ring, parse_poly("x1*x2^2", 2))) == "x1^2*x2"


@pytest.mark.parametrize("k,m", MEDIUM)
def test_structural_reports(k, m):
    ring = FlagRing(k, m)
    for report in (verify_extended_relations(ring), verify_annihilator(ring),
                   verify_tau_relations(ring), verify_heights(ring),
                   verify_symmetric_covariance(ring)):
        assert report.passed, (report.title, report.failures())


@pytest.mark.parametrize("k,m", MEDIUM)
def test_heights_and_top_class(k, m):
    ring = FlagRing(k, m)
    h = m + k - 1
    for i in range(1, k + 1):
        x = ring.gen(i)
        assert not (x ** h).is_zero()
        assert (x ** (h + 1)).is_zero()
    top = prod((ring.gen(i) ** (m + k - i) for i in range(1, k + 1)), start=ring.one())
    assert top == ring.top_class()


def test_defining_relations_vanish():
    for k, m in MEDIUM:
        ring = FlagRing(k, m)
        for i in range(1, k + 1):
            rel = complete_symmetric(m + i, k, tuple(range(1, k + 2 - i)))
            assert normal_form(ring, rel).is_zero(), (k, m, i)


@pytest.mark.parametrize("k,m", [(2, 1), (2, 3), (3, 2), (3, 3), (4, 1)])
def test_top_functional_against_rewrite(k, m):
    ring = FlagRing(k, m)
    h = ring.height
    for v in product(range(h + 1), repeat=k):
        if sum(v) == ring.dim:
            assert ring.top_coefficient_of_monomial(v) == ring.monomial_bits(v) >> ring.top_rank & 1


def test_top_projection_rewrite():
    ring = FlagRing(3, 2)
    p = RawPoly.monomial((4, 3, 2)) + RawPoly.monomial((2, 3, 4))
    full = normal_form(ring, p)
    assert top_projection_rewrite(ring, p).bits == full.bits & (1 << ring.top_rank)


@pytest.mark.parametrize("k,m", [(2, 2), (3, 2), (3, 4), (4, 3)])
def test_substitution_rule_remainder(k, m):
    # x_i^{m+k-j} minus its substitute only involves basis monomials with
    # n_i < m+k-i and no later variables
    ring = FlagRing(k, m)
    for i in range(1, k + 1):
        for j in range(0, i + 1):
            diff = normal_form(ring, RawPoly.gen(k, i, m + k - j) + top_substitution_rule(ring, i, j))
            for n in diff.terms():
                assert n[i - 1] < m + k - i and not any(n[i:]), (i, j, n)


def test_rank_unrank_bijection():
    ring = FlagRing(3, 3)
    assert [ring.rank(ring.unrank(r)) for r in range(ring.size)] == list(range(ring.size))
    with pytest.raises(ValueError):
        ring.rank((6, 0, 0))


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        FlagRing(2, 1).gen(1) + FlagRing(2, 2).gen(1)


def test_bad_parameters():
    with pytest.raises(ValueError):
        FlagRing(0, 3)
    with pytest.raises(ValueError):
        FlagRing(2, 0)


def test_verify_ring_all_pass():
    assert all(r.passed for r in verify_ring(FlagRing(3, 3)))


RING = FlagRing(3, 2)
elements = st.integers(0, (1 << RING.size) - 1).map(RING.element)


@given(elements, elements, elements)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a * RING.one() == a


@given(st.lists(st.integers(0, 8), min_size=3, max_size=3), st.lists(st.integers(0, 8), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_normal_form_is_multiplicative(u, v):
    p, q = RawPoly.monomial(u), RawPoly.monomial(v)
    assert normal_form(RING, p * q) == normal_form(RING, p) * normal_form(RING, q)
