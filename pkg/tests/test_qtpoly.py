from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from src.diagram import EMPTY, YoungDiagram, enumerate_subdiagrams, h_plus, staircase
from src.qtpoly import (
    T1T2,
    LaurentBivariate,
    PolynomialError,
    area_generating,
    bigraded_semimodule_sum,
    catalan_from_semimodules,
    hilbert_cell_poly,
    poincare,
    positive_weight_count,
    q_binomial,
    q_integer,
    qt_catalan,
    rational_catalan_number,
    tangent_weights,
)
from tests.strategies import pairs, staircase_diagrams

Q = LaurentBivariate.monomial(1, 0)
T = LaurentBivariate.monomial(0, 1)
ONE = LaurentBivariate.constant(1)


def poly_from(terms):
    return LaurentBivariate.from_mapping({(e1, e2): c for e1, e2, c in terms})


small_polys = st.lists(
    st.tuples(
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-5, max_value=5),
    ),
    max_size=5,
).map(poly_from)


def test_zero_terms_are_dropped():
    poly = Q + T - Q
    assert poly == T
    assert poly.terms == ((0, 1, 1),)
    assert (Q - Q).is_zero()
    assert str(Q - Q) == "0"


def test_substitutions():
    assert (Q + T).substitute_monomial("q", "q", -1) == LaurentBivariate.monomial(-1, 0) + T
    assert (Q * T) * LaurentBivariate.monomial(-1, 0) == T
    assert LaurentBivariate.monomial(3, 0) * ONE == LaurentBivariate.monomial(3, 0)
    folded = (Q * T + T).substitute_monomial("t", "q", -1)
    assert folded == ONE + LaurentBivariate.monomial(-1, 0)


def test_unknown_variable():
    with pytest.raises(PolynomialError, match="unknown variable"):
        Q.substitute_monomial("x", "q", 1)


def test_mixing_variable_names_is_rejected():
    with pytest.raises(PolynomialError):
        Q + LaurentBivariate.monomial(1, 0, variables=T1T2)


def test_render():
    assert str(poly_from([(0, 0, 1), (0, 2, 1), (0, 4, 2), (0, 6, 1)])) == "1 + t^2 + 2*t^4 + t^6"
    assert str(LaurentBivariate.monomial(-1, 0)) == "q^-1"
    assert str(Q - T) == "q - t"
    assert str(ONE - Q) == "1 - q"
    assert str(LaurentBivariate.monomial(2, 3, -4)) == "-4*q^2*t^3"


def test_evaluate_and_dict():
    poly = Q * Q + LaurentBivariate.monomial(-1, 1, 3)
    assert poly.evaluate(2, 1) == Fraction(4) + Fraction(3, 2)
    assert LaurentBivariate.from_dict(poly.to_dict()) == poly
    assert poly.to_dict()["terms"] == [[-1, 1, 3], [2, 0, 1]]


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a * ONE == a
    assert a - a == LaurentBivariate()


@given(small_polys, small_polys)
def test_evaluation_is_a_ring_map(a, b):
    point = (Fraction(2), Fraction(-3, 5))
    assert (a * b).evaluate(*point) == a.evaluate(*point) * b.evaluate(*point)


def test_q_binomial_examples():
    assert q_binomial(2, 1) == ONE + Q
    assert q_binomial(4, 2) == poly_from([(0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 0, 1), (4, 0, 1)])
    assert q_binomial(7, 0) == ONE
    with pytest.raises(PolynomialError):
        q_binomial(3, 4)


@pytest.mark.parametrize("n, k", [(6, 3), (8, 2), (9, 4)])
def test_q_binomial_shape(n, k):
    poly = q_binomial(n, k)
    assert poly.value_at_one() == comb(n, k)
    assert poly.degree("q") == k * (n - k)
    assert all(c > 0 for _, _, c in poly.terms)


def test_q_integer():
    assert q_integer(3) == ONE + Q + Q * Q


def test_qt_catalan_small():
    assert qt_catalan(1) == ONE
    assert qt_catalan(2) == Q + T
    assert str(qt_catalan(2)) == "q + t"
    c3 = qt_catalan(3)
    assert c3 == poly_from([(3, 0, 1), (2, 1, 1), (1, 2, 1), (0, 3, 1), (1, 1, 1)])
    assert str(c3) == "q^3 + q^2*t + q*t^2 + q*t + t^3"
    assert c3.value_at_one() == 5


@pytest.mark.parametrize("n", range(1, 9))
def test_qt_catalan_identities(n):
    catalan = qt_catalan(n)
    assert catalan == catalan.swap()
    assert catalan.value_at_one() == comb(2 * n, n) // (n + 1)
    shift = LaurentBivariate.monomial(comb(n, 2), 0)
    specialized = shift * catalan.substitute_monomial("t", "q", -1) * q_integer(n + 1)
    assert specialized == q_binomial(2 * n, n)
    assert bigraded_semimodule_sum(n) == shift * catalan.substitute_monomial("q", "q", -1)
    assert catalan_from_semimodules(n) == catalan


def test_bigraded_small():
    assert bigraded_semimodule_sum(1) == ONE
    assert bigraded_semimodule_sum(2) == ONE + Q * T


def test_poincare_examples():
    assert str(poincare(3, 4)) == "1 + t^2 + 2*t^4 + t^6"
    assert poincare(2, 3) == ONE + T * T
    assert area_generating(3, 4) == poincare(3, 4)
    areas = area_generating(5, 7)
    assert areas.degree("t") == 24
    assert areas.value_at_one() == 66


@pytest.mark.parametrize("n", range(2, 9))
def test_poincare_from_catalan(n):
    rescaled = qt_catalan(n).specialize_one("t").substitute_monomial("q", "t", -2)
    assert poincare(n, n + 1) == LaurentBivariate.monomial(0, 2 * comb(n, 2)) * rescaled


@given(pairs(16))
def test_poincare_properties(pair):
    p, q = pair
    poly = poincare(p, q)
    assert poly == area_generating(p, q)
    assert poly == poincare(q, p)
    assert poly.value_at_one() == rational_catalan_number(p, q)
    assert poly.degree("t") == (p - 1) * (q - 1)
    assert all(e2 % 2 == 0 for _, e2, _ in poly.terms)


def test_tangent_weights_examples():
    t1 = LaurentBivariate.monomial(1, 0, variables=T1T2)
    t2 = LaurentBivariate.monomial(0, 1, variables=T1T2)
    assert tangent_weights(EMPTY).is_zero()
    assert tangent_weights(YoungDiagram((1,))) == t1 + t2
    column = tangent_weights(YoungDiagram((2,)))
    assert column == t1 * t1 + t1 + t2 + LaurentBivariate.monomial(-1, 1, variables=T1T2)
    assert str(column) == "t1^2 + t1 + t2 + t1^-1*t2"


@given(staircase_diagrams(12))
def test_tangent_weights_count_cells(case):
    p, q, diagram = case
    weights = tangent_weights(diagram)
    assert weights.value_at_one() == 2 * diagram.area
    expected = diagram.area + h_plus(diagram, p, q)
    assert positive_weight_count(weights, p, q) == expected


def test_hilbert_cell_poly_examples():
    assert hilbert_cell_poly(3, 4, 0) == ONE
    assert str(hilbert_cell_poly(3, 4, 1)) == "t^4"
    assert str(hilbert_cell_poly(3, 4, 3)) == "t^12"
    with pytest.raises(PolynomialError, match="h must lie"):
        hilbert_cell_poly(3, 4, 4)


@given(pairs(12))
def test_hilbert_cells_count_subdiagrams(pair):
    p, q = pair
    stairs = staircase(p, q)
    total = sum(hilbert_cell_poly(p, q, h).value_at_one() for h in range(stairs.area + 1))
    assert total == len(list(enumerate_subdiagrams(stairs.diagram)))
