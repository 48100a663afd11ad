from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from hypertype.polynomial import Polynomial, proportionality_spread, relative_coeff_error

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
polys = st.lists(fracs, max_size=7).map(Polynomial)


def test_zero_and_degree():
    assert Polynomial().degree == -1
    assert Polynomial([1, 0, 0]).degree == 0
    assert Polynomial.monomial(3).coeffs == (0, 0, 0, 1)


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)


@given(polys, polys)
def test_product_rule(p, q):
    assert (p * q).deriv() == p.deriv() * q + p * q.deriv()


@given(polys, fracs)
def test_evaluation_is_homomorphism(p, x):
    q = p * p + p
    assert q(x) == p(x) ** 2 + p(x)


@given(polys, fracs, fracs)
def test_compose_linear(p, a, b):
    assert p.compose_linear(a, b)(Fraction(3, 7)) == p(a * Fraction(3, 7) + b)


def test_exactness_preserved():
    p = Polynomial([Fraction(1, 3), Fraction(2, 5)]) ** 3
    assert p.is_exact()
    assert p.monic().leading() == 1


def test_proportionality():
    p = Polynomial([1.0, -2.0, 0.5])
    assert proportionality_spread(p, p * -3.7) < 1e-15
    assert proportionality_spread(p, Polynomial([1.0, -2.0, 0.6])) > 1e-3
    assert relative_coeff_error(p, p) == 0.0
