from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypertype import bargmann as bg
from hypertype import coherent as co
from hypertype.cases import validate
from hypertype.errors import PowerMismatch, UnsupportedCase
from hypertype.ladder import energy


def test_basis_images():
    spec = validate("1-s2", -3, 0)
    assert bg.basis_u(spec, 0, 0, 0.9).coeffs == (1 + 0j,)
    u = bg.basis_u(spec, 1, 3, 0.4)
    want = np.exp(0.4j * float(energy(spec, 1, 3))) / math.sqrt(co.epsilon(spec, 1, 3))
    assert u[3] == pytest.approx(want, rel=1e-15) and u[0] == u[1] == u[2] == 0


def test_linearity():
    spec = validate("s", -1, 2)
    v, w = np.zeros(4, complex), np.zeros(4, complex)
    v[1], w[3] = 1.0, 1.0
    lhs = bg.to_analytic(2 * v + 3j * w, spec, 0, 0.5)
    rhs = 2 * bg.to_analytic(v, spec, 0, 0.5) + 3j * bg.to_analytic(w, spec, 0, 0.5)
    assert lhs.max_diff(rhs) <= 1e-15


def test_monomial_inner_products(infinite_spec):
    for m in range(2):
        for n in range(12):
            for k in range(12):
                got = bg.fock_inner(bg.monomial(infinite_spec, m, n, 1.0), bg.monomial(infinite_spec, m, k, 1.0))
                want = co.epsilon(infinite_spec, m, n) if n == k else 0.0
                assert got == pytest.approx(want, rel=1e-14, abs=0)
        for n in range(8):
            u = bg.basis_u(infinite_spec, m, n, 0.3)
            assert bg.fock_inner(u, u) == pytest.approx(1.0, rel=1e-14)


def test_isometry_random_pairs(infinite_spec):
    rng = np.random.default_rng(42)
    for _ in range(100):
        u = rng.normal(size=24) + 1j * rng.normal(size=24)
        v = rng.normal(size=24) + 1j * rng.normal(size=24)
        u, v = u / np.linalg.norm(u), v / np.linalg.norm(v)
        got = bg.fock_inner(bg.to_analytic(u, infinite_spec, 1, 0.3), bg.to_analytic(v, infinite_spec, 1, 0.3))
        assert abs(got - np.vdot(u, v)) <= 1e-12


def test_operator_examples():
    spec = validate("1", -2, 0, exact=True)
    z3 = bg.monomial(spec, 0, 3)
    assert bg.op_on_series("a", z3) == bg.monomial(spec, 0, 2, 6)
    assert bg.op_differential("a", z3) == bg.monomial(spec, 0, 2, 6)
    spec = validate("1-s2", -2, 0, exact=True)
    z2 = bg.monomial(spec, 0, 2)
    assert bg.op_on_series("a", z2) == bg.op_differential("a", z2) == bg.monomial(spec, 0, 1, 6)
    one = bg.monomial(spec, 0, 0)
    assert all(c == 0 for c in bg.op_on_series("a", one).coeffs)


def test_operators_exact(exact_infinite_spec):
    for m in range(3):
        for n in range(13):
            f = bg.monomial(exact_infinite_spec, m, n)
            for which in bg.OPERATORS:
                assert bg.op_on_series(which, f) == bg.op_differential(which, f)


def test_reproducing_property(infinite_spec):
    rng = np.random.default_rng(7)
    v = rng.normal(size=16) + 1j * rng.normal(size=16)
    f = bg.to_analytic(v, infinite_spec, 1, 0.6)
    for n in range(16):
        got = bg.fock_inner(bg.basis_u(infinite_spec, 1, n, 0.6), f)
        e = float(energy(infinite_spec, 1, n))
        want = math.sqrt(co.epsilon(infinite_spec, 1, n)) * np.exp(-0.6j * e) * f[n]
        assert abs(got - want) <= 1e-12 * abs(want)


def test_coherent_state_image_is_exponential_type():
    # with gamma = 0 the image of |z> is sum (z w)^n / eps_n = exp(z w) for alpha = -1
    spec = validate("1", -1, 0)
    z, w = 0.7 - 0.2j, 0.3 + 0.5j
    f = bg.to_analytic(co.coherent_state(spec, 0, z).coeffs, spec, 0)
    assert bg.evaluate(f, w) == pytest.approx(np.exp(z * w), rel=1e-14)


def test_measure_inner(infinite_spec):
    for m in range(2):
        for n in range(6):
            for k in range(6):
                got = bg.monomial_measure_inner(infinite_spec, m, n, k)
                want = co.epsilon(infinite_spec, m, n) if n == k else 0.0
                scale = math.sqrt(co.epsilon(infinite_spec, m, n) * co.epsilon(infinite_spec, m, k))
                assert abs(got - want) <= 1e-6 * scale


def test_measure_inner_series():
    spec = validate("1-s2", -3, 0)
    f = bg.AnalyticSeries(spec, 0, (1.0, 0.5j, -0.25))
    g = bg.AnalyticSeries(spec, 0, (2.0, 0.0, 1.0))
    want = bg.fock_inner(f, g)
    assert bg.measure_inner(f, g) == pytest.approx(want, rel=1e-8)


def test_errors(finite_spec):
    with pytest.raises(UnsupportedCase):
        bg.monomial(finite_spec, 0, 1)
    spec = validate("s", -1, 2)
    with pytest.raises(PowerMismatch):
        bg.fock_inner(bg.monomial(spec, 0, 1), bg.monomial(spec, 1, 1))
    with pytest.raises(ValueError):
        bg.op_on_series("b", bg.monomial(spec, 0, 1))


@settings(max_examples=50, deadline=None)
@given(coeffs=st.lists(st.fractions(-20, 20, max_denominator=15), min_size=1, max_size=9),
       m=st.integers(0, 4),
       which=st.sampled_from(bg.OPERATORS),
       case=st.sampled_from([("1", Fraction(-3, 2), Fraction(1, 3)), ("s", -2, Fraction(5, 4)),
                             ("1-s2", Fraction(-7, 3), Fraction(1, 2))]))
def test_operator_rules_property(coeffs, m, which, case):
    spec = validate(*case, exact=True)
    f = bg.AnalyticSeries(spec, m, tuple(coeffs))
    assert bg.op_on_series(which, f) == bg.op_differential(which, f)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 31 - 1), gamma=st.floats(-4, 4))
def test_isometry_property(seed, gamma):
    rng = np.random.default_rng(seed)
    spec = validate("1-s2", -2.5, 1.3)
    u = rng.normal(size=20) + 1j * rng.normal(size=20)
    v = rng.normal(size=20) + 1j * rng.normal(size=20)
    got = bg.fock_inner(bg.to_analytic(u, spec, 2, gamma), bg.to_analytic(v, spec, 2, gamma))
    assert abs(got - np.vdot(u, v)) <= 1e-12 * np.linalg.norm(u) * np.linalg.norm(v)
