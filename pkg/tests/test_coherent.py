from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypertype import coherent as co
from hypertype import ladder as ld
from hypertype.cases import max_degree, validate
from hypertype.errors import TruncationError, UnsupportedCase

from frozen import BESSEL_MEASURE, BESSEL_MEASURE_HALVED, OVERLAP_1MS2_A3

ZS = [0.5, 1 + 1j, 2j, -3.0, 3 * np.exp(0.4j)]


def ms(spec):
    L = max_degree(spec)
    return range(3) if L is None else range(min(2, L) + 1)


def test_vacuum(spec):
    st_ = co.coherent_state(spec, 0, 0.0, 0.7)
    assert st_.coeffs[0] == 1 and np.all(st_.coeffs[1:] == 0)


def test_canonical_coefficients():
    z = 1.3 - 0.4j
    st_ = co.coherent_state(validate("1", -1, 0), 0, z)
    n = np.arange(st_.dim)
    ref = np.array([z ** k / math.sqrt(math.factorial(k)) for k in n])
    assert np.max(np.abs(st_.coeffs - ref) / np.abs(ref)) <= 1e-14


def test_eigenstate(infinite_spec):
    for m in ms(infinite_spec):
        for z in ZS:
            assert co.eigen_residual(co.coherent_state(infinite_spec, m, z, 0.7)) <= 1e-10


def test_truncation_bound(infinite_spec):
    for z in ZS:
        st_ = co.coherent_state(infinite_spec, 1, z)
        assert st_.tail_bound <= 1e-16 * st_.norm_sq()
        longer = co.overlap_series(infinite_spec, 1, z, terms=st_.dim + 200)
        assert longer - st_.norm_sq() <= st_.tail_bound + 1e-14 * longer


def test_overlap_examples():
    for p in (("1", -2, 0), ("s2", -9, 1)):
        assert co.overlap_closed(validate(*p), 0, 0.0) == 1.0
    st_ = co.coherent_state(validate("1", -1, 0), 0, np.exp(0.3j))
    assert co.overlap(st_) == pytest.approx(math.e, rel=1e-15)
    spec = validate("1-s2", -2, 0)
    for z in (0.3, 1.1j, 2 - 1j):
        assert co.overlap_closed(spec, 0, z) == pytest.approx(co.overlap_series(spec, 0, z), rel=1e-14)


@pytest.mark.parametrize("key", list(OVERLAP_1MS2_A3))
def test_overlap_frozen(key):
    m, r = key
    assert co.overlap_closed(validate("1-s2", -3, 0), m, r) == pytest.approx(OVERLAP_1MS2_A3[key], rel=1e-14)


def test_overlap_closed_forms(spec):
    for m in ms(spec):
        for z in [0.0] + ZS:
            st_ = co.coherent_state(spec, m, z, 0.3)
            closed = co.overlap_closed(spec, m, z)
            assert abs(co.overlap(st_) - closed) <= 1e-10 * closed


def test_epsilon_routes(spec):
    for m in ms(spec):
        top = ld.level_count(spec, m)
        for n in range((15 if top is None else top) + 1):
            assert co.epsilon(spec, m, n) == pytest.approx(co.epsilon_closed(spec, m, n), rel=1e-13)


def test_evolution(spec):
    for m in ms(spec):
        for z in ZS:
            st_ = co.coherent_state(spec, m, z, 0.0)
            assert np.array_equal(co.evolve(st_, 0.0).coeffs, st_.coeffs)
            moved = co.evolve(st_, 1.0)
            ref = co.coherent_state(spec, m, z, 1.0)
            assert np.max(np.abs(moved.coeffs - ref.coeffs) / np.abs(ref.coeffs)) <= 1e-14
            assert co.overlap(co.evolve(st_, 0.37)) == pytest.approx(co.overlap(st_), rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(gamma=st.integers(-64, 64), t=st.integers(-64, 64), x=st.floats(-2, 2), y=st.floats(-2, 2))
def test_temporal_stability_property(gamma, t, x, y):
    # dyadic gamma and t, so gamma + t is exact
    spec = validate("1-s2", -3, 0)
    g, dt = gamma / 16, t / 16
    a = co.evolve(co.coherent_state(spec, 1, complex(x, y), g), dt).coeffs
    b = co.coherent_state(spec, 1, complex(x, y), g + dt).coeffs
    assert np.max(np.abs(a - b) / np.abs(b)) <= 1e-14


@settings(max_examples=40, deadline=None)
@given(r=st.floats(0, 3), th=st.floats(0, 2 * math.pi), gamma=st.floats(-5, 5),
       case=st.sampled_from([("1", -2, 0), ("s", -1, 2), ("1-s2", -3, 0), ("1-s2", -2.5, 1.3)]))
def test_eigenstate_property(r, th, gamma, case):
    st_ = co.coherent_state(validate(*case), 1, r * np.exp(1j * th), gamma)
    assert co.eigen_residual(st_) <= 1e-10


def test_displacement_examples():
    spec = validate("1", -1, 0)
    d0 = co.displacement_apply(spec, 0, 0.0)
    assert d0.coeffs[0] == pytest.approx(1.0) and np.max(np.abs(d0.coeffs[1:])) == 0
    z = 1.2 + 0.9j
    ref = np.array([math.exp(-abs(z) ** 2 / 2) * z ** n / math.sqrt(math.factorial(n)) for n in range(24)])
    assert np.max(np.abs(co.displacement_apply(spec, 0, z).coeffs - ref)) <= 1e-8


def test_displacement(infinite_spec):
    for m in ms(infinite_spec):
        for z in (0.5, 1 + 1j, 2j, -2.0):
            try:
                D = co.displacement_apply(infinite_spec, m, z, 24, 0.7)
            except TruncationError:
                # only expected where the state genuinely does not fit in 24 states
                st_ = co.coherent_state(infinite_spec, m, z)
                assert np.sum(np.abs(st_.coeffs[24:]) ** 2) > 1e-8 * st_.norm_sq()
                continue
            c = co.coherent_state(infinite_spec, m, z, 0.7).coeffs
            ref = math.exp(-abs(z) ** 2 / 2) * np.pad(c, (0, max(0, 24 - len(c))))[:24]
            assert np.max(np.abs(D.coeffs - ref)) <= 1e-8


def test_a_perp_commutator(infinite_spec):
    for m in ms(infinite_spec):
        a, _ = ld.build_ladder(infinite_spec, m, 0.7, 24)
        P = co.a_perp(infinite_spec, m, 0.7, 24)
        C = a.matrix @ P - P @ a.matrix
        assert np.max(np.abs(C - np.eye(24))[:23, :23]) <= 1e-12


def test_displacement_finite_unsupported(finite_spec):
    with pytest.raises(UnsupportedCase):
        co.displacement_apply(finite_spec, 0, 0.5)


def test_uncertainty_ground_state():
    u = co.uncertainty(co.coherent_state(validate("1", -1, 0), 0, 0.0))
    assert (u.var_x, u.var_p, u.bound, u.product) == pytest.approx((0.5, 0.5, 0.25, 0.25), abs=1e-15)


def test_uncertainty_equality(infinite_spec):
    for m in ms(infinite_spec):
        for z in (0.5, 1 + 1j, 2j, -1.5, 2.5 * np.exp(2j)):
            u = co.uncertainty(co.coherent_state(infinite_spec, m, z, 0.7))
            assert abs(u.product - u.bound) <= 1e-8 * u.bound
            assert abs(u.mean_x.imag) <= 1e-12 and abs(u.mean_p.imag) <= 1e-12


def test_measure_examples():
    assert co.measure_moment(validate("1", -1, 0), 0, 0) == pytest.approx(1.0, rel=1e-10)
    assert co.measure_moment(validate("1", -1, 0), 0, 3) == pytest.approx(6.0, rel=1e-10)
    assert co.measure_moment(validate("1-s2", -2, 0), 1, 2) == pytest.approx(40.0, rel=1e-10)


@pytest.mark.parametrize("key", list(BESSEL_MEASURE))
def test_bessel_measure_frozen(key):
    alpha, m, n = key
    got = co.measure_moment(validate("1-s2", alpha, 0), m, n)
    assert got == pytest.approx(BESSEL_MEASURE[key], rel=1e-10)


@pytest.mark.parametrize("key", list(BESSEL_MEASURE_HALVED))
def test_halved_order_does_not_resolve_identity(key):
    alpha, m, n = key
    spec = validate("1-s2", alpha, 0)
    got = co.measure_moment(spec, m, n, halved_order=True)
    assert got == pytest.approx(BESSEL_MEASURE_HALVED[key], rel=1e-9)
    assert abs(got - co.epsilon(spec, m, n)) > 0.4


def test_measure_moments(infinite_spec):
    for m in range(2):
        for n in range(11):
            want = co.epsilon(infinite_spec, m, n)
            assert co.measure_moment(infinite_spec, m, n) == pytest.approx(want, rel=1e-6)


def test_measure_matrix_elements(infinite_spec):
    assert abs(co.measure_matrix_element(infinite_spec, 0, 2, 5, 0.4)) <= 1e-6
    assert co.measure_matrix_element(infinite_spec, 0, 3, 3, 0.4) == pytest.approx(1.0, rel=1e-6)


def test_measure_finite_unsupported(finite_spec):
    with pytest.raises(UnsupportedCase):
        co.RadialMeasure(finite_spec, 0).family


def test_finite_overlap_exact(finite_spec):
    for m in ms(finite_spec):
        for z in ZS:
            st_ = co.coherent_state(finite_spec, m, z, 0.4)
            assert st_.tail_bound == 0 and st_.finite
            direct = float(np.vdot(st_.coeffs, st_.coeffs).real)
            assert direct == pytest.approx(co.overlap_series(finite_spec, m, z), rel=1e-14)


def test_finite_overcomplete(finite_spec):
    for m in ms(finite_spec):
        size = ld.level_count(finite_spec, m) + 1
        zs = [0.4 * (k + 1) * np.exp(0.9j * k) for k in range(size + 3)]
        assert co.overcomplete_rank(finite_spec, m, zs, 0.2) == size


def test_vector_padding():
    st_ = co.coherent_state(validate("s", -1, 2), 0, 1.0)
    assert len(st_.vector(st_.dim + 5)) == st_.dim + 5
    with pytest.raises(TruncationError):
        st_.vector(st_.dim - 1)
