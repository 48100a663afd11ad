from __future__ import annotations

import math

import mpmath
import pytest
import scipy.special as sps
from hypothesis import example, given, settings, strategies as st

from hypertype.special import SeriesOverflow, X_MAX, bessel, bessel_i, bessel_k, hyp0f1
from hypertype.verify import bessel_oracle

from frozen import BESSEL_K


def test_i0_at_zero():
    assert bessel_i(0, 0.0) == 1.0
    assert bessel_i(1.5, 0.0) == 0.0


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_half_order_closed_form(x):
    ref = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
    assert bessel_k(0.5, x) == pytest.approx(ref, rel=1e-15)
    assert bessel_oracle(0.5, x) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("key", list(BESSEL_K))
def test_k_frozen(key):
    nu, x = key
    assert bessel_k(nu, x) == pytest.approx(BESSEL_K[key], rel=1e-14)


@pytest.mark.parametrize("nu", [-4.0, -3.0, -2.0, -1.5, 0.0, 0.3, 1.0, 2.0 + 1e-7])
@pytest.mark.parametrize("x", [0.01, 0.7, 3.0, 15.0, 60.0])
def test_k_against_integral_oracle(nu, x):
    assert bessel_k(nu, x) == pytest.approx(bessel_oracle(nu, x), rel=1e-9)


def test_argument_range():
    with pytest.raises(SeriesOverflow):
        bessel(1.0, X_MAX * 1.01)
    with pytest.raises(ValueError):
        bessel(1.0, 0.0)


def test_hyp0f1_bessel_relation():
    for nu in (0.5, 1.0, 2.0, 3.5):
        for x in (0.5, 2.0, 6.0):
            lhs = hyp0f1(nu + 1, x * x / 4)
            rhs = math.gamma(nu + 1) * (x / 2) ** -nu * bessel_i(nu, x)
            assert lhs == pytest.approx(rhs, rel=1e-13)


@settings(max_examples=80, deadline=None)
@given(nu=st.floats(-6, 6), x=st.floats(0.05, 120))
@example(nu=2.2250738585e-313, x=1.0)
def test_bessel_property(nu, x):
    i, k = bessel(nu, x)
    assert k > 0
    assert k == pytest.approx(bessel(-nu, x)[1], rel=1e-14)
    # mpmath reference; scipy.kv returns nan for subnormal orders
    with mpmath.workdps(30):
        assert k == pytest.approx(float(mpmath.besselk(nu, x)), rel=1e-11)
        if nu >= 0:
            assert i == pytest.approx(float(mpmath.besseli(nu, x)), rel=1e-11)


@settings(max_examples=60, deadline=None)
@given(nu=st.floats(0, 5), x=st.floats(0.1, 40))
def test_wronskian_property(nu, x):
    # I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x
    i0, k0 = bessel(nu, x)
    i1, k1 = bessel(nu + 1, x)
    assert (i0 * k1 + i1 * k0) * x == pytest.approx(1.0, rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(c=st.floats(0.1, 20), x=st.floats(0, 60))
def test_hyp0f1_property(c, x):
    assert hyp0f1(c, x) == pytest.approx(float(sps.hyp0f1(c, x)), rel=1e-12)
