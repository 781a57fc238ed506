import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunkl_riesz.catalog import Decay, from_profile_1d, gaussian, poly_gaussian, tensor
from dunkl_riesz.errors import ParameterOutOfRange
from dunkl_riesz.kernel import dunkl_transform_1d
from dunkl_riesz.measure import MultiplicitySetup
from dunkl_riesz.rearrangement import WeightSpec
from dunkl_riesz.sobolev import (
    dunkl_derivative_spec,
    dunkl_gradient_norm,
    dunkl_operator,
    riesz_transform_multiplier_1d,
    sobolev_delta,
    sobolev_power_verdict,
    sobolev_ratio,
    sobolev_scaling_exponent,
    sobolev_sweep,
    theorem42_conditions,
    transform_l2_norm,
)


@given(k=st.floats(0.0, 3.0), x=st.floats(-4.0, 4.0))
def test_operator_on_odd_and_even_gaussians(k, x):
    s = MultiplicitySetup(1, k)
    odd = poly_gaussian([0.0, 1.0])
    even = poly_gaussian([1.0])
    g = math.exp(-x * x)
    assert float(dunkl_operator(s, odd, 0, x)) == pytest.approx((1 - 2 * x * x) * g + 2 * k * g, rel=1e-12, abs=1e-14)
    # reflection-invariant functions see only the gradient
    assert float(dunkl_operator(s, even, 0, x)) == pytest.approx(-2 * x * g, rel=1e-12, abs=1e-14)


def test_operator_on_the_hyperplane():
    s = MultiplicitySetup(1, 0.75)
    f = poly_gaussian([0.0, 1.0])
    assert float(dunkl_operator(s, f, 0, 0.0)) == pytest.approx(2.5)
    with pytest.raises(ParameterOutOfRange):
        dunkl_operator(s, f, 1, 0.0)


def test_operator_in_two_dimensions():
    s = MultiplicitySetup(2, (0.5, 1.0))
    f = tensor([poly_gaussian([0.0, 1.0]), poly_gaussian([1.0, 0.0, 1.0])])
    x = np.array([0.7, -0.4])
    a, b = x
    ga, gb = math.exp(-a * a), math.exp(-b * b)
    t1 = ((1 - 2 * a * a) * ga + 2 * 0.5 * ga) * (1 + b * b) * gb
    t2 = a * ga * (2 * b - 2 * b * (1 + b * b)) * gb
    assert float(dunkl_operator(s, f, 0, x)) == pytest.approx(t1, rel=1e-13)
    assert float(dunkl_operator(s, f, 1, x)) == pytest.approx(t2, rel=1e-13)
    assert float(dunkl_gradient_norm(s, f, x)) == pytest.approx(math.hypot(t1, t2), rel=1e-13)


@pytest.mark.parametrize("k", [0.0, 0.5, 1.5])
def test_transform_intertwines_operator(k):
    s = MultiplicitySetup(1, k)
    f = poly_gaussian([1.0, 2.0, 0.0, 1.0])
    xi = np.array([-3.0, -0.5, 0.8, 2.0, 5.0])
    lhs = dunkl_transform_1d(dunkl_derivative_spec(s, f), xi, s)
    rhs = 1j * xi * dunkl_transform_1d(f, xi, s)
    np.testing.assert_allclose(lhs, rhs, atol=1e-11)


def test_riesz_transform_multiplier_properties():
    s = MultiplicitySetup(1, 0.5)
    f = poly_gaussian([1.0, 2.0, 0.0, 1.0])
    xi = np.linspace(-6.0, 6.0, 25)
    v = dunkl_transform_1d(f, xi, s)
    twice = riesz_transform_multiplier_1d(riesz_transform_multiplier_1d(v, xi), xi)
    np.testing.assert_allclose(twice[xi != 0], -v[xi != 0], rtol=1e-15)
    assert riesz_transform_multiplier_1d(np.array([2.0]), np.array([0.0]))[0] == 0
    dec = Decay("gaussian", 0.25, 3.0, 10.0)
    plain = transform_l2_norm(s, lambda t: dunkl_transform_1d(f, t, s), dec)
    rotated = transform_l2_norm(s, lambda t: riesz_transform_multiplier_1d(lambda u: dunkl_transform_1d(f, u, s), t), dec)
    assert rotated == pytest.approx(plain, rel=1e-12)


@pytest.mark.parametrize(
    "p, q, delta, expected",
    [(1.5, 3.0, -1.0, 0.855430118279827596181478514329161), (1.5, 6.0, 0.0, 0.629730254576804543584055563205322)],
)
def test_sobolev_ratio_frozen(p, q, delta, expected):
    s = MultiplicitySetup(1, 0.5)
    assert sobolev_delta(s, p, q) == pytest.approx(delta, abs=1e-14)
    assert sobolev_ratio(s, gaussian(), p, q, delta) == pytest.approx(expected, rel=1e-10)
    # the same quantity through the non-radial one-dimensional path
    assert sobolev_ratio(s, from_profile_1d(gaussian()), p, q, delta) == pytest.approx(expected, rel=1e-10)


@given(
    k=st.floats(0.0, 2.0),
    p=st.floats(1.1, 3.0),
    dq=st.floats(0.0, 3.0),
    delta=st.floats(-0.9, 2.0),
    lam=st.floats(0.3, 3.0),
)
def test_sobolev_ratio_dilation_covariance(k, p, dq, delta, lam):
    s = MultiplicitySetup(1, k)
    q = p + dq
    e = sobolev_scaling_exponent(s, p, q, delta)
    a = sobolev_ratio(s, gaussian(), p, q, delta)
    b = sobolev_ratio(s, gaussian().dilate(lam), p, q, delta)
    assert b == pytest.approx(lam**e * a, rel=1e-10)


def test_sweep_is_flat_only_at_the_critical_exponent():
    s = MultiplicitySetup(1, 0.5)
    delta = sobolev_delta(s, 1.5, 3.0)
    on = sobolev_sweep(s, gaussian(), 1.5, 3.0, delta)
    off = sobolev_sweep(s, gaussian(), 1.5, 3.0, delta + 0.5)
    assert on.spread < 1e-12
    assert off.fitted_exponent == pytest.approx(off.expected_exponent, abs=1e-10)
    assert off.spread > 0.1


@pytest.mark.parametrize("p, q, r", [(1.2, 1.5, 1.6), (1.2, 3.0, 1.5), (1.5, 6.0, 1.8), (1.4, 4.0, 1.9)])
@pytest.mark.parametrize("shift", [0.0, 0.4, -0.3])
def test_weight_conditions_match_exponent_algebra(p, q, r, shift):
    s = MultiplicitySetup(1, 0.5)
    delta = sobolev_delta(s, p, q) + shift
    delta = 0.0 if abs(delta) < 1e-12 else delta
    u = WeightSpec.constant() if delta == 0.0 else WeightSpec.power(delta)
    rep = theorem42_conditions(s, u, p, q, r)
    assert (rep.verdict == "finite") == sobolev_power_verdict(s, p, q, r, delta)


def test_sobolev_validation():
    s = MultiplicitySetup(1, 0.5)
    with pytest.raises(ParameterOutOfRange):
        sobolev_ratio(s, gaussian(), 3.0, 2.0, 0.0)
    with pytest.raises(ParameterOutOfRange):
        sobolev_ratio(s, gaussian(), 1.5, 3.0, -2.0)
    with pytest.raises(ParameterOutOfRange):
        theorem42_conditions(s, WeightSpec.power(-1.0), 1.5, 3.0, 2.5)
    with pytest.raises(ParameterOutOfRange):
        theorem42_conditions(s, WeightSpec.power(-1.0), 1.8, 3.0, 1.6)
