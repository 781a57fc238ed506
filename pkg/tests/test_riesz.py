import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunkl_riesz.catalog import ball, exponential, gaussian
from dunkl_riesz.errors import AlphaOutOfRange, ParameterOutOfRange
from dunkl_riesz.measure import MultiplicitySetup
from dunkl_riesz.riesz import (
    RieszParams,
    classical_riesz_1d,
    decay_fit,
    fractional_maximal,
    maximal_constant,
    psi_probe,
    riesz_multiplier_radial,
    riesz_subordination,
    two_weight_ratio,
)

# I_alpha exp(-|.|^2) on the line, from a 40-digit evaluation of the multiplier integral
FROZEN = [
    (0.5, 0.5, 0.0, 0.866500460092384981444721993055),
    (0.5, 0.5, 1.0, 0.431104777042796123895956583525),
    (0.5, 1.0, 3.0, 0.172103742510822351544080209918),
    (0.0, 0.5, 1.0, 0.951714502332176651735261152306),
    (1.0, 1.5, 2.0, 0.132132711894822442579839577515),
]


@pytest.mark.parametrize("k, alpha, x, expected", FROZEN)
def test_multiplier_route_frozen(k, alpha, x, expected):
    s = MultiplicitySetup(1, k)
    assert riesz_multiplier_radial(s, gaussian(), RieszParams(alpha, s), x) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("k, alpha, x, expected", FROZEN[:2] + FROZEN[4:])
def test_subordination_route_frozen(k, alpha, x, expected):
    s = MultiplicitySetup(1, k)
    assert riesz_subordination(s, gaussian(), RieszParams(alpha, s), x) == pytest.approx(expected, rel=1e-7)


def test_multiplier_route_without_closed_form():
    s = MultiplicitySetup(1, 0.5)
    p = RieszParams(0.5, s)
    a = riesz_multiplier_radial(s, gaussian(), p, 1.0, closed_form=False)
    assert a == pytest.approx(0.431104777042796123895956583525, rel=1e-8)


def test_classical_convolution_oracle():
    s = MultiplicitySetup(1, 0.0)
    p = RieszParams(0.5, s)
    c = classical_riesz_1d(lambda y: math.exp(-y * y), 0.5, 1.0)
    assert c == pytest.approx(0.951714502332176651735261152306, rel=1e-9)
    assert riesz_multiplier_radial(s, exponential(), p, 0.5) == pytest.approx(
        classical_riesz_1d(lambda y: math.exp(-abs(y)), 0.5, 0.5), rel=1e-7
    )


def test_routes_agree_in_two_dimensions_against_radial_scaling():
    # I_alpha of a dilate: I_alpha[f(lam .)](x) = lam^-alpha (I_alpha f)(lam x)
    s = MultiplicitySetup(2, (0.5, 0.25))
    p = RieszParams(1.2, s)
    F = gaussian()
    lam, x = 1.7, np.array([0.4, 1.1])
    lhs = riesz_multiplier_radial(s, F.dilate(lam), p, x)
    rhs = lam**-1.2 * riesz_multiplier_radial(s, F, p, lam * x)
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-10)


def test_params_validation_and_constants():
    s = MultiplicitySetup(1, 0.5)
    with pytest.raises(AlphaOutOfRange):
        RieszParams(2.0, s)
    with pytest.raises(AlphaOutOfRange):
        RieszParams(0.0, s)
    p = RieszParams(0.5, s)
    assert p.decay_exponent == pytest.approx(-1.5)
    # the two constants differ by c_k Gamma(gamma + (d - alpha)/2)
    assert p.prefactor / p.normalization == pytest.approx(s.mehta / math.gamma(p.a))
    with pytest.raises(ParameterOutOfRange):
        riesz_multiplier_radial(MultiplicitySetup(1, 1.0), gaussian(), p, 1.0)


@given(k=st.floats(0.0, 3.0), d=st.integers(1, 3))
def test_maximal_constant_at_zero_is_ball_mass(k, d):
    s = MultiplicitySetup(d, k)
    assert maximal_constant(s, 0.0) == pytest.approx(s.ball_mass, rel=1e-12)


@pytest.mark.parametrize("k", [0.0, 0.5, 1.5])
def test_hardy_littlewood_average_of_ball_at_centre(k):
    s = MultiplicitySetup(1, k)
    m = fractional_maximal(s, ball(1.0), 0.0, 0.0, radii=np.linspace(0.1, 3.0, 30))
    assert m.value == pytest.approx(1.0, rel=1e-10)
    assert m.at_boundary


def test_fractional_maximal_rejects_bad_alpha():
    with pytest.raises(AlphaOutOfRange):
        fractional_maximal(MultiplicitySetup(1, 0.5), gaussian(), 2.0, 0.0)


def test_decay_slope_of_gaussian_potential():
    s = MultiplicitySetup(1, 0.5)
    rep = decay_fit(s, gaussian(), RieszParams(0.5, s), radii=np.geomspace(20.0, 200.0, 4))
    assert rep.slope == pytest.approx(-1.5, abs=0.02)


def test_psi_probe_is_stable():
    s = MultiplicitySetup(1, 0.5)
    rep = psi_probe(s, gaussian(), RieszParams(0.5, s), [0.0, 2.0])
    assert np.all(rep.values > 0)
    assert rep.stability < 1e-6


@pytest.fixture(scope="module")
def weighted_setup():
    s = MultiplicitySetup(1, 0.5)
    return s, RieszParams(0.5, s), (lambda r: r**-0.5), (lambda r: r**1.0)


def test_two_weight_ratio_dilation_invariant(weighted_setup):
    # beta = delta + alpha p makes the ratio exactly invariant under dilation
    s, p, u, v = weighted_setup
    a = two_weight_ratio(s, gaussian(), p, u, v, 3.0, 3.0)
    b = two_weight_ratio(s, gaussian().dilate(2.5), p, u, v, 3.0, 3.0)
    assert a == pytest.approx(b, rel=1e-6)


def test_two_weight_ratio_scales_with_v(weighted_setup):
    s, p, u, v = weighted_setup
    a = two_weight_ratio(s, gaussian(), p, u, v, 3.0, 3.0)
    b = two_weight_ratio(s, gaussian(), p, u, lambda r: 16.0 * v(r), 3.0, 3.0)
    assert b == pytest.approx(a * 16.0 ** (-1.0 / 3.0), rel=1e-12)
