import math

import numpy as np
import pytest
from hypothesis import assume, example, given
from hypothesis import strategies as st
from scipy import integrate

from dunkl_riesz.catalog import ball, exponential, gaussian
from dunkl_riesz.errors import NegativeArgument, OverlappingCells, ParameterOutOfRange
from dunkl_riesz.measure import MultiplicitySetup, radial_integral
from dunkl_riesz.rearrangement import (
    PiecewisePower,
    WeightSpec,
    calderon_majorant,
    corollary_power_verdict,
    decreasing_rearrangement,
    distribution_function,
    hardy_condition_dual,
    hardy_condition_primal,
    rearrangement_numeric,
    sample_profile,
    theorem41_conditions,
)

setups = st.sampled_from([MultiplicitySetup(1, 0.0), MultiplicitySetup(1, 0.5), MultiplicitySetup(2, (0.5, 1.0))])


@given(
    inner=st.floats(-0.9, 2.0),
    outer=st.floats(-3.0, 1.0),
    at=st.floats(0.2, 5.0),
    a=st.floats(0.0, 4.0),
    width=st.floats(0.01, 6.0),
)
@example(inner=-0.5, outer=0.0, at=1.0, a=1e-15, width=1.0)
@example(inner=-0.75, outer=0.0, at=1.0, a=0.0, width=1.0)
def test_piecewise_integral_matches_quad(inner, outer, at, a, width):
    g = PiecewisePower.broken(inner, outer, at, 1.5)
    b = a + width
    # t = u^10 makes every integrand with exponent >= -0.9 bounded near 0
    m = 10
    pts = [at ** (1 / m)] if a < at < b else None
    ref, _ = integrate.quad(lambda u: m * u ** (m - 1) * g(u**m), a ** (1 / m), b ** (1 / m),
                            points=pts, epsabs=0, epsrel=1e-13, limit=200)
    assert float(g.integral(a, b)) == pytest.approx(ref, rel=1e-8, abs=1e-12)


def test_piecewise_divergence_and_log_case():
    assert math.isinf(PiecewisePower.power(-1.0).head(1.0))
    assert math.isinf(PiecewisePower.power(-0.5).tail(1.0))
    assert float(PiecewisePower.power(-1.0).integral(1.0, math.e)) == pytest.approx(1.0)
    assert float(PiecewisePower.power(-2.0).tail(2.0)) == pytest.approx(0.5)
    assert math.isinf(PiecewisePower.infinity().integral(0.0, 1.0))
    with pytest.raises(ParameterOutOfRange):
        PiecewisePower((0.5,), (1.0,), (0.0,))


@given(setup=setups, delta=st.floats(-1.5, -0.01), t=st.floats(1e-3, 1e3))
def test_power_weight_rearrangement_closed_form(setup, delta, t):
    N, dk = setup.hom_dim, setup.sphere
    u = WeightSpec.power(delta)
    expected = (N / dk) ** (delta / N) * t ** (delta / N)
    assert decreasing_rearrangement(setup, u, t) == pytest.approx(expected, rel=1e-13)
    # D_u(u*(t)) = t for a strictly decreasing weight
    assert distribution_function(setup, u, expected) == pytest.approx(t, rel=1e-12)


def test_increasing_weight_has_infinite_rearrangement():
    s = MultiplicitySetup(1, 0.5)
    assert math.isinf(decreasing_rearrangement(s, WeightSpec.power(1.0), 2.0))
    assert math.isinf(distribution_function(s, WeightSpec.power(1.0), 2.0))


@given(setup=setups, t=st.floats(1e-3, 50.0))
def test_profile_rearrangements(setup, t):
    N, dk = setup.hom_dim, setup.sphere
    r = (N * t / dk) ** (1.0 / N)
    assert decreasing_rearrangement(setup, gaussian(0.7), t) == pytest.approx(math.exp(-0.7 * r * r), rel=1e-12)
    assert decreasing_rearrangement(setup, exponential(), t) == pytest.approx(math.exp(-r), rel=1e-12)
    mass = dk * 2.0**N / N
    assert decreasing_rearrangement(setup, ball(2.0), t) == (1.0 if t < mass else 0.0)


def test_broken_power_rearrangement_is_continuous():
    s = MultiplicitySetup(1, 0.5)
    w = WeightSpec.broken_power(-0.5, -2.0, radius=2.0)
    g = w.rearrangement(s)
    edge = g.breaks[1]
    assert g(edge * (1 - 1e-12)) == pytest.approx(float(g(edge)), rel=1e-9)
    assert distribution_function(s, w, float(g(3.0 * edge))) == pytest.approx(3.0 * edge, rel=1e-12)


def test_numeric_rearrangement_is_equimeasurable():
    s = MultiplicitySetup(1, 0.5)
    radii = np.concatenate([[0.0], np.geomspace(1e-4, 12.0, 6001)])
    table = sample_profile(s, gaussian(), radii)
    assert table.lp_norm_p(1.0) == pytest.approx(radial_integral(s, gaussian()), rel=1e-3)
    assert table.lp_norm_p(2.0) == pytest.approx(radial_integral(s, gaussian(2.0)), rel=1e-3)
    for level in (0.1, 0.5, 0.9):
        exact = distribution_function(s, gaussian(), level)
        assert float(table.distribution(level)[0]) == pytest.approx(exact, rel=5e-3)


def test_numeric_rearrangement_validation():
    s = MultiplicitySetup(1, 0.0)
    with pytest.raises(OverlappingCells):
        rearrangement_numeric(s, [0.0, 2.0, 1.0], [1.0, 0.5])
    with pytest.raises(ParameterOutOfRange):
        rearrangement_numeric(s, [0.0, 1.0], [1.0, 0.5])
    with pytest.raises(NegativeArgument):
        decreasing_rearrangement(s, gaussian(), -1.0)
    with pytest.raises(NegativeArgument):
        distribution_function(s, gaussian(), -1.0)


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_classical_hardy_weights(p):
    # mu = s^-p, theta = 1: the product is constant (p - 1)^(-1/p)
    rep = hardy_condition_primal(PiecewisePower.power(-p), PiecewisePower.power(0.0), p, p)
    assert rep.verdict == "finite"
    assert rep.conditions[0].grid_sup == pytest.approx((p - 1.0) ** (-1.0 / p), rel=1e-12)
    bad = hardy_condition_primal(PiecewisePower.power(-p + 0.2), PiecewisePower.power(0.0), p, p)
    assert bad.verdict == "diverging"


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_dual_hardy_weights(p):
    pc = p / (p - 1.0)
    rep = hardy_condition_dual(PiecewisePower.power(0.0), PiecewisePower.power(p), p, p)
    assert rep.verdict == "finite"
    assert rep.conditions[0].grid_sup == pytest.approx((pc - 1.0) ** (-1.0 / pc), rel=1e-12)
    assert hardy_condition_dual(PiecewisePower.power(0.3), PiecewisePower.power(p), p, p).verdict == "diverging"


def test_hardy_rejects_bad_exponents():
    with pytest.raises(ParameterOutOfRange):
        hardy_condition_primal(PiecewisePower.power(-2.0), PiecewisePower.power(0.0), 3.0, 2.0)


@given(p=st.floats(1.1, 4.0), alpha=st.floats(0.1, 1.9), beta=st.floats(-0.5, 4.0), shift=st.sampled_from([0.0, 0.0, 0.3, -0.2]))
def test_power_weight_conditions_match_closed_form(p, alpha, beta, shift):
    s = MultiplicitySetup(1, 0.5)
    N = s.hom_dim
    assume(p < N / alpha - 1e-3)
    delta = beta - alpha * p + shift
    assume(-N + 1e-3 < delta)
    assume(abs(delta) > 1e-3 and abs(beta) > 1e-3 and abs(beta - N * (p - 1.0)) > 1e-3)
    rep = theorem41_conditions(s, WeightSpec.power(delta), WeightSpec.power(beta), p, p, p, alpha)
    assert (rep.verdict == "finite") == corollary_power_verdict(s, p, alpha, beta, delta)


def test_two_weight_condition_validation():
    s = MultiplicitySetup(1, 0.5)
    with pytest.raises(ParameterOutOfRange):
        theorem41_conditions(s, WeightSpec.power(-0.5), WeightSpec.power(1.0), 3.0, 3.0, 5.0, 0.5)
    with pytest.raises(ParameterOutOfRange):
        theorem41_conditions(s, WeightSpec.power(-2.5), WeightSpec.power(1.0), 3.0, 3.0, 3.0, 0.5)


def test_calderon_majorant_of_unit_indicator():
    s = MultiplicitySetup(1, 0.5)
    alpha, r = 0.5, 2.0
    N = s.hom_dim
    table = rearrangement_numeric(s, [0.0, (N / s.sphere) ** (1.0 / N)], [1.0])
    assert table.total_mass == pytest.approx(1.0)
    inv_q1, inv_q2 = 1.0 - alpha / N, 1.0 / r - alpha / N
    t = np.array([0.25, 0.5, 2.0, 10.0])
    expected = np.where(t < 1.0, t ** (1.0 - inv_q1) + t ** (-inv_q2) * r * (1.0 - np.minimum(t, 1.0) ** (1.0 / r)), t ** (-inv_q1))
    np.testing.assert_allclose(calderon_majorant(table, t, alpha, r, s), expected, rtol=1e-12)
    with pytest.raises(ParameterOutOfRange):
        calderon_majorant(table, t, alpha, 5.0, s)
