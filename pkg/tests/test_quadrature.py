import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special as sp

from dunkl_riesz.errors import ParameterOutOfRange
from dunkl_riesz.quadrature import (
    QuadratureSpec,
    bessel_zero_estimate,
    breakpoint_rule,
    composite,
    gauss_jacobi,
    graded_rule,
    power_composite,
    semi_infinite,
    uniform_edges,
    wynn_epsilon,
)


@given(st.floats(-0.9, 3.0), st.floats(-0.9, 3.0), st.integers(0, 10))
def test_gauss_jacobi_exact_for_polynomials(a, b, m):
    x, w = gauss_jacobi(8, a, b)
    # x = 2u - 1 turns the moment into a finite sum of Beta functions
    exact = mp.mpf(2) ** (a + b + 1) * mp.fsum(
        mp.binomial(m, j) * mp.mpf(2) ** j * (-1) ** (m - j) * mp.beta(b + j + 1, a + 1) for j in range(m + 1)
    )
    assert np.sum(w * x**m) == pytest.approx(float(exact), rel=1e-11, abs=1e-12)


def test_composite_integrates_smooth_function():
    t, w = composite(np.linspace(0.0, math.pi, 5), 12)
    assert np.sum(w * np.sin(t)) == pytest.approx(2.0, rel=1e-14)


@given(st.floats(-0.95, 2.5))
def test_power_composite_handles_endpoint_power(power):
    t, w = power_composite(uniform_edges(0.0, 2.0, 0.5), 16, power)
    exact = 2.0 ** (power + 1.0) / (power + 1.0)
    assert np.sum(w) == pytest.approx(exact, rel=1e-12)


def test_power_composite_right_end():
    t, w = power_composite([0.0, 0.5, 1.0], 16, -0.5, at="right")
    assert np.sum(w) == pytest.approx(2.0, rel=1e-12)


def test_graded_rule_resolves_endpoint_singularity():
    t, w = graded_rule(0.0, 1.0, 16, 0.0, 0.5, 1e-12, "left")
    assert np.sum(w * np.sqrt(t)) == pytest.approx(2.0 / 3.0, rel=1e-10)
    assert np.sum(w * np.log(t)) == pytest.approx(-1.0, rel=1e-9)


def test_breakpoint_rule_resolves_kinks():
    t, w = breakpoint_rule(0.0, 2.0, [0.7], 0.5, 16)
    assert np.sum(w * np.sqrt(np.abs(t - 0.7))) == pytest.approx(2.0 / 3.0 * (0.7**1.5 + 1.3**1.5), rel=1e-9)


def test_semi_infinite_power_tail():
    t, w = semi_infinite(1.0, 16, 3.5)
    assert np.sum(w * t**-3.5) == pytest.approx(1.0 / 2.5, rel=1e-10)


def test_wynn_accelerates_alternating_series():
    partial = np.cumsum([(-1.0) ** n / (n + 1.0) for n in range(20)])
    assert wynn_epsilon(partial) == pytest.approx(math.log(2.0), abs=1e-12)


def test_bessel_zero_estimate_is_close():
    # J_{1/2} zeros are exactly m pi; J_0 zeros from scipy
    zeros = np.array([m * math.pi for m in range(5, 30)])
    assert np.max(np.abs(bessel_zero_estimate(0.5, np.arange(5, 30)) - zeros)) < 1e-6
    assert np.max(np.abs(bessel_zero_estimate(0.0, np.arange(5, 30)) - sp.jn_zeros(0, 29)[4:])) < 1e-3


def test_refined_spec_does_more_work():
    q = QuadratureSpec()
    r = q.refined()
    assert r.nodes > q.nodes and r.panel_width < q.panel_width


@pytest.mark.parametrize("kwargs", [{"nodes": 1}, {"grading": 1.0}, {"panel_width": 0.0}])
def test_spec_validation(kwargs):
    with pytest.raises(ParameterOutOfRange):
        QuadratureSpec(**kwargs)
