import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from dunkl_riesz import errors
from dunkl_riesz.catalog import (
    RADIAL_CATALOG,
    Decay,
    _envelope,
    ball,
    combine,
    exponential,
    gaussian,
    gaussian_moment,
    make_profile,
    poly_gaussian,
)

radii = st.floats(0.0, 30.0)


@given(name=st.sampled_from(sorted(RADIAL_CATALOG)), r=radii, lam=st.floats(0.2, 5.0))
def test_envelope_bounds_profile(name, r, lam):
    F = make_profile(name).dilate(lam)
    assert abs(float(F(r))) <= float(_envelope(F.decay, np.array([r]))[0]) * (1 + 1e-12) + 1e-300


@given(name=st.sampled_from(["gaussian", "gaussian_moment", "exponential", "bump"]), r=st.floats(0.05, 4.0))
def test_analytic_derivative(name, r):
    F = make_profile(name)
    h = 1e-6
    fd = (float(F(r + h)) - float(F(r - h))) / (2 * h)
    assert float(F.derivative(r)) == pytest.approx(fd, rel=1e-6, abs=1e-8)


@pytest.mark.parametrize("dec", [Decay("gaussian", 0.7, 1.0, 2.0), Decay("exponential", 1.3, 2.0), Decay("power", 4.0)])
@pytest.mark.parametrize("R", [0.5, 2.0, 6.0])
def test_tail_bound_is_exact_for_envelope(dec, R):
    n = 1.5
    lo = max(R, 1.0) if dec.kind == "power" else R
    ref, _ = integrate.quad(lambda r: float(_envelope(dec, np.array([r]))[0]) * r**n, lo, math.inf, epsrel=1e-11, limit=200)
    assert dec.tail(R, n) == pytest.approx(ref, rel=1e-8)


def test_truncation_radius_meets_tolerance():
    dec = Decay("gaussian", 1.0)
    R = dec.radius(2.0, 1e-12)
    assert dec.tail(R, 2.0) <= 1e-12 * dec.tail(0.0, 2.0)
    assert dec.tail(R / 1.1, 2.0) > 1e-12 * dec.tail(0.0, 2.0)
    with pytest.raises(errors.TailBoundExceeded):
        Decay("power", 3.0).radius(1.0, 1e-12)


def test_dilation_and_combination():
    F = gaussian_moment().dilate(2.0)
    assert float(F(0.75)) == pytest.approx(1.5**2 * math.exp(-(1.5**2)))
    assert ball(1.0).dilate(4.0).breakpoints == (0.25,)
    G = combine([gaussian(), exponential()], [2.0, -1.0])
    assert float(G(1.0)) == pytest.approx(2 * math.exp(-1) - math.exp(-1))
    assert not G.nonnegative and not G.schwartz
    assert G.decay.kind == "exponential"
    with pytest.raises(errors.ParameterOutOfRange):
        combine([], [])


def test_poly_gaussian_parity_and_gradient():
    assert poly_gaussian([1.0, 0.0, 3.0]).parity == (1,)
    assert poly_gaussian([0.0, 2.0]).parity == (-1,)
    f = poly_gaussian([1.0, 2.0])
    assert f.parity == (0,)
    x = 0.4
    assert float(f.gradient(x)[..., 0]) == pytest.approx((2 - 2 * x * (1 + 2 * x)) * math.exp(-x * x))


def test_catalog_and_error_codes():
    with pytest.raises(errors.ParameterOutOfRange):
        make_profile("triangle")
    with pytest.raises(errors.ParameterOutOfRange):
        gaussian(-1.0)
    with pytest.raises(errors.ParameterOutOfRange):
        Decay("cubic", 1.0)
    assert issubclass(errors.AlphaOutOfRange, errors.ParameterOutOfRange)
    codes = {c.code for c in (errors.ConfigError, errors.NonPositiveScale, errors.OverlappingCells, errors.TailBoundExceeded)}
    assert codes == {"config-parse-error", "nonpositive-s", "overlapping-cells", "tail-bound-exceeded"}
