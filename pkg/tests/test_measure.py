import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import example, given
from hypothesis import strategies as st
from scipy import integrate

from dunkl_riesz.catalog import ball, exponential, gaussian
from dunkl_riesz.errors import NonPositiveScale, ParameterOutOfRange
from dunkl_riesz.measure import MultiplicitySetup, gaussian_mass, radial_integral, weight

ks = st.floats(0.0, 3.0)


def test_mehta_constant_values():
    assert MultiplicitySetup(1, 0.5).mehta == pytest.approx(0.5, rel=1e-15)
    assert MultiplicitySetup(1, 1.0).mehta == pytest.approx(0.398942280401432677939946059934, rel=1e-14)
    assert MultiplicitySetup(3, 0.0).mehta == pytest.approx((2 * math.pi) ** -1.5, rel=1e-14)


@pytest.mark.parametrize("d, area", [(1, 2.0), (2, 2 * math.pi), (3, 4 * math.pi)])
def test_classical_sphere_area(d, area):
    s = MultiplicitySetup(d, 0.0)
    assert s.sphere == pytest.approx(area, rel=1e-14)
    assert s.hom_dim == d


def test_setup_validation():
    with pytest.raises(ParameterOutOfRange):
        MultiplicitySetup(0, 0.0)
    with pytest.raises(ParameterOutOfRange):
        MultiplicitySetup(2, (0.5,))
    with pytest.raises(ParameterOutOfRange):
        MultiplicitySetup(1, -0.1)
    assert MultiplicitySetup(2, 0.5) == MultiplicitySetup(2, (0.5, 0.5))
    assert len({MultiplicitySetup(1, 1.0), MultiplicitySetup(1, 1.0)}) == 1


def test_weight_is_product_of_powers():
    s = MultiplicitySetup(2, (0.5, 1.5))
    x = np.array([[2.0, -3.0], [0.0, 1.0]])
    np.testing.assert_allclose(weight(s, x), [2.0 * 3.0**3, 0.0])
    with pytest.raises(ParameterOutOfRange):
        weight(s, np.ones(3))


@given(k=ks, s=st.floats(0.05, 20.0))
@example(k=0.5035461805696783, s=11.5078125)
def test_gaussian_mass_matches_direct_integral(k, s):
    setup = MultiplicitySetup(1, k)
    # finite support keeps quad from missing a narrow peak; the tail beyond is below e^-144
    direct, _ = integrate.quad(lambda y: 2 * math.exp(-s * y * y) * y ** (2 * k), 0, 12 / math.sqrt(s),
                               epsabs=0, epsrel=1e-13, limit=200)
    assert gaussian_mass(setup, s) == pytest.approx(direct, rel=1e-9)


def test_gaussian_mass_rejects_bad_scale():
    with pytest.raises(NonPositiveScale):
        gaussian_mass(MultiplicitySetup(1, 0.5), 0.0)


@pytest.mark.parametrize("k", [(0.0, 0.0), (0.5, 1.0), (1.5, 0.25, 0.0)])
def test_radial_integral_of_gaussian(k):
    setup = MultiplicitySetup(len(k), k)
    assert radial_integral(setup, gaussian(0.7)) == pytest.approx(gaussian_mass(setup, 0.7), rel=1e-12)


def test_ball_and_exponential_masses():
    setup = MultiplicitySetup(2, (0.5, 0.25))
    N = setup.hom_dim
    assert radial_integral(setup, ball(2.0)) == pytest.approx(setup.ball_mass * 2.0**N, rel=1e-12)
    # d_k Gamma(N) / a^N
    assert radial_integral(setup, exponential(1.5)) == pytest.approx(setup.sphere * math.gamma(N) / 1.5**N, rel=1e-11)


@given(k=ks)
def test_ball_mass_by_quadrature(k):
    setup = MultiplicitySetup(1, k)
    direct = float(2 * mp.quad(lambda y: y ** (2 * mp.mpf(k)), [0, 1]))
    assert setup.ball_mass == pytest.approx(direct, rel=1e-12)
