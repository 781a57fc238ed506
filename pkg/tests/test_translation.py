import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunkl_riesz.catalog import ball, bump, exponential, gaussian
from dunkl_riesz.errors import NonPositiveScale, ParameterOutOfRange
from dunkl_riesz.measure import MultiplicitySetup
from dunkl_riesz.translation import (
    density_constant,
    density_rule,
    translate_ball_1d,
    translate_gaussian,
    translate_radial_1d,
    translation_mass_check,
)

pos_k = st.floats(0.05, 3.0)
coord = st.floats(-4.0, 4.0)


@pytest.mark.parametrize(
    "k, x, y, expected",
    [
        (0.7, 1.0, 0.5, 0.431710443113411309088893779976),
        (0.7, 2.0, -1.5, 0.0674943246057313361335802855332),
        (1.5, 3.0, 3.0, 0.0591992104831227333492748358249),
    ],
)
def test_translated_exponential_frozen(k, x, y, expected):
    assert translate_radial_1d(k, exponential(), x, y) == pytest.approx(expected, rel=1e-11)


@given(k=st.floats(0.1, 3.0), focus=st.floats(1e-4, 1.0))
def test_density_rule_is_normalized(k, focus):
    t, w = density_rule(k, focus=focus)
    assert np.all((t >= -1) & (t <= 1))
    assert w.sum() == pytest.approx(1.0, abs=1e-13)
    # first moment of (1+t)(1-t^2)^(k-1) c_B is 1/(2k+1)
    assert np.dot(w, t) == pytest.approx(1.0 / (2 * k + 1), abs=1e-13)


def test_density_constant_rejects_zero():
    with pytest.raises(ParameterOutOfRange):
        density_constant(0.0)


@given(k=pos_k, x=coord, y=coord, s=st.floats(0.2, 3.0))
def test_gaussian_identity_matches_quadrature(k, x, y, s):
    exact = float(translate_gaussian(MultiplicitySetup(1, k), s, x, y))
    num = translate_radial_1d(k, gaussian(s), x, y)
    assert num == pytest.approx(exact, rel=1e-10, abs=1e-14)


@given(k=pos_k, x=coord, y=coord)
def test_translation_symmetry(k, x, y):
    F = exponential()
    a = translate_radial_1d(k, F, x, y)
    assert a == pytest.approx(translate_radial_1d(k, F, y, x), rel=1e-11, abs=1e-15)
    assert a == pytest.approx(translate_radial_1d(k, F, -x, -y), rel=1e-11, abs=1e-15)


def test_translation_at_origin_and_classical():
    F = gaussian()
    assert translate_radial_1d(0.8, F, 1.7, 0.0) == pytest.approx(math.exp(-1.7**2))
    assert translate_radial_1d(0.8, F, 0.0, -2.0) == pytest.approx(math.exp(-4.0))
    np.testing.assert_allclose(translate_radial_1d(0.0, F, 1.0, np.array([0.0, 2.5])), np.exp(-np.array([1.0, 1.5**2])))


@given(k=pos_k, x=coord, y=coord, R=st.floats(0.2, 3.0))
def test_ball_translation_is_probability(k, x, y, R):
    v = float(translate_ball_1d(k, R, x, y))
    assert -1e-15 <= v <= 1.0 + 1e-15
    # the translation measure lives on ||x| - |y|| <= A <= |x| + |y|
    if abs(x) + abs(y) < R:
        assert v == pytest.approx(1.0)
    if abs(abs(x) - abs(y)) > R:
        assert v == pytest.approx(0.0, abs=1e-15)


def test_dilated_ball_uses_exact_branch():
    F = ball(1.0).dilate(0.5)
    assert translate_radial_1d(0.6, F, 1.0, 1.5) == pytest.approx(float(translate_ball_1d(0.6, 2.0, 1.0, 1.5)))


def test_gaussian_translation_in_two_dimensions():
    s = MultiplicitySetup(2, (0.5, 1.0))
    x, y = np.array([0.3, -1.0]), np.array([1.2, 0.4])
    v = translate_gaussian(s, 0.5, x, y)
    expected = np.prod([translate_gaussian(MultiplicitySetup(1, kj), 0.5, xj, yj) for kj, xj, yj in zip(s.k, x, y)])
    assert float(v) == pytest.approx(float(expected), rel=1e-14)
    with pytest.raises(NonPositiveScale):
        translate_gaussian(s, -1.0, x, y)


@pytest.mark.parametrize("k", [0.3, 1.0])
@pytest.mark.parametrize("F", [gaussian(), exponential(), ball(1.0), bump()], ids=lambda F: F.name)
@pytest.mark.parametrize("x", [0.5, 3.0])
def test_translation_preserves_mass(k, F, x):
    lhs, rhs = translation_mass_check(MultiplicitySetup(1, k), F, x)
    assert lhs == pytest.approx(rhs, rel=1e-9)
