"""Dunkl operators, the one-dimensional Riesz transform multiplier and weighted Sobolev checks.

On Z_2^d the Dunkl operators are

    T_j f(x) = d_j f(x) + k_j (f(x) - f(sigma_j x)) / x_j,

with sigma_j the reflection x_j -> -x_j; on the hyperplane x_j = 0 the
difference quotient tends to 2 d_j f, so T_j f = (1 + 2 k_j) d_j f there.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .catalog import Decay, FunctionSpec, RadialProfile, _as_points
from .errors import ParameterOutOfRange
from .measure import MultiplicitySetup, radial_integral
from .quadrature import DEFAULT_QUAD, QuadratureSpec, power_composite, uniform_edges
from .rearrangement import InequalityReport, WeightSpec, evaluate_condition

Array = np.ndarray


def dunkl_operator(setup: MultiplicitySetup, f: FunctionSpec, j: int, x) -> Array:
    """T_j f at points of shape (..., d)."""
    if not 0 <= j < setup.d:
        raise ParameterOutOfRange(f"coordinate index {j} out of range for d = {setup.d}")
    x = _as_points(x, setup.d)
    grad = f.gradient(x)[..., j]
    kj = setup.k[j]
    if kj == 0.0:
        return grad
    xj = x[..., j]
    flipped = x.copy()
    flipped[..., j] = -xj
    on_plane = xj == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        quotient = (f.func(x) - f.func(flipped)) / np.where(on_plane, 1.0, xj)
    return np.where(on_plane, (1.0 + 2.0 * kj) * grad, grad + kj * quotient)


def dunkl_gradient_norm(setup: MultiplicitySetup, f: FunctionSpec, x) -> Array:
    """|grad_k f| = (sum_j |T_j f|^2)^(1/2)."""
    x = _as_points(x, setup.d)
    total = np.zeros(x.shape[:-1])
    for j in range(setup.d):
        total = total + dunkl_operator(setup, f, j, x) ** 2
    return np.sqrt(total)


def dunkl_derivative_spec(setup: MultiplicitySetup, f: FunctionSpec, j: int = 0) -> FunctionSpec:
    """T_j f as a function (no gradient); parity in x_j flips."""
    parity = list(f.parity) if f.parity else [0] * f.d
    parity[j] = -parity[j]
    dec = f.decay
    return FunctionSpec(
        name=f"T{j + 1}[{f.name}]",
        d=f.d,
        func=lambda x: dunkl_operator(setup, f, j, x),
        decay=Decay(dec.kind, dec.rate, dec.power + 1.0, dec.coef * (1.0 + 2.0 * setup.k[j]) * (2.0 * dec.rate + 1.0)),
        parity=tuple(parity),
    )


def riesz_transform_multiplier_1d(values, xi) -> Array:
    """-i sign(xi) times the transform values (0 at xi = 0 by convention).

    ``values`` is either an array of transform values at ``xi`` or a
    callable evaluating the transform.
    """
    xi = np.asarray(xi, dtype=float)
    v = values(xi) if callable(values) else np.asarray(values)
    return -1j * np.sign(xi) * v


def riesz_transform_profile(transform: Callable[[Array], Array]) -> Callable[[Array], Array]:
    """xi -> F_k(R_1 f)(xi) given xi -> F_k f(xi)."""
    return lambda xi: riesz_transform_multiplier_1d(transform, xi)


def transform_l2_norm(
    setup: MultiplicitySetup, profile: Callable[[Array], Array], decay: Decay, quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """(int |G(xi)|^2 |xi|^{2k} d xi)^(1/2) over the line for a (complex) transform profile G."""
    if setup.d != 1:
        raise ParameterOutOfRange("one-dimensional norm")
    k = setup.k[0]
    R = quad.radius if quad.radius is not None else decay.radius(2.0 * k, quad.tolerance, p=2.0)
    t, w = power_composite(uniform_edges(0.0, R, quad.panel_width * decay.length), quad.nodes, 2.0 * k)
    vals = np.abs(profile(t)) ** 2 + np.abs(profile(-t)) ** 2
    return math.sqrt(float(np.sum(w * vals)))


def function_norm_1d(
    setup: MultiplicitySetup,
    f: Callable[[Array], Array],
    decay: Decay,
    p: float = 2.0,
    weight_exponent: float = 0.0,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """(int |f(x)|^p |x|^{2k + weight_exponent} dx)^(1/p) on the line; ``f`` takes 1-d arrays."""
    k = setup.k[0]
    expo = 2.0 * k + weight_exponent
    R = quad.radius if quad.radius is not None else decay.radius(expo, quad.tolerance, p=p)
    # |f|^p is only finitely smooth at zeros of f, so halve the panels until the sum settles
    prev = None
    for m in range(quad.max_doublings + 1):
        t, w = power_composite(uniform_edges(0.0, R, quad.panel_width * decay.length / 2.0**m), quad.nodes, expo)
        cur = float(np.sum(w * (np.abs(f(t)) ** p + np.abs(f(-t)) ** p)))
        if prev is not None and abs(cur - prev) <= quad.tolerance * max(abs(cur), 1e-300):
            break
        prev = cur
    return cur ** (1.0 / p)


def sobolev_ratio(
    setup: MultiplicitySetup,
    f: RadialProfile | FunctionSpec,
    p: float,
    q: float,
    delta: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """||f||_{q,k,|x|^delta} / ||grad_k f||_{p,k}.

    Radial f (any d): T_j f = d_j f, so |grad_k f| = |F'(|x|)|.  One-dimensional
    non-radial f: T_1 f from :func:`dunkl_operator`.
    """
    if not (1.0 < p <= q < math.inf):
        raise ParameterOutOfRange(f"need 1 < p <= q < inf, got p={p}, q={q}")
    if delta <= -setup.hom_dim:
        raise ParameterOutOfRange("|x|^delta must be locally integrable")
    if isinstance(f, RadialProfile):
        num = radial_integral(setup, f, quad, p=q, weight_exponent=delta) ** (1.0 / q)
        dprof = RadialProfile(name=f"{f.name}'", func=f.derivative, decay=Decay(f.decay.kind, f.decay.rate, f.decay.power + 1.0, f.decay.coef * (2.0 * f.decay.rate + 1.0)), breakpoints=f.breakpoints)
        den = radial_integral(setup, dprof, quad, p=p) ** (1.0 / p)
        return num / den
    if setup.d != 1 or f.d != 1:
        raise ParameterOutOfRange("non-radial Sobolev ratios are one-dimensional")
    num = function_norm_1d(setup, lambda t: f.func(t[..., None]), f.decay, q, delta, quad)
    tf = dunkl_derivative_spec(setup, f)
    den = function_norm_1d(setup, lambda t: tf.func(t[..., None]), tf.decay, p, 0.0, quad)
    return num / den


def sobolev_delta(setup: MultiplicitySetup, p: float, q: float) -> float:
    """The scale-invariant weight exponent q[N(1/p - 1/q) - 1]."""
    return q * (setup.hom_dim * (1.0 / p - 1.0 / q) - 1.0)


def sobolev_scaling_exponent(setup: MultiplicitySetup, p: float, q: float, delta: float) -> float:
    """sobolev_ratio(f(lambda .)) is proportional to lambda to this power."""
    N = setup.hom_dim
    return -(delta + N) / q - 1.0 + N / p


@dataclass
class SobolevSweep:
    lambdas: Array
    ratios: Array
    delta: float
    expected_exponent: float

    @property
    def spread(self) -> float:
        """(max - min) / mean of the ratios across the sweep."""
        return float((self.ratios.max() - self.ratios.min()) / self.ratios.mean())

    @property
    def fitted_exponent(self) -> float:
        return float(np.polyfit(np.log(self.lambdas), np.log(self.ratios), 1)[0])

    def as_dict(self) -> dict:
        return {
            "lambdas": self.lambdas.tolist(),
            "ratios": self.ratios.tolist(),
            "delta": self.delta,
            "expected_exponent": self.expected_exponent,
            "fitted_exponent": self.fitted_exponent,
            "spread": self.spread,
        }


def sobolev_sweep(
    setup: MultiplicitySetup,
    f: RadialProfile,
    p: float,
    q: float,
    delta: float,
    lambdas: Sequence[float] = (0.25, 0.5, 1.0, 2.0, 4.0),
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> SobolevSweep:
    lam = np.asarray(lambdas, dtype=float)
    ratios = np.array([sobolev_ratio(setup, f.dilate(float(l)), p, q, delta, quad) for l in lam])
    return SobolevSweep(lam, ratios, delta, sobolev_scaling_exponent(setup, p, q, delta))


def theorem42_conditions(setup: MultiplicitySetup, u: WeightSpec, p: float, q: float, r: float) -> InequalityReport:
    """Both Sobolev weight conditions as sup_s of (Hardy integral)^(1/q) / s^(target)."""
    t0 = time.perf_counter()
    N = setup.hom_dim
    if not 1.0 < r < N:
        raise ParameterOutOfRange(f"need 1 < r < {N:g}")
    if not (1.0 < p <= q < math.inf) or not p < r:
        raise ParameterOutOfRange("need 1 < p <= q < inf and p < r")
    u.check_integrable(setup)
    us = u.rearrangement(setup)
    first = evaluate_condition(
        "sobolev-large-tail",
        "Sobolev weight condition on the tail integral",
        [("tail", us.times_power(-q * (1.0 - 1.0 / N)), 1.0 / q), ("monomial", -(1.0 / p - 1.0), 1.0)],
    )
    second = evaluate_condition(
        "sobolev-small-head",
        "Sobolev weight condition on the head integral",
        [("head", us.times_power(-q * (1.0 / r - 1.0 / N)), 1.0 / q), ("monomial", -(1.0 / p - 1.0 / r), 1.0)],
    )
    rep = InequalityReport(
        "weighted Sobolev conditions",
        [first, second],
        parameters={"p": p, "q": q, "r": r, "u": {"kind": u.kind, "delta": u.delta, "coef": u.coef}},
        wall_time=time.perf_counter() - t0,
    )
    rep.best_constant = max(c.grid_sup for c in rep.conditions)
    return rep


def sobolev_power_verdict(setup: MultiplicitySetup, p: float, q: float, r: float, delta: float) -> bool:
    """Exponent algebra for u = |x|^delta: finite iff delta <= 0, delta = q[N(1/p-1/q)-1], 1 < p < r."""
    return delta <= 0.0 and abs(delta - sobolev_delta(setup, p, q)) < 1e-12 and 1.0 < p < r
