"""Dunkl translation of radial functions.

Rank one (d = 1, multiplicity k > 0):

    tau_x F(y) = c_B int_{-1}^{1} F(A(x, y, t)) (1 + t)(1 - t^2)^(k-1) dt,
    A(x, y, t) = sqrt(x^2 + y^2 - 2 x y t),   c_B = Gamma(k + 1/2) / (sqrt(pi) Gamma(k)).

The t-integral is done in u = 1 - t, where the density is u^(k-1) (2-u)^k.
Panels are graded toward u = 0 because for large |x y| the integrand
concentrates there.  Gaussians in any dimension go through the kernel
identity tau_x(e^{-s|.|^2})(y) = e^{-s(|x|^2+|y|^2)} E_k(2 s x, y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .catalog import RadialProfile
from .errors import NonPositiveScale, ParameterOutOfRange
from .kernel import log_scaled_kernel_1d
from .measure import MultiplicitySetup, radial_integral
from .quadrature import DEFAULT_QUAD, QuadratureSpec, gauss_jacobi, graded_edges, graded_rule, power_composite, uniform_edges

Array = np.ndarray


def density_constant(k: float) -> float:
    """c_B, making (1+t)(1-t^2)^(k-1) a probability density on (-1, 1)."""
    if k <= 0:
        raise ParameterOutOfRange("the translation density needs k > 0")
    return math.exp(sp.gammaln(k + 0.5) - sp.gammaln(k) - 0.5 * math.log(math.pi))


@dataclass(frozen=True)
class TranslationKernelSample:
    """Quadrature sample of the translation measure at (x, y)."""

    x: float
    y: float
    nodes: Array
    weights: Array

    @property
    def arguments(self) -> Array:
        return np.sqrt(np.maximum(self.x**2 + self.y**2 - 2.0 * self.x * self.y * self.nodes, 0.0))

    @property
    def total(self) -> float:
        return float(np.sum(self.weights))


def _panel_rule(lo: float, hi: float, n: int, a: float, b: float) -> tuple[Array, Array]:
    """Gauss-Jacobi on [lo, hi] for the weight (hi - u)^a (u - lo)^b."""
    x, w = gauss_jacobi(n, a, b)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), w * half ** (a + b + 1.0)


def density_rule(
    k: float, quad: QuadratureSpec = DEFAULT_QUAD, u_breaks=(), focus: float = 1.0, smallest: float | None = None
) -> tuple[Array, Array]:
    """Nodes t and weights of the normalized density on (-1, 1).

    ``u_breaks`` are interior points of u = 1 - t where the integrand has a
    kink; ``focus`` is the u-scale of the concentration near t = 1;
    ``smallest`` overrides the width of the first graded panel at each end.
    """
    if smallest is None:
        smallest = min(0.5, max(focus, 1e-300)) * 1e-6
    left = graded_edges(0.0, 1.0, quad.grading, smallest)
    fine = [focus * m for m in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0) if focus * m < 1.0]
    # concentration sits at u = 0 when x y > 0 and at u = 2 when x y < 0; refine both ends
    half = np.unique(np.concatenate([left, fine]))
    pts = np.unique(np.concatenate([half, 2.0 - half, [u for u in u_breaks if 0.0 < u < 2.0]]))
    us, ws = [], []
    last = len(pts) - 2
    for i, (lo, hi) in enumerate(zip(pts[:-1], pts[1:])):
        b = k - 1.0 if i == 0 else 0.0
        a = k if i == last else 0.0
        u, w = _panel_rule(lo, hi, quad.nodes, a, b)
        if i != 0:
            w = w * u ** (k - 1.0)
        if i != last:
            w = w * (2.0 - u) ** k
        us.append(u)
        ws.append(w)
    u = np.concatenate(us)
    w = np.concatenate(ws) * density_constant(k)
    return 1.0 - u, w


def translation_sample(k: float, F: RadialProfile, x: float, y: float, quad: QuadratureSpec = DEFAULT_QUAD) -> TranslationKernelSample:
    xy = x * y
    breaks = []
    if xy != 0.0:
        for b in F.breakpoints:
            # A(x, y, t) = b  <=>  u = (b^2 - (x - y)^2) / (2 x y)
            breaks.append((b * b - (x - y) ** 2) / (2.0 * xy))
    focus = 1.0
    if xy != 0.0:
        focus = min(1.0, F.length * (F.length + abs(abs(x) - abs(y))) / (2.0 * abs(xy)))
    smallest = None
    if xy != 0.0 and not F.schwartz:
        # F(A) with F not smooth in r^2 has a branch point at u = -(|x| - |y|)^2 / (2|xy|) (mirrored at u = 2)
        gap = (abs(x) - abs(y)) ** 2 / (2.0 * abs(xy))
        smallest = min(min(0.5, focus) * 1e-6, max(gap * 1e-3, 1e-14))
    t, w = density_rule(k, quad, breaks, focus, smallest)
    return TranslationKernelSample(float(x), float(y), t, w)


def translate_radial_1d(k: float, F: RadialProfile, x, y, quad: QuadratureSpec = DEFAULT_QUAD) -> Array:
    """tau_x F(y) for a radial profile on the line (vectorised over x, y)."""
    if k < 0:
        raise ParameterOutOfRange("multiplicity must be >= 0")
    xb, yb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if k == 0.0:
        return F(np.abs(xb - yb))
    if F.name.split("@")[0] == "ball":
        return translate_ball_1d(k, F.breakpoints[0], xb, yb)
    out = np.empty(xb.shape)
    for idx in np.ndindex(xb.shape):
        xv, yv = float(xb[idx]), float(yb[idx])
        if xv == 0.0 or yv == 0.0:
            out[idx] = F(np.abs(xv + yv))
            continue
        s = translation_sample(k, F, xv, yv, quad)
        out[idx] = float(np.sum(s.weights * F(s.arguments)))
    return out if out.ndim else float(out)


def translate_ball_1d(k: float, radius: float, x, y) -> Array:
    """tau_x chi_{[-R, R]}(y) exactly: the translation measure of {t : A(x, y, t) < R}.

    With t = 2v - 1 the density is Beta(k + 1, k) in v.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if k == 0.0:
        return (np.abs(x - y) < radius).astype(float)
    xy = x * y
    safe = np.where(xy == 0.0, 1.0, xy)
    with np.errstate(over="ignore"):
        # |t0| = inf for tiny |x y| is clipped to the right end below
        t0 = (x * x + y * y - radius * radius) / (2.0 * safe)
    v0 = np.clip(0.5 * (t0 + 1.0), 0.0, 1.0)
    # A < R  <=>  x y t > (x^2 + y^2 - R^2) / 2, so the event is t > t0 or t < t0 by the sign of x y
    val = np.where(xy > 0.0, 1.0 - sp.betainc(k + 1.0, k, v0), sp.betainc(k + 1.0, k, v0))
    val = np.where(xy == 0.0, (np.abs(x + y) < radius).astype(float), val)
    return val if val.ndim else float(val)


def translate_gaussian(setup: MultiplicitySetup, s: float, x, y) -> Array:
    """e^{-s(|x|^2 + |y|^2)} E_k(2 s x, y) for points of shape (..., d)."""
    if not s > 0:
        raise NonPositiveScale(f"gaussian scale must be positive, got {s}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if setup.d == 1:
        x = x[..., None] if (x.ndim == 0 or x.shape[-1] != 1) else x
        y = y[..., None] if (y.ndim == 0 or y.shape[-1] != 1) else y
    # -s(|x|^2 + |y|^2) + |2 s x_j y_j| = -s (|x_j| - |y_j|)^2 coordinatewise, free of cancellation
    gap = np.abs(x) - np.abs(y)
    expo = -s * np.sum(gap * gap, axis=-1)
    for j, kj in enumerate(setup.k):
        expo = expo + log_scaled_kernel_1d(kj, 2.0 * s * x[..., j] * y[..., j])
    return np.exp(np.minimum(expo, 0.0))


def translation_mass_check(
    setup: MultiplicitySetup, F: RadialProfile, x: float, quad: QuadratureSpec = DEFAULT_QUAD
) -> tuple[float, float]:
    """(int tau_x F d nu_k, int F d nu_k), the first by a 2-d quadrature of the rank-one formula."""
    if setup.d != 1:
        raise ParameterOutOfRange("the radial translation mass check is one-dimensional")
    k = setup.k[0]
    rhs = radial_integral(setup, F, quad)
    ax = abs(float(x))
    dec = F.decay
    R = ax + (quad.radius if quad.radius is not None else dec.radius(2.0 * k, quad.tolerance))
    bps = {ax}
    for b in F.breakpoints:
        bps.update({abs(ax - b), ax + b})
    width = quad.panel_width * dec.length
    if F.breakpoints or not F.schwartz:
        # kinks, and the cusp of a profile not smooth in r^2, give tau_x F algebraic singularities at these points
        pts = sorted({0.0, R, *(b for b in bps if 0.0 < b < R)})
        ys, ws = [], []
        for lo, hi in zip(pts[:-1], pts[1:]):
            mid = 0.5 * (lo + hi)
            for a, b, at in ((lo, mid, "left"), (mid, hi, "right")):
                power = 2.0 * k if (lo == 0.0 and at == "left") else 0.0
                t, w = graded_rule(a, b, quad.nodes, power, quad.grading, 1e-10, at)
                ys.append(t)
                ws.append(w if power else w * t ** (2.0 * k))
        y, wy = np.concatenate(ys), np.concatenate(ws)
    else:
        y, wy = power_composite(uniform_edges(0.0, R, width, sorted(bps)), quad.nodes, 2.0 * k)
    vals = translate_radial_1d(k, F, float(x), y, quad) + translate_radial_1d(k, F, float(x), -y, quad)
    return float(np.sum(wy * vals)), float(rhs)
