"""Dunkl kernel for Z_2^d and the Dunkl transform (one-dimensional and radial routes).

Rank-one kernel:

    E_k(x, y)  = i_{k-1/2}(xy) + xy/(2k+1) * i_{k+1/2}(xy)
    E_k(x, iy) = j_{k-1/2}(xy) + i xy/(2k+1) * j_{k+1/2}(xy)

and on Z_2^d the kernel is the product of rank-one factors.  The transform
is normalized with the Mehta constant so the Gaussian exp(-|x|^2/2) is a
fixed point; in the radial case it reduces to a Hankel-type integral
against j_{gamma + d/2 - 1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .catalog import Decay, FunctionSpec, RadialProfile
from .errors import ParameterOutOfRange, TailBoundExceeded
from .measure import MultiplicitySetup
from .quadrature import (
    DEFAULT_QUAD,
    QuadratureSpec,
    bessel_zero_estimate,
    composite,
    power_composite,
    semi_infinite,
    uniform_edges,
    wynn_epsilon,
)
from scipy import special as sp

from .special import bessel_i_normalized, bessel_j_normalized

Array = np.ndarray


# ---------------------------------------------------------------- kernels


def bessel_normalized(nu: float, z) -> Array:
    """j_nu(z) = Gamma(nu+1) (2/z)^nu J_nu(z), j_nu(0) = 1."""
    return bessel_j_normalized(nu, z)


def bessel_modified_normalized(nu: float, z) -> Array:
    """i_nu(z) = j_nu(iz)."""
    return bessel_i_normalized(nu, z)


_NEG_ASYMPTOTIC = 25.0
_KUMMER_MAX = 350.0


def _scaled_negative(k: float, z: np.ndarray) -> np.ndarray:
    """e^{-z} E_k(-z) for large z > 0 without cancellation.

    E_k(-z) = e^{-z} 1F1(k; 2k+1; 2z).  The dominant part of 1F1 is
    Gamma(2k+1)/Gamma(k) e^{2z} (2z)^{-k-1} sum_n (k+1)_n (1-k)_n / n! (2z)^{-n},
    summed up to its smallest term; the factor 1/Gamma(k) keeps small k exact.
    """
    x = 2.0 * z
    term = np.ones_like(x)
    total = np.ones_like(x)
    for n in range(60):
        nxt = term * (k + 1.0 + n) * (1.0 - k + n) / ((n + 1.0) * x)
        # stop each entry at the smallest term of the divergent series
        grow = np.abs(nxt) >= np.abs(term)
        term = np.where(grow, 0.0, nxt)
        total = total + term
        if not np.any(term):
            break
    lead = np.exp(sp.gammaln(2.0 * k + 1.0) - sp.gammaln(k + 1.0) - (k + 1.0) * np.log(x))
    # recessive part; it dominates only when k is below about z e^{-2z}
    recessive = math.cos(math.pi * k) * np.exp(sp.gammaln(2.0 * k + 1.0) - sp.gammaln(k + 1.0) - k * np.log(x) - x)
    return k * lead * total + recessive


def _scaled_kummer(k: float, z: np.ndarray) -> np.ndarray:
    """e^{-z} E_k(-z) = e^{-2z} 1F1(k; 2k+1; 2z) for moderate z >= 0, summed in positive terms.

    The Bessel form cancels there with relative loss about z/k.
    """
    x = 2.0 * z
    term = np.ones_like(x)
    total = np.ones_like(x)
    peak = float(np.max(x, initial=0.0))
    for j in range(2000):
        term = term * ((k + j) / (2.0 * k + 1.0 + j)) * x / (j + 1.0)
        total = total + term
        # terms grow until j ~ x, so only a term past the peak can end the sum
        if j >= peak and np.all(term <= 1e-17 * total):
            break
    return np.exp(-x) * total


def kernel_1d_product(k: float, z, scaled: bool = False) -> Array:
    """E_k as a function of the product z = xy; ``scaled`` multiplies by exp(-|z|)."""
    z = np.asarray(z, dtype=float)
    if k == 0.0:
        return np.exp(z - np.abs(z)) if scaled else np.exp(z)
    even = bessel_i_normalized(k - 0.5, z, scaled)
    odd = bessel_i_normalized(k + 0.5, z, scaled)
    out = even + z / (2.0 * k + 1.0) * odd
    out = np.array(out, dtype=float)
    # positive series while e^{2|z|} fits in a double, expansion once 2|z| >> k^2;
    # for large k the Bessel form left in between only loses a factor |z|/k
    near = min(max(_NEG_ASYMPTOTIC, 2.0 * k * k), _KUMMER_MAX)
    kummer = (z < 0.0) & (z >= -near)
    expansion = (z < -near) & (z <= -2.0 * k * k)
    for neg, fn in ((expansion, _scaled_negative), (kummer, _scaled_kummer)):
        if np.any(neg):
            zn = -z[neg]
            val = fn(k, zn)
            out[neg] = val if scaled else val * np.exp(zn)
    return out if out.ndim else out[()]


def dunkl_kernel_1d(k: float, x, y) -> Array:
    """E_k(x, y) for real x, y (broadcasting)."""
    if k < 0:
        raise ParameterOutOfRange("multiplicity must be >= 0")
    return kernel_1d_product(k, np.multiply(x, y))


def dunkl_kernel_zd(setup: MultiplicitySetup, x, y) -> Array:
    """E_k(x, y) = prod_j E_{k_j}(x_j, y_j) for points of shape (..., d)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = 1.0
    for j, kj in enumerate(setup.k):
        out = out * kernel_1d_product(kj, x[..., j] * y[..., j])
    return np.asarray(out)


def log_kernel_zd(setup: MultiplicitySetup, x, y) -> Array:
    """log E_k(x, y) computed from exponentially scaled factors (E_k > 0 for real arguments)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = 0.0
    for j, kj in enumerate(setup.k):
        z = x[..., j] * y[..., j]
        out = out + log_scaled_kernel_1d(kj, z) + np.abs(z)
    return np.asarray(out)


def log_scaled_kernel_1d(k: float, z) -> Array:
    """log(e^{-|z|} E_k(z)); zero for k = 0, z >= 0."""
    z = np.asarray(z, dtype=float)
    if k == 0.0:
        return np.minimum(z, 0.0) * 2.0
    return np.log(kernel_1d_product(k, z, scaled=True))


def dunkl_kernel_imag(k: float, x, y) -> Array:
    """E_k(x, iy) for real x, y (complex, modulus <= 1)."""
    z = np.multiply(x, y)
    if k == 0.0:
        return np.exp(1j * np.asarray(z, dtype=float))
    return bessel_j_normalized(k - 0.5, z) + 1j * np.asarray(z) / (2.0 * k + 1.0) * bessel_j_normalized(k + 0.5, z)


# ---------------------------------------------------------------- Bessel-weighted integrals


def hankel_integral(
    g: Callable[[Array], Array],
    nu: float,
    r,
    exponent: float,
    decay: Decay,
    quad: QuadratureSpec = DEFAULT_QUAD,
    breakpoints: Sequence[float] = (),
    bessel: Callable[[float, Array], Array] = bessel_j_normalized,
) -> Array:
    """int_0^inf g(t) j_nu(r t) t**exponent dt, vectorised over ``r``.

    Super-algebraic or compact ``decay``: truncated composite rule, panels
    no wider than half an oscillation.  Algebraic ``decay`` (g ~ t^-m):
    a finite head, then either a semi-infinite tail rule (r = 0) or
    integration between consecutive zeros of J_nu(r t) summed with Wynn's
    epsilon acceleration (r > 0).
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr < 0):
        raise ParameterOutOfRange("radial frequency must be >= 0")
    if exponent <= -1.0:
        raise ParameterOutOfRange(f"t^{exponent} is not integrable at the origin")
    length = decay.length
    if decay.kind != "power":
        R = quad.radius if quad.radius is not None else decay.radius(exponent, quad.tolerance)
        rmax = float(np.max(r_arr)) if r_arr.size else 0.0
        width = quad.panel_width * length
        if rmax > 0:
            width = min(width, math.pi / rmax)
        t, w = power_composite(uniform_edges(0.0, R, width, breakpoints), quad.nodes, exponent)
        vals = g(t)
        out = (bessel(nu, r_arr[:, None] * t[None, :]) * (w * vals)[None, :]).sum(axis=1)
        return out.reshape(np.shape(r)) if np.ndim(r) else out[0]

    head = 8.0 * length
    for b in breakpoints:
        head = max(head, 2.0 * b)
    decay_full = decay.rate - exponent
    # for r > 0 the amplitude of j_nu(r t) ~ (r t)^(-nu - 1/2) also counts
    if decay_full + (nu + 0.5 if np.all(r_arr > 0) else 0.0) <= 1.0:
        raise TailBoundExceeded("the Bessel-weighted integrand does not decay fast enough at infinity")
    res = np.empty_like(r_arr)
    for i, rv in enumerate(r_arr):
        res[i] = _hankel_algebraic(g, nu, rv, exponent, decay_full, head, length, quad, breakpoints, bessel)
    return res.reshape(np.shape(r)) if np.ndim(r) else res[0]


def _hankel_algebraic(g, nu, r, exponent, decay_full, head, length, quad, breakpoints, bessel) -> float:
    width = quad.panel_width * length
    if r > 0:
        width = min(width, math.pi / r)
    t, w = power_composite(uniform_edges(0.0, head, width, breakpoints), quad.nodes, exponent)
    total = float(np.sum(w * g(t) * bessel(nu, r * t)))
    # a slowly oscillating tail is treated as non-oscillatory
    if (r * head < 1.0 and decay_full > 1.0) or r == 0.0:
        ts, ws = semi_infinite(head, quad.nodes, decay_full, quad.grading, quad.smallest)
        return total + float(np.sum(ws * g(ts) * ts**exponent * bessel(nu, r * ts)))
    # first zero beyond the head; McMahon zeros are increasing in m
    m0 = max(1, int(r * head / math.pi - 0.5 * nu))
    while bessel_zero_estimate(nu, np.array([m0]))[0] <= r * head:
        m0 += 1
    zs = bessel_zero_estimate(nu, np.arange(m0, m0 + quad.oscillations + 1)) / r
    edges = np.concatenate([[head], zs])
    tn, wn = composite(np.asarray([0.0, 1.0]), quad.nodes)
    partial = [total]
    for lo, hi in zip(edges[:-1], edges[1:]):
        tt = lo + (hi - lo) * tn
        ww = (hi - lo) * wn
        partial.append(partial[-1] + float(np.sum(ww * g(tt) * tt**exponent * bessel(nu, r * tt))))
    return wynn_epsilon(partial[1:])


# ---------------------------------------------------------------- transforms


def _fold_parts(f: FunctionSpec) -> tuple[Callable, Callable]:
    par = f.parity[0] if f.parity else 0

    def even(y):
        if par == -1:
            return np.zeros_like(y)
        if par == 1:
            return f.func(y[..., None])
        return 0.5 * (f.func(y[..., None]) + f.func(-y[..., None]))

    def odd(y):
        if par == 1:
            return np.zeros_like(y)
        if par == -1:
            return f.func(y[..., None])
        return 0.5 * (f.func(y[..., None]) - f.func(-y[..., None]))

    return even, odd


def dunkl_transform_1d(
    f: FunctionSpec, xi, setup: MultiplicitySetup, quad: QuadratureSpec = DEFAULT_QUAD
) -> Array:
    """c_k int f(y) E_k(-i xi, y) |y|^{2k} dy on the line (complex, vectorised over xi).

    Even part pairs with j_{k-1/2}(xi y), odd part with xi y/(2k+1) j_{k+1/2}(xi y).
    """
    if setup.d != 1 or f.d != 1:
        raise ParameterOutOfRange("the one-dimensional transform needs d = 1")
    k = setup.k[0]
    xi_arr = np.asarray(xi, dtype=float)
    flat = np.atleast_1d(xi_arr)
    even, odd = _fold_parts(f)
    bps = f.radial.breakpoints if f.radial is not None else ()
    re = hankel_integral(even, k - 0.5, np.abs(flat), 2.0 * k, f.decay, quad, bps)
    par = f.parity[0] if f.parity else 0
    if par == 1:
        im = np.zeros_like(re)
    else:
        def odd_term(nu, z):
            return z / (2.0 * k + 1.0) * bessel_j_normalized(nu, z)

        im = -np.sign(flat) * hankel_integral(odd, k + 0.5, np.abs(flat), 2.0 * k, f.decay, quad, bps, odd_term)
    out = 2.0 * setup.mehta * (np.asarray(re) + 1j * np.asarray(im))
    return out.reshape(xi_arr.shape) if xi_arr.ndim else complex(out[0])


def inverse_transform_1d(
    values: Callable[[Array], Array],
    decay: Decay,
    x,
    setup: MultiplicitySetup,
    quad: QuadratureSpec = DEFAULT_QUAD,
    parity: int = 0,
) -> Array:
    """c_k int G(xi) E_k(i x, xi) |xi|^{2k} d xi for a complex profile G on the line."""
    k = setup.k[0]
    x_arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x_arr)

    def ev(t):
        return 0.5 * (values(t) + values(-t))

    def od(t):
        return 0.5 * (values(t) - values(-t))

    def odd_term(nu, z):
        return z / (2.0 * k + 1.0) * bessel_j_normalized(nu, z)

    out = np.zeros(flat.shape, dtype=complex)
    if parity != -1:
        out = out + _complex_hankel(ev, k - 0.5, np.abs(flat), 2.0 * k, decay, quad, bessel_j_normalized)
    if parity != 1:
        out = out + 1j * np.sign(flat) * _complex_hankel(od, k + 0.5, np.abs(flat), 2.0 * k, decay, quad, odd_term)
    out = 2.0 * setup.mehta * out
    return out.reshape(x_arr.shape) if x_arr.ndim else complex(out[0])


def _complex_hankel(g, nu, r, exponent, decay, quad, bessel):
    re = hankel_integral(lambda t: np.real(g(t)), nu, r, exponent, decay, quad, (), bessel)
    im = hankel_integral(lambda t: np.imag(g(t)), nu, r, exponent, decay, quad, (), bessel)
    return np.asarray(re) + 1j * np.asarray(im)


def dunkl_transform_radial(
    setup: MultiplicitySetup, F: RadialProfile, rho, quad: QuadratureSpec = DEFAULT_QUAD
) -> Array:
    """c_k d_k int_0^inf F(r) j_{gamma+d/2-1}(r rho) r^{2 gamma + d - 1} dr."""
    nu = setup.hom_dim / 2.0 - 1.0
    val = hankel_integral(F.func, nu, rho, setup.hom_dim - 1.0, F.decay, quad, F.breakpoints)
    return setup.mehta * setup.sphere * val


@dataclass(frozen=True, eq=False)
class TransformProfile:
    """Radial transform values on a frequency grid plus an evaluator for any frequency.

    ``func`` is the closed form when the catalog provides one, otherwise a
    quadrature-backed evaluation of the forward transform.
    """

    setup: MultiplicitySetup
    rho: Array
    values: Array
    func: Callable[[Array], Array]
    decay: Decay
    quad: QuadratureSpec
    source: str = "quadrature"
    meta: dict = field(default_factory=dict)

    def __call__(self, rho) -> Array:
        return self.func(np.asarray(rho, dtype=float))

    def scaled(self, multiplier: Callable[[Array], Array], decay: Decay | None = None) -> "TransformProfile":
        """Pointwise product with a radial multiplier m(rho)."""
        f = self.func
        return TransformProfile(
            setup=self.setup,
            rho=self.rho,
            values=self.values * multiplier(self.rho),
            func=lambda r: f(r) * multiplier(r),
            decay=decay or self.decay,
            quad=self.quad,
            source=self.source + "*multiplier",
        )


def transform_profile(
    setup: MultiplicitySetup,
    F: RadialProfile,
    rho: Sequence[float] | None = None,
    quad: QuadratureSpec = DEFAULT_QUAD,
    closed_form: bool = False,
) -> TransformProfile:
    """Radial transform of F sampled on ``rho`` (default: 64 points on [0, 10/length])."""
    grid = np.linspace(0.0, 10.0 / F.length, 64) if rho is None else np.asarray(rho, dtype=float)
    if closed_form:
        if F.transform is None:
            raise ParameterOutOfRange(f"no closed-form transform for {F.name!r}")
        tr = F.transform

        def func(r):
            return tr(setup, r)

        source = "closed-form"
    else:
        def func(r):
            return dunkl_transform_radial(setup, F, r, quad)

        source = "quadrature"
    if F.transform_decay is not None:
        dec = F.transform_decay(setup)
    elif F.decay.kind in ("gaussian",):
        dec = Decay("gaussian", 1.0 / (4.0 * F.decay.rate))
    else:
        raise TailBoundExceeded(f"unknown decay of the transform of {F.name!r}")
    return TransformProfile(setup, grid, np.asarray(func(grid)), func, dec, quad, source)


def inverse_transform_radial(
    setup: MultiplicitySetup, profile: TransformProfile, r, quad: QuadratureSpec | None = None
) -> Array:
    """c_k d_k int_0^inf G(rho) j_{gamma+d/2-1}(r rho) rho^{2 gamma + d - 1} d rho (same kernel as forward)."""
    q = quad or profile.quad
    nu = setup.hom_dim / 2.0 - 1.0
    val = hankel_integral(profile.func, nu, r, setup.hom_dim - 1.0, profile.decay, q)
    return setup.mehta * setup.sphere * val
