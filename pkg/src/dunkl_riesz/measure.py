"""Multiplicity setup for Z_2^d, the weight w_k, its constants and radial integration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from scipy import special as sp

from .catalog import RadialProfile
from .errors import NonPositiveScale, ParameterOutOfRange, TailBoundExceeded
from .quadrature import DEFAULT_QUAD, QuadratureSpec, power_composite, semi_infinite, sum_rule, uniform_edges


@dataclass(frozen=True)
class MultiplicitySetup:
    """Dimension d and one multiplicity k_j >= 0 per coordinate reflection."""

    d: int
    k: tuple[float, ...]

    def __init__(self, d: int, k: float | Sequence[float] = 0.0):
        if int(d) != d or d < 1:
            raise ParameterOutOfRange(f"dimension must be a positive integer, got {d}")
        ks = (float(k),) * int(d) if np.isscalar(k) else tuple(float(v) for v in k)
        if len(ks) != d:
            raise ParameterOutOfRange(f"need {d} multiplicities, got {len(ks)}")
        if any(not math.isfinite(v) or v < 0 for v in ks):
            raise ParameterOutOfRange(f"multiplicities must be finite and >= 0, got {ks}")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "k", ks)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiplicitySetup) and (self.d, self.k) == (other.d, other.k)

    def __hash__(self) -> int:
        return hash((self.d, self.k))

    def __repr__(self) -> str:
        return f"MultiplicitySetup(d={self.d}, k={self.k})"

    @property
    def gamma(self) -> float:
        return math.fsum(self.k)

    @property
    def hom_dim(self) -> float:
        """Homogeneous dimension 2*gamma + d."""
        return 2.0 * self.gamma + self.d

    @cached_property
    def mehta(self) -> float:
        """c_k, the inverse of the Gaussian integral of w_k (product of 1-d factors)."""
        log_inv = sum((kj + 0.5) * math.log(2.0) + sp.gammaln(kj + 0.5) for kj in self.k)
        return math.exp(-log_inv)

    @cached_property
    def sphere(self) -> float:
        """d_k, the w_k-mass of the unit sphere (unnormalized surface measure)."""
        mu = self.gamma + self.d / 2.0
        return 1.0 / (self.mehta * 2.0 ** (mu - 1.0) * math.gamma(mu))

    @property
    def ball_mass(self) -> float:
        """nu_k(B(0, 1)) = d_k / (2 gamma + d)."""
        return self.sphere / self.hom_dim

    def describe(self) -> dict:
        return {"d": self.d, "k": list(self.k), "gamma": self.gamma, "mehta": self.mehta, "sphere": self.sphere}


def weight(setup: MultiplicitySetup, x) -> np.ndarray:
    """w_k(x) = prod_j |x_j|^(2 k_j) on points of shape (..., d)."""
    x = np.asarray(x, dtype=float)
    if setup.d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    if x.shape[-1] != setup.d:
        raise ParameterOutOfRange(f"expected points of dimension {setup.d}, got {x.shape}")
    out = np.ones(x.shape[:-1])
    for j, kj in enumerate(setup.k):
        if kj != 0.0:
            out = out * np.abs(x[..., j]) ** (2.0 * kj)
    return out


def mehta_constant(setup: MultiplicitySetup) -> float:
    return setup.mehta


def sphere_constant(setup: MultiplicitySetup) -> float:
    return setup.sphere


def gaussian_mass(setup: MultiplicitySetup, s: float) -> float:
    """int exp(-s |y|^2) d nu_k(y) = c_k^{-1} (2s)^{-(gamma + d/2)}."""
    if not s > 0:
        raise NonPositiveScale(f"gaussian scale must be positive, got {s}")
    return (2.0 * s) ** (-(setup.gamma + setup.d / 2.0)) / setup.mehta


def radial_rule(
    setup: MultiplicitySetup,
    profile: RadialProfile,
    quad: QuadratureSpec = DEFAULT_QUAD,
    *,
    exponent: float | None = None,
    p: float = 1.0,
    panels_scale: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for ``int_0^inf g(r) r**exponent dr`` over the support of ``profile``.

    ``exponent`` defaults to 2*gamma + d - 1.  The truncation radius is set
    from the decay envelope of ``|F|**p`` so the neglected tail is below
    ``quad.tolerance`` relative to the envelope mass; algebraic profiles get a
    semi-infinite tail rule instead.
    """
    n_exp = setup.hom_dim - 1.0 if exponent is None else exponent
    if n_exp <= -1.0:
        raise ParameterOutOfRange(f"r^{n_exp} is not integrable at the origin")
    dec = profile.decay
    width = quad.panel_width * dec.length / panels_scale
    if dec.kind == "power":
        head = max(20.0 * dec.length, *(profile.breakpoints or (0.0,))) * 1.0
        t0, w0 = power_composite(uniform_edges(0.0, head, width, profile.breakpoints), quad.nodes, n_exp)
        t1, w1 = semi_infinite(head, quad.nodes, p * dec.rate - n_exp, quad.grading, quad.smallest)
        return np.concatenate([t0, t1]), np.concatenate([w0, w1 * t1**n_exp])
    R = quad.radius
    if R is None:
        R = dec.radius(n_exp, quad.tolerance, p)
    else:
        bound = dec.tail(R, n_exp, p)
        ref = dec.tail(0.0, n_exp, p)
        if bound > quad.tolerance * ref:
            raise TailBoundExceeded(f"tail bound {bound:.3g} at R={R} exceeds tolerance")
    edges = uniform_edges(0.0, R, width, profile.breakpoints)
    return power_composite(edges, quad.nodes, n_exp)


def radial_integral(
    setup: MultiplicitySetup,
    profile: RadialProfile | Callable,
    quad: QuadratureSpec = DEFAULT_QUAD,
    *,
    p: float = 1.0,
    weight_exponent: float = 0.0,
    decay_profile: RadialProfile | None = None,
) -> float:
    """d_k int_0^inf G(r) r^(2 gamma + d - 1 + weight_exponent) dr.

    ``G = F`` when ``p == 1`` and ``G = |F|**p`` otherwise.  Panels are
    doubled until two successive estimates agree to ``quad.tolerance``.
    """
    prof = profile if isinstance(profile, RadialProfile) else decay_profile
    if prof is None:
        raise ParameterOutOfRange("a bare callable needs decay_profile for tail control")
    F = profile if not isinstance(profile, RadialProfile) else profile.func
    n_exp = setup.hom_dim - 1.0 + weight_exponent

    def g(r):
        v = F(r)
        return v if p == 1.0 else np.abs(v) ** p

    prev = None
    for m in range(quad.max_doublings + 1):
        cur = sum_rule(g, radial_rule(setup, prof, quad, exponent=n_exp, p=p, panels_scale=2.0**m))
        if prev is not None and abs(cur - prev) <= quad.tolerance * max(abs(cur), 1e-300):
            return setup.sphere * cur
        prev = cur
    return setup.sphere * prev
