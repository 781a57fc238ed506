"""Dunkl Riesz potential: Gaussian subordination, Fourier multiplier, decay fits, maximal operator.

Subordination (d = 1):

    I_alpha f(x) = C int_0^inf s^(a-1) Phi(s) ds,   a = gamma + (d - alpha)/2,
    Phi(s) = int f(y) tau_x(e^{-s|.|^2})(y) d nu_k(y).

The s-integral is split at s = 1.  On (0, 1) panels are graded toward
s = 0 and the innermost one integrates s^(a-1) exactly; on (1, inf) the
map sigma = 1/s turns the s^(-alpha/2 - 1) tail into sigma^(alpha/2 - 1)
near sigma = 0, treated the same way.

Multiplier route: I_alpha f = F^{-1}(rho^-alpha F f) for radial f.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .catalog import Decay, FunctionSpec, RadialProfile, gaussian, radial_function
from .errors import AlphaOutOfRange, ParameterOutOfRange
from .kernel import hankel_integral, transform_profile
from .measure import MultiplicitySetup
from .rearrangement import InequalityReport, WeightSpec, theorem41_conditions
from .quadrature import DEFAULT_QUAD, QuadratureSpec, breakpoint_rule, graded_rule, power_composite, uniform_edges
from .translation import translate_ball_1d, translate_gaussian

Array = np.ndarray

# e^{-81} ~ 7e-36: the translated Gaussian is below this outside |x| +- 9/sqrt(s)
_WINDOW = 9.0


@dataclass(frozen=True)
class RieszParams:
    """Order alpha of the potential together with the constants it induces for a setup.

    ``normalization`` is the kernel-form constant as usually printed;
    ``prefactor`` is the constant in front of the subordination integral
    that makes F(I_alpha f) = |xi|^-alpha F f hold with the transform
    normalized by c_k.  They differ by the factor c_k Gamma(a).
    """

    alpha: float
    setup: MultiplicitySetup

    def __post_init__(self):
        N = self.setup.hom_dim
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha < N):
            raise AlphaOutOfRange(f"alpha must lie in (0, {N:g}), got {self.alpha}")

    @property
    def a(self) -> float:
        """Exponent gamma + (d - alpha)/2 of the subordination integral."""
        return self.setup.gamma + (self.setup.d - self.alpha) / 2.0

    @property
    def normalization(self) -> float:
        s = self.setup
        return 2.0 ** (s.gamma + s.d / 2.0 - self.alpha) * math.gamma(self.a) / math.gamma(self.alpha / 2.0)

    @property
    def prefactor(self) -> float:
        s = self.setup
        return s.mehta * 2.0 ** (s.gamma + s.d / 2.0 - self.alpha) / math.gamma(self.alpha / 2.0)

    @property
    def decay_exponent(self) -> float:
        """alpha - (2 gamma + d)."""
        return self.alpha - self.setup.hom_dim


def _as_function(f: FunctionSpec | RadialProfile, d: int = 1) -> FunctionSpec:
    return radial_function(f, d) if isinstance(f, RadialProfile) else f


def _breakpoints(f: FunctionSpec) -> tuple[float, ...]:
    return tuple(f.radial.breakpoints) if f.radial is not None else ()


def _support_radius(f: FunctionSpec, k: float, quad: QuadratureSpec) -> float:
    if quad.radius is not None:
        return quad.radius
    if f.decay.kind == "power":
        raise ParameterOutOfRange("subordination needs a super-algebraically decaying f")
    return f.decay.radius(2.0 * k, quad.tolerance)


def _phi(setup, fv, f: FunctionSpec, x: float, s: float, Y: float, quad: QuadratureSpec) -> float:
    """int f(y) tau_x(e^{-s|.|^2})(y) |y|^{2k} dy, both half-lines folded onto y > 0."""
    k = setup.k[0]
    ax = abs(x)
    half = _WINDOW / math.sqrt(s)
    lo, hi = max(0.0, ax - half), min(Y, ax + half)
    if hi <= lo:
        return 0.0
    width = min(quad.panel_width * f.decay.length, 0.5 / math.sqrt(s))
    bps = [b for b in _breakpoints(f)] + [ax]
    if lo == 0.0:
        y, w = power_composite(uniform_edges(0.0, hi, width, bps), quad.nodes, 2.0 * k)
    else:
        y, w = power_composite(uniform_edges(lo, hi, width, bps), quad.nodes, 0.0)
        w = w * y ** (2.0 * k)
    vals = fv(y) * translate_gaussian(setup, s, x, y) + fv(-y) * translate_gaussian(setup, s, x, -y)
    return float(np.sum(w * vals))


def _s_rule(a: float, alpha: float, quad: QuadratureSpec) -> tuple[Array, Array]:
    """Nodes s and weights for int_0^inf s^(a-1) g(s) ds with g bounded at both ends."""
    split = quad.s_split
    s0, w0 = graded_rule(0.0, split, quad.nodes, a - 1.0, quad.grading, quad.smallest)
    # s = split / sigma: s^(a-1) ds = split^a sigma^(-a-1) dsigma; g(split/sigma) ~ sigma^(gamma + d/2)
    # so the sigma integrand behaves like sigma^(alpha/2 - 1) times a bounded factor
    sig, w1 = graded_rule(0.0, 1.0, quad.nodes, alpha / 2.0 - 1.0, quad.grading, quad.smallest)
    expo = a + 1.0 + (alpha / 2.0 - 1.0)
    s1 = split / sig
    w1 = w1 * split**a * sig ** (-expo)
    return np.concatenate([s0, s1]), np.concatenate([w0, w1])


def subordination_integral(
    setup: MultiplicitySetup,
    f: FunctionSpec | RadialProfile,
    a: float,
    alpha: float,
    x: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """int_0^inf s^(a-1) Phi(s) ds without any prefactor (d = 1)."""
    if setup.d != 1:
        raise ParameterOutOfRange("the subordination route is one-dimensional")
    f = _as_function(f)
    k = setup.k[0]
    Y = _support_radius(f, k, quad)

    def fv(y):
        return f.func(np.asarray(y)[..., None])

    s_nodes, s_w = _s_rule(a, alpha, quad)
    phis = np.array([_phi(setup, fv, f, float(x), float(s), Y, quad) for s in s_nodes])
    return float(np.sum(s_w * phis))


def riesz_subordination(
    setup: MultiplicitySetup,
    f: FunctionSpec | RadialProfile,
    params: RieszParams,
    x,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> Array:
    """I_alpha f(x) on the line by Gaussian subordination (vectorised over x)."""
    _check(setup, params)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.array([subordination_integral(setup, f, params.a, params.alpha, xv, quad) for xv in xs])
    out = params.prefactor * out
    return out.reshape(np.shape(x)) if np.ndim(x) else float(out[0])


def _check(setup: MultiplicitySetup, params: RieszParams) -> None:
    if params.setup != setup:
        raise ParameterOutOfRange("RieszParams were built for a different setup")


def riesz_multiplier_radial(
    setup: MultiplicitySetup,
    F: RadialProfile,
    params: RieszParams,
    x,
    quad: QuadratureSpec = DEFAULT_QUAD,
    closed_form: bool | None = None,
) -> Array:
    """I_alpha f(x) for radial f = F(|x|) via the multiplier rho^-alpha.

    The closed-form transform is used when the catalog has one (unless
    ``closed_form`` is False); otherwise the forward transform is computed
    by quadrature at every node of the inverse integral.  ``x`` may be a
    radius or an array of points of shape (..., d).
    """
    _check(setup, params)
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1) if (x.ndim and x.shape[-1] == setup.d and setup.d > 1) else np.abs(x)
    use_closed = F.transform is not None if closed_form is None else closed_form
    prof = transform_profile(setup, F, rho=[0.0], quad=quad, closed_form=use_closed)
    N = setup.hom_dim
    nu = N / 2.0 - 1.0
    val = hankel_integral(prof.func, nu, r, N - 1.0 - params.alpha, prof.decay, quad)
    return setup.mehta * setup.sphere * val


def classical_riesz_1d(f: Callable[[float], float], alpha: float, x: float, support: float = math.inf) -> float:
    """Classical k = 0, d = 1 potential by direct convolution with adaptive quadrature.

    Gamma((1-alpha)/2) / (2^alpha sqrt(pi) Gamma(alpha/2)) int f(y) |x - y|^(alpha - 1) dy.
    """
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange("the classical one-dimensional potential needs 0 < alpha < 1")
    const = math.gamma((1.0 - alpha) / 2.0) / (2.0**alpha * math.sqrt(math.pi) * math.gamma(alpha / 2.0))
    L = 1.0
    lo, hi = -support, support
    total = 0.0
    # singular pieces [x - L, x] and [x, x + L] with the algebraic weight, then the rest
    a, b = max(x - L, lo), min(x + L, hi)
    if a < x:
        total += integrate.quad(f, a, x, weight="alg", wvar=(0.0, alpha - 1.0), epsabs=0, epsrel=1e-13, limit=200)[0]
    if x < b:
        total += integrate.quad(f, x, b, weight="alg", wvar=(alpha - 1.0, 0.0), epsabs=0, epsrel=1e-13, limit=200)[0]
    g = lambda y: f(y) * abs(x - y) ** (alpha - 1.0)
    if lo < a:
        total += integrate.quad(g, lo, a, epsabs=0, epsrel=1e-13, limit=200)[0]
    if b < hi:
        total += integrate.quad(g, b, hi, epsabs=0, epsrel=1e-13, limit=200)[0]
    return const * total


@dataclass
class DecayFitReport:
    radii: Array
    values: Array
    slope: float
    expected: float
    residual: float
    wall_time: float = 0.0

    @property
    def deviation(self) -> float:
        return abs(self.slope - self.expected)

    def as_dict(self) -> dict:
        return {
            "radii": self.radii.tolist(),
            "values": self.values.tolist(),
            "slope": self.slope,
            "expected": self.expected,
            "residual": self.residual,
            "wall_time": self.wall_time,
        }


def decay_fit(
    setup: MultiplicitySetup,
    f: FunctionSpec | RadialProfile,
    params: RieszParams,
    radii: Sequence[float] | None = None,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> DecayFitReport:
    """Least-squares slope of log I_alpha f against log |x| on a geometric ray (default 10..1000)."""
    _check(setup, params)
    t0 = time.perf_counter()
    grid = np.geomspace(10.0, 1e3, 9) if radii is None else np.asarray(radii, dtype=float)
    vals = np.asarray(riesz_subordination(setup, f, params, grid, quad))
    if np.any(vals <= 0):
        raise ParameterOutOfRange("non-positive potential values; f must be non-negative")
    coef, res, *_ = np.polyfit(np.log(grid), np.log(vals), 1, full=True)
    resid = float(np.sqrt(res[0] / grid.size)) if res.size else 0.0
    return DecayFitReport(grid, vals, float(coef[0]), params.decay_exponent, resid, time.perf_counter() - t0)


@dataclass
class PsiProbeReport:
    points: Array
    values: Array
    maximum: float
    refined_maximum: float

    @property
    def stability(self) -> float:
        """Relative change of the maximum under quadrature refinement."""
        return abs(self.refined_maximum - self.maximum) / max(abs(self.maximum), 1e-300)

    def as_dict(self) -> dict:
        return {
            "points": self.points.tolist(),
            "values": self.values.tolist(),
            "maximum": self.maximum,
            "refined_maximum": self.refined_maximum,
            "stability": self.stability,
        }


def psi_probe(
    setup: MultiplicitySetup,
    f: FunctionSpec | RadialProfile,
    params: RieszParams,
    points: Sequence[float],
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> PsiProbeReport:
    """Sample Psi(x) (the subordination integral with f weighted by (1+|y|)^(2gamma+d-alpha)).

    Finite samples only give evidence of boundedness; the report carries
    the maximum at the given and at a refined quadrature.
    """
    _check(setup, params)
    f = _as_function(f)
    power = setup.hom_dim - params.alpha
    g = FunctionSpec(
        name=f"{f.name}*(1+|y|)^{power:g}",
        d=1,
        func=lambda y: f.func(y) * (1.0 + np.abs(y[..., 0])) ** power,
        decay=Decay(f.decay.kind, f.decay.rate, f.decay.power + power, f.decay.coef * 2.0**power),
        parity=f.parity,
        radial=f.radial,
    )
    pts = np.asarray(points, dtype=float)

    def run(q):
        return np.array([subordination_integral(setup, g, params.a, params.alpha, float(p), q) for p in pts])

    vals = run(quad)
    ref = run(quad.refined())
    return PsiProbeReport(pts, vals, float(np.max(vals)), float(np.max(ref)))


def maximal_constant(setup: MultiplicitySetup, alpha: float) -> float:
    """m_k = (c_k 2^{gamma+d/2} Gamma(gamma+d/2+1))^{alpha/N - 1}; equals nu_k(B(0,1)) at alpha = 0."""
    mu = setup.gamma + setup.d / 2.0
    return (setup.mehta * 2.0**mu * math.gamma(mu + 1.0)) ** (alpha / setup.hom_dim - 1.0)


@dataclass
class MaximalValue:
    value: float
    r_star: float
    radii: Array = field(repr=False)
    averages: Array = field(repr=False)

    def __float__(self) -> float:
        return self.value

    @property
    def at_boundary(self) -> bool:
        """True when the supremum sits at an end of the radius grid."""
        return self.r_star in (self.radii[0], self.radii[-1])


def ball_average(
    setup: MultiplicitySetup, f: FunctionSpec, x: float, r: float, quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """int |f(y)| tau_x chi_{B_r}(y) d nu_k(y) on the line."""
    k = setup.k[0]
    ax = abs(x)
    Y = min(ax + r, _support_radius(f, k, quad) if f.decay.kind != "compact" else f.decay.rate)
    bps = [abs(ax - r), ax + r, *_breakpoints(f)]
    width = min(quad.panel_width * f.decay.length, max(r, 1e-3))
    y, w = breakpoint_rule(0.0, Y, bps, width, quad.nodes, 2.0 * k, quad.grading)
    fv = np.abs(f.func(y[..., None])) * translate_ball_1d(k, r, x, y)
    fv = fv + np.abs(f.func(-y[..., None])) * translate_ball_1d(k, r, x, -y)
    return float(np.sum(w * fv))


def fractional_maximal(
    setup: MultiplicitySetup,
    f: FunctionSpec | RadialProfile,
    alpha: float,
    x: float,
    radii: Sequence[float] | None = None,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> MaximalValue:
    """sup_r (m_k r^{N - alpha})^{-1} int |f| tau_x chi_{B_r} d nu_k over a geometric radius grid.

    ``alpha = 0`` gives the uncentred Hardy-Littlewood average.
    """
    if setup.d != 1:
        raise ParameterOutOfRange("the fractional maximal operator is evaluated in d = 1")
    if not 0.0 <= alpha < setup.hom_dim:
        raise AlphaOutOfRange(f"alpha must lie in [0, {setup.hom_dim:g})")
    f = _as_function(f)
    grid = np.geomspace(1e-2, 1e3, 64) * f.decay.length if radii is None else np.asarray(radii, dtype=float)
    mk = maximal_constant(setup, alpha)
    avg = np.array([ball_average(setup, f, x, float(r), quad) for r in grid])
    avg = avg / (mk * grid ** (setup.hom_dim - alpha))
    i = int(np.argmax(avg))
    return MaximalValue(float(avg[i]), float(grid[i]), grid, avg)


@dataclass
class TwoWeightReport:
    """||I_alpha f||_{q,u} / ||f||_{p,v} over a family of dilates."""

    lambdas: Array
    ratios: Array
    refined_ratios: Array | None
    parameters: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.ratios))

    @property
    def spread(self) -> float:
        return float((self.ratios.max() - self.ratios.min()) / self.ratios.mean())

    @property
    def drift(self) -> float | None:
        if self.refined_ratios is None:
            return None
        return float(abs(np.max(self.refined_ratios) - self.max_ratio) / self.max_ratio)

    def as_dict(self) -> dict:
        return {
            "lambdas": self.lambdas.tolist(),
            "ratios": self.ratios.tolist(),
            "refined_ratios": None if self.refined_ratios is None else self.refined_ratios.tolist(),
            "max_ratio": self.max_ratio,
            "spread": self.spread,
            "drift": self.drift,
            "parameters": self.parameters,
            "wall_time": self.wall_time,
        }


def _potential_on_grid(
    setup: MultiplicitySetup, F: RadialProfile, params: RieszParams, r: Array, quad: QuadratureSpec
) -> Array:
    # the inverse-integral panel width follows the largest radius, so evaluate a decade at a time
    out = np.empty_like(r)
    decade = np.floor(np.log10(np.maximum(r / F.length, 1e-300)))
    for dv in np.unique(decade):
        sel = decade == dv
        out[sel] = riesz_multiplier_radial(setup, F, params, r[sel], quad)
    return out


def weighted_norm_p(
    setup: MultiplicitySetup,
    values: Callable[[Array], Array] | Array,
    r: Array,
    w: Array,
    weight: Callable[[Array], Array],
    p: float,
) -> float:
    """(d_k int |g(r)|^p W(r) r^{N-1} dr)^(1/p) on a precomputed rule (r, w) that carries r^{N-1}."""
    g = values(r) if callable(values) else values
    return float(setup.mehta * setup.sphere * np.sum(w * np.abs(g) ** p * weight(r))) ** (1.0 / p)


def two_weight_ratio(
    setup: MultiplicitySetup,
    F: RadialProfile,
    params: RieszParams,
    u: Callable[[Array], Array],
    v: Callable[[Array], Array],
    p: float,
    q: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    span: tuple[float, float] = (1e-6, 1e2),
    per_decade: int = 4,
) -> float:
    """||I_alpha F||_{L^q(u)} / ||F||_{L^p(v)} for a non-negative radial F and radial weights u, v."""
    _check(setup, params)
    N = setup.hom_dim
    L = F.length
    lo, hi = span
    n_dec = int(round(math.log10(hi / lo)))
    edges = np.concatenate([[0.0], np.geomspace(lo, hi, n_dec * per_decade + 1) * L])
    r, w = power_composite(edges, quad.nodes, N - 1.0)
    If = _potential_on_grid(setup, F, params, r, quad)
    num = weighted_norm_p(setup, If, r, w, u, q)
    R = F.decay.radius(N - 1.0, quad.tolerance, p=p)
    r2, w2 = power_composite(uniform_edges(0.0, R, quad.panel_width * L, F.breakpoints), quad.nodes, N - 1.0)
    den = weighted_norm_p(setup, F, r2, w2, v, p)
    return num / den


def two_weight_family(
    setup: MultiplicitySetup,
    F: RadialProfile,
    params: RieszParams,
    u: Callable[[Array], Array],
    v: Callable[[Array], Array],
    p: float,
    q: float,
    lambdas: Sequence[float] = tuple(np.geomspace(0.25, 8.0, 12)),
    quad: QuadratureSpec = DEFAULT_QUAD,
    refine: bool = True,
) -> TwoWeightReport:
    """Ratios over the dilates F(lambda r), optionally repeated with a refined rule."""
    t0 = time.perf_counter()
    lam = np.asarray(lambdas, dtype=float)
    ratios = np.array([two_weight_ratio(setup, F.dilate(float(l)), params, u, v, p, q, quad) for l in lam])
    fine = None
    if refine:
        qr = quad.refined()
        fine = np.array([two_weight_ratio(setup, F.dilate(float(l)), params, u, v, p, q, qr, per_decade=8) for l in lam])
    pars = {"alpha": params.alpha, "p": p, "q": q, "profile": F.name, "quad": quad.as_dict()}
    return TwoWeightReport(lam, ratios, fine, pars, time.perf_counter() - t0)


def empirical_two_weight(
    setup: MultiplicitySetup,
    u: WeightSpec,
    v: WeightSpec,
    p: float,
    q: float,
    r: float,
    alpha: float,
    family: Sequence[RadialProfile] | None = None,
    quad: QuadratureSpec = DEFAULT_QUAD,
) -> InequalityReport:
    """Conditions plus the largest observed ||I_alpha f||_{q,u} / ||f||_{p,v} over ``family``.

    The default family is 12 Gaussian dilates; the refined constant repeats
    the computation with :meth:`QuadratureSpec.refined`.
    """
    t0 = time.perf_counter()
    rep = theorem41_conditions(setup, u, v, p, q, r, alpha)
    params = RieszParams(alpha, setup)
    if family is None:
        base = gaussian()
        family = [base.dilate(float(l)) for l in np.geomspace(0.25, 8.0, 12)]
    fine = quad.refined()
    for F in family:
        coarse = two_weight_ratio(setup, F, params, u, v, p, q, quad)
        refined = two_weight_ratio(setup, F, params, u, v, p, q, fine, per_decade=8)
        rep.samples.append({"profile": F.name, "ratio": coarse, "refined_ratio": refined})
    rep.best_constant = max(s["ratio"] for s in rep.samples)
    rep.refined_constant = max(s["refined_ratio"] for s in rep.samples)
    rep.title = "Riesz potential two-weight inequality"
    rep.wall_time = time.perf_counter() - t0
    return rep
