"""Distribution functions, decreasing rearrangements and Hardy-type two-weight conditions.

For a non-increasing radial profile F the rearrangement is explicit:

    D_f(s) = (d_k / N) (F^{-1}(s))^N,     f*(t) = F(r(t)),  r(t) = (N t / d_k)^(1/N).

Rearranged power and broken-power weights are piecewise power functions
of t, so every Hardy-type integral in the two-weight conditions has a closed
form.  The verdict of a condition comes from the power behaviour of its
factors at s -> 0 and s -> inf (exponent algebra); the supremum over a
geometric s-grid is reported next to it as numeric confirmation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .catalog import RadialProfile
from .errors import NegativeArgument, OverlappingCells, ParameterOutOfRange
from .measure import MultiplicitySetup

Array = np.ndarray
_EPS = 1e-12


# ---------------------------------------------------------------- piecewise powers on (0, inf)


@dataclass(frozen=True)
class PiecewisePower:
    """g(t) = coefs[i] * t**exps[i] on [breaks[i], breaks[i+1]), breaks[0] = 0, last piece to infinity.

    ``infinite`` marks the identically infinite function (rearrangement of an
    unbounded weight).
    """

    breaks: tuple[float, ...] = (0.0,)
    coefs: tuple[float, ...] = (1.0,)
    exps: tuple[float, ...] = (0.0,)
    infinite: bool = False

    def __post_init__(self):
        if not (len(self.breaks) == len(self.coefs) == len(self.exps)) or self.breaks[0] != 0.0:
            raise ParameterOutOfRange("malformed piecewise power")

    @classmethod
    def power(cls, exponent: float, coef: float = 1.0) -> "PiecewisePower":
        return cls((0.0,), (float(coef),), (float(exponent),))

    @classmethod
    def broken(cls, inner: float, outer: float, at: float, coef: float = 1.0) -> "PiecewisePower":
        """Continuous coef t^inner for t < at, coef at^(inner-outer) t^outer beyond."""
        return cls((0.0, float(at)), (coef, coef * at ** (inner - outer)), (float(inner), float(outer)))

    @classmethod
    def infinity(cls) -> "PiecewisePower":
        return cls(infinite=True)

    def __call__(self, t) -> Array:
        t = np.asarray(t, dtype=float)
        if self.infinite:
            return np.full(t.shape, np.inf)
        idx = np.searchsorted(np.asarray(self.breaks), t, side="right") - 1
        c = np.asarray(self.coefs)[idx]
        e = np.asarray(self.exps)[idx]
        with np.errstate(divide="ignore"):
            return c * t**e

    def __pow__(self, a: float) -> "PiecewisePower":
        if self.infinite:
            return self if a > 0 else PiecewisePower.power(0.0, 0.0)
        return PiecewisePower(self.breaks, tuple(c**a for c in self.coefs), tuple(e * a for e in self.exps))

    def times_power(self, e: float, coef: float = 1.0) -> "PiecewisePower":
        if self.infinite:
            return self
        return PiecewisePower(self.breaks, tuple(coef * c for c in self.coefs), tuple(x + e for x in self.exps))

    @property
    def exponent_at_zero(self) -> float:
        return self.exps[0]

    @property
    def exponent_at_infinity(self) -> float:
        return self.exps[-1]

    def _piece_integral(self, i: int, a: Array, b: Array) -> Array:
        c, e = self.coefs[i], self.exps[i]
        if c == 0.0:
            return np.zeros_like(a)
        with np.errstate(divide="ignore", invalid="ignore"):
            if abs(e + 1.0) < _EPS:
                return c * (np.log(b) - np.log(a))
            return c * (b ** (e + 1.0) - a ** (e + 1.0)) / (e + 1.0)

    def integral(self, a, b) -> Array:
        """int_a^b g(t) dt (vectorised, inf when divergent)."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
        if self.infinite:
            return np.where(b > a, np.inf, 0.0)
        out = np.zeros(a.shape)
        edges = list(self.breaks) + [np.inf]
        for i in range(len(self.breaks)):
            lo = np.clip(a, edges[i], edges[i + 1])
            hi = np.clip(b, edges[i], edges[i + 1])
            mask = hi > lo
            if not np.any(mask):
                continue
            e = self.exps[i]
            piece = np.zeros(a.shape)
            piece[mask] = self._piece_integral(i, lo[mask], hi[mask])
            # divergence at an open end
            if i == 0 and e <= -1.0 and self.coefs[0] != 0.0:
                piece = np.where(mask & (lo == 0.0), np.inf, piece)
            if i == len(self.breaks) - 1 and e >= -1.0 and self.coefs[-1] != 0.0:
                piece = np.where(mask & np.isinf(hi), np.inf, piece)
            out = out + piece
        return out

    def head(self, s) -> Array:
        """int_0^s g."""
        return self.integral(0.0, s)

    def tail(self, s) -> Array:
        """int_s^inf g."""
        return self.integral(s, np.inf)


@dataclass(frozen=True)
class Asymptotics:
    """Behaviour C s^exponent (log s)^log_power of a positive function of s; ``infinite`` if identically inf."""

    exponent: float = 0.0
    log_power: float = 0.0
    infinite: bool = False

    def __mul__(self, other: "Asymptotics") -> "Asymptotics":
        if self.infinite or other.infinite:
            return Asymptotics(infinite=True)
        return Asymptotics(self.exponent + other.exponent, self.log_power + other.log_power)

    def __pow__(self, a: float) -> "Asymptotics":
        if self.infinite:
            return self
        return Asymptotics(self.exponent * a, self.log_power * a)


def _head_asymptotics(g: PiecewisePower) -> tuple[Asymptotics, Asymptotics]:
    """Behaviour of int_0^s g at s -> 0 and s -> inf."""
    if g.infinite or (g.exponent_at_zero <= -1.0 and g.coefs[0] != 0.0):
        return Asymptotics(infinite=True), Asymptotics(infinite=True)
    e0, einf = g.exponent_at_zero, g.exponent_at_infinity
    at0 = Asymptotics(e0 + 1.0)
    if abs(einf + 1.0) < _EPS:
        atinf = Asymptotics(0.0, 1.0)
    elif einf > -1.0:
        atinf = Asymptotics(einf + 1.0)
    else:
        atinf = Asymptotics(0.0)
    return at0, atinf


def _tail_asymptotics(g: PiecewisePower) -> tuple[Asymptotics, Asymptotics]:
    """Behaviour of int_s^inf g at s -> 0 and s -> inf."""
    if g.infinite or (g.exponent_at_infinity >= -1.0 and g.coefs[-1] != 0.0):
        return Asymptotics(infinite=True), Asymptotics(infinite=True)
    e0, einf = g.exponent_at_zero, g.exponent_at_infinity
    atinf = Asymptotics(einf + 1.0)
    if abs(e0 + 1.0) < _EPS:
        at0 = Asymptotics(0.0, 1.0)
    elif e0 < -1.0:
        at0 = Asymptotics(e0 + 1.0)
    else:
        at0 = Asymptotics(0.0)
    return at0, atinf


# ---------------------------------------------------------------- reports


@dataclass
class ConditionResult:
    """One sup_s condition: analytic exponents, verdict and grid confirmation."""

    name: str
    anchor: str
    exponent_at_zero: float
    exponent_at_infinity: float
    analytic_finite: bool
    grid_sup: float
    refined_sup: float

    @property
    def stability(self) -> float:
        if not (math.isfinite(self.grid_sup) and math.isfinite(self.refined_sup)):
            return math.inf
        return abs(self.refined_sup - self.grid_sup) / max(abs(self.refined_sup), 1e-300)

    @property
    def verdict(self) -> str:
        ok = self.analytic_finite and math.isfinite(self.grid_sup) and self.stability < 1e-2
        return "finite" if ok else "diverging"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "exponent_at_zero": _json_float(self.exponent_at_zero),
            "exponent_at_infinity": _json_float(self.exponent_at_infinity),
            "analytic_finite": self.analytic_finite,
            "grid_sup": _json_float(self.grid_sup),
            "refined_sup": _json_float(self.refined_sup),
            "stability": _json_float(self.stability),
            "verdict": self.verdict,
        }


def _json_float(v: float):
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


@dataclass
class InequalityReport:
    """Condition results plus optional empirical constants from a test family."""

    title: str
    conditions: list[ConditionResult] = field(default_factory=list)
    best_constant: float | None = None
    refined_constant: float | None = None
    samples: list[dict] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def verdict(self) -> str:
        return "finite" if all(c.verdict == "finite" for c in self.conditions) else "diverging"

    @property
    def drift(self) -> float | None:
        if self.best_constant is None or self.refined_constant is None:
            return None
        return abs(self.refined_constant - self.best_constant) / abs(self.refined_constant)

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "conditions": [c.as_dict() for c in self.conditions],
            "best_constant": self.best_constant,
            "refined_constant": self.refined_constant,
            "drift": self.drift,
            "samples": self.samples,
            "wall_time": self.wall_time,
        }


# A factor of a condition: ("head" | "tail", g, power) is (int g)^power; ("monomial", e, power) is s^(e*power).
Factor = tuple


def _factor_values(factor: Factor, s: Array) -> Array:
    kind, g, power = factor
    if kind == "monomial":
        return s ** (g * power)
    vals = g.head(s) if kind == "head" else g.tail(s)
    with np.errstate(over="ignore"):
        return vals**power


def _factor_asymptotics(factor: Factor) -> tuple[Asymptotics, Asymptotics]:
    kind, g, power = factor
    if kind == "monomial":
        return Asymptotics(g * power), Asymptotics(g * power)
    at0, atinf = _head_asymptotics(g) if kind == "head" else _tail_asymptotics(g)
    return at0**power, atinf**power


def evaluate_condition(name: str, anchor: str, factors: Sequence[Factor], span: float = 1e6, points: int = 241) -> ConditionResult:
    """sup_{s > 0} of a product of factors: analytic asymptotics plus geometric-grid confirmation."""
    at0 = Asymptotics()
    atinf = Asymptotics()
    for f in factors:
        a0, ai = _factor_asymptotics(f)
        at0, atinf = at0 * a0, atinf * ai
    if at0.infinite or atinf.infinite:
        finite = False
        e0 = einf = math.inf
    else:
        e0, einf = at0.exponent, atinf.exponent
        ok0 = e0 > _EPS or (abs(e0) <= _EPS and at0.log_power <= 0.0)
        # as s -> 0, log s -> -inf, so (log)^positive grows
        okinf = einf < -_EPS or (abs(einf) <= _EPS and atinf.log_power <= 0.0)
        finite = ok0 and okinf

    def grid_sup(n):
        s = np.geomspace(1.0 / span, span, n)
        vals = np.ones_like(s)
        for f in factors:
            vals = vals * _factor_values(f, s)
        return float(np.max(vals))

    return ConditionResult(name, anchor, e0, einf, finite, grid_sup(points), grid_sup(2 * points - 1))


# ---------------------------------------------------------------- weights on R^d


@dataclass(frozen=True)
class WeightSpec:
    """Radial weight on R^d: ``power`` |x|^delta, ``constant`` c, or ``broken_power``.

    ``broken_power`` is |x|^inner for |x| < radius and continues as a
    multiple of |x|^outer beyond.
    """

    kind: str
    delta: float = 0.0
    coef: float = 1.0
    outer: float = 0.0
    radius: float = 1.0

    def __post_init__(self):
        if self.kind not in ("power", "constant", "broken_power"):
            raise ParameterOutOfRange(f"unknown weight kind {self.kind!r}")
        if self.coef <= 0 or self.radius <= 0:
            raise ParameterOutOfRange("weight coefficient and radius must be positive")

    @classmethod
    def power(cls, delta: float, coef: float = 1.0) -> "WeightSpec":
        return cls("power", float(delta), float(coef))

    @classmethod
    def constant(cls, c: float = 1.0) -> "WeightSpec":
        return cls("constant", 0.0, float(c))

    @classmethod
    def broken_power(cls, inner: float, outer: float, radius: float = 1.0) -> "WeightSpec":
        return cls("broken_power", float(inner), 1.0, float(outer), float(radius))

    def check_integrable(self, setup: MultiplicitySetup) -> None:
        if self.kind != "constant" and self.delta <= -setup.hom_dim:
            raise ParameterOutOfRange(f"|x|^{self.delta} is not locally integrable for N = {setup.hom_dim:g}")

    def radial(self) -> PiecewisePower:
        """Profile as a function of the radius."""
        if self.kind == "constant":
            return PiecewisePower.power(0.0, self.coef)
        if self.kind == "power":
            return PiecewisePower.power(self.delta, self.coef)
        return PiecewisePower.broken(self.delta, self.outer, self.radius, self.coef)

    def __call__(self, r) -> Array:
        return self.radial()(np.abs(np.asarray(r, dtype=float)))

    def reciprocal(self) -> "WeightSpec":
        if self.kind == "constant":
            return WeightSpec.constant(1.0 / self.coef)
        if self.kind == "power":
            return WeightSpec.power(-self.delta, 1.0 / self.coef)
        return WeightSpec("broken_power", -self.delta, 1.0 / self.coef, -self.outer, self.radius)

    def scaled(self, c: float) -> "WeightSpec":
        return WeightSpec(self.kind, self.delta, self.coef * c, self.outer, self.radius)

    @property
    def non_increasing(self) -> bool:
        g = self.radial()
        return all(e <= 0.0 for e in g.exps)

    def rearrangement(self, setup: MultiplicitySetup) -> PiecewisePower:
        """w*(t) as a piecewise power in t; identically infinite when w is unbounded at infinity."""
        g = self.radial()
        if g.exponent_at_infinity > 0.0:
            return PiecewisePower.infinity()
        if not self.non_increasing:
            raise ParameterOutOfRange("closed-form rearrangement needs a non-increasing weight")
        # r(t) = (N t / d_k)^(1/N): r^e = (N/d_k)^(e/N) t^(e/N)
        N, dk = setup.hom_dim, setup.sphere
        scale = N / dk
        breaks = tuple(dk * b**N / N for b in g.breaks)
        coefs = tuple(c * scale ** (e / N) for c, e in zip(g.coefs, g.exps))
        exps = tuple(e / N for e in g.exps)
        return PiecewisePower(breaks, coefs, exps)


# ---------------------------------------------------------------- distribution / rearrangement


def _radius_of_mass(setup: MultiplicitySetup, t) -> Array:
    return (setup.hom_dim * np.asarray(t, dtype=float) / setup.sphere) ** (1.0 / setup.hom_dim)


def distribution_function(setup: MultiplicitySetup, f: RadialProfile | WeightSpec, s) -> Array:
    """D_f(s) = nu_k{|f| > s} for non-increasing radial f (inf where the level set is unbounded)."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise NegativeArgument("distribution function needs s >= 0")
    N = setup.hom_dim
    if isinstance(f, WeightSpec):
        g = f.radial()
        if not f.non_increasing:
            return np.full(s.shape, np.inf) if s.ndim else math.inf
        radius = _inverse_piecewise(g, s)
    else:
        if f.inverse is None:
            raise ParameterOutOfRange(f"profile {f.name!r} has no generalized inverse; use rearrangement_numeric")
        radius = np.asarray(f.inverse(s), dtype=float)
    out = setup.sphere / N * radius**N
    return out if out.ndim else float(out)


def _inverse_piecewise(g: PiecewisePower, s: Array) -> Array:
    """sup{r : g(r) > s} for non-increasing piecewise power g; the outermost piece where g exceeds s decides."""
    s = np.asarray(s, dtype=float)
    out = np.zeros(s.shape)
    found = np.zeros(s.shape, dtype=bool)
    n = len(g.breaks)
    for i in range(n - 1, -1, -1):
        c, e, lo = g.coefs[i], g.exps[i], g.breaks[i]
        hi = g.breaks[i + 1] if i + 1 < n else np.inf
        with np.errstate(divide="ignore", over="ignore"):
            start = c * lo**e if lo > 0 else (np.inf if e < 0 else c)
            if e == 0.0:
                r = np.full(s.shape, hi)
            else:
                r = np.minimum((s / c) ** (1.0 / e), hi)
        hit = ~found & (start > s)
        out = np.where(hit, r, out)
        found |= hit
    return out


def decreasing_rearrangement(setup: MultiplicitySetup, f: RadialProfile | WeightSpec, t) -> Array:
    """f*(t) = inf{s >= 0 : D_f(s) <= t} for non-increasing radial f."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise NegativeArgument("rearrangement needs t >= 0")
    if isinstance(f, WeightSpec):
        out = f.rearrangement(setup)(t)
    else:
        if not f.monotone:
            raise ParameterOutOfRange(f"profile {f.name!r} is not non-increasing; use rearrangement_numeric")
        out = f(_radius_of_mass(setup, t))
    return out if out.ndim else float(out)


@dataclass
class RearrangementTable:
    """Step function f* on (0, inf): value ``values[i]`` on [t[i], t[i+1]); zero after t[-1]."""

    t: Array
    values: Array

    def __post_init__(self):
        if self.t.size != self.values.size + 1:
            raise ParameterOutOfRange("need one more edge than values")
        if np.any(np.diff(self.values) > 0):
            raise ParameterOutOfRange("rearrangement values must be non-increasing")

    def __call__(self, s) -> Array:
        s = np.asarray(s, dtype=float)
        idx = np.searchsorted(self.t, s, side="right") - 1
        ok = (idx >= 0) & (idx < self.values.size)
        out = np.where(ok, self.values[np.clip(idx, 0, self.values.size - 1)], 0.0)
        return out if out.ndim else float(out)

    @property
    def total_mass(self) -> float:
        return float(self.t[-1])

    def lp_norm_p(self, p: float = 1.0) -> float:
        """int_0^inf (f*)^p dt."""
        return float(np.sum(np.diff(self.t) * self.values**p))

    def distribution(self, s) -> Array:
        """Lebesgue measure of {f* > s}."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        lengths = np.diff(self.t)
        return np.array([float(np.sum(lengths[self.values > v])) for v in s])

    def integral_weighted(self, a: float, b: float, power: float) -> float:
        """int_a^b s^power f*(s) ds (power > -1 or a > 0)."""
        lo = np.clip(self.t[:-1], a, b)
        hi = np.clip(self.t[1:], a, b)
        if abs(power + 1.0) < _EPS:
            with np.errstate(divide="ignore", invalid="ignore"):
                pieces = np.where(hi > lo, np.log(hi) - np.log(np.where(lo > 0, lo, 1.0)), 0.0)
        else:
            pieces = (hi ** (power + 1.0) - lo ** (power + 1.0)) / (power + 1.0)
        return float(np.sum(np.where(hi > lo, pieces, 0.0) * self.values))


def rearrangement_numeric(setup: MultiplicitySetup, radii: Sequence[float], values: Sequence[float]) -> RearrangementTable:
    """f* from |f| sampled on annular cells [radii[i], radii[i+1]) (sort by value, accumulate nu_k-masses)."""
    r = np.asarray(radii, dtype=float)
    v = np.abs(np.asarray(values, dtype=float))
    if r.size != v.size + 1:
        raise ParameterOutOfRange("need one more radius than cell values")
    if np.any(np.diff(r) <= 0) or r[0] < 0:
        raise OverlappingCells("cell radii must be strictly increasing and non-negative")
    N = setup.hom_dim
    masses = setup.sphere / N * (r[1:] ** N - r[:-1] ** N)
    order = np.argsort(-v, kind="stable")
    edges = np.concatenate([[0.0], np.cumsum(masses[order])])
    return RearrangementTable(edges, v[order])


def sample_profile(setup: MultiplicitySetup, F, radii: Sequence[float]) -> RearrangementTable:
    """Numeric f* of a radial profile sampled at geometric cell midpoints."""
    r = np.asarray(radii, dtype=float)
    mid = np.where(r[:-1] > 0, np.sqrt(r[:-1] * r[1:]), 0.5 * r[1:])
    return rearrangement_numeric(setup, r, F(mid))


# ---------------------------------------------------------------- Hardy conditions


def _conjugate(p: float) -> float:
    return p / (p - 1.0)


def _check_pq(p: float, q: float) -> None:
    if not (1.0 < p <= q < math.inf):
        raise ParameterOutOfRange(f"need 1 < p <= q < inf, got p={p}, q={q}")


def hardy_condition_primal(mu: PiecewisePower, theta: PiecewisePower, p: float, q: float) -> InequalityReport:
    """sup_s (int_s^inf mu)^(1/q) (int_0^s theta^(1-p'))^(1/p') for the Hardy averaging operator."""
    _check_pq(p, q)
    pc = _conjugate(p)
    cond = evaluate_condition(
        "hardy-primal",
        "Hardy inequality for the averaging operator",
        [("tail", mu, 1.0 / q), ("head", theta ** (1.0 - pc), 1.0 / pc)],
    )
    return InequalityReport("Hardy primal condition", [cond], parameters={"p": p, "q": q})


def hardy_condition_dual(mu: PiecewisePower, theta: PiecewisePower, p: float, q: float) -> InequalityReport:
    """sup_s (int_0^s mu)^(1/q) (int_s^inf theta^(1-p'))^(1/p') for the dual (tail) operator."""
    _check_pq(p, q)
    pc = _conjugate(p)
    cond = evaluate_condition(
        "hardy-dual",
        "Hardy inequality for the dual operator",
        [("head", mu, 1.0 / q), ("tail", theta ** (1.0 - pc), 1.0 / pc)],
    )
    return InequalityReport("Hardy dual condition", [cond], parameters={"p": p, "q": q})


def _check_theorem41(setup, p, q, r, alpha) -> None:
    N = setup.hom_dim
    if not 0.0 < alpha < N:
        raise ParameterOutOfRange(f"alpha must lie in (0, {N:g})")
    if not 1.0 < r < N / alpha:
        raise ParameterOutOfRange(f"r must lie in (1, {N / alpha:g})")
    _check_pq(p, q)


def theorem41_conditions(
    setup: MultiplicitySetup, u: WeightSpec, v: WeightSpec, p: float, q: float, r: float, alpha: float
) -> InequalityReport:
    """The two rearrangement conditions for I_alpha : L^p(v) -> L^q(u)."""
    t0 = time.perf_counter()
    _check_theorem41(setup, p, q, r, alpha)
    u.check_integrable(setup)
    v.check_integrable(setup)
    N = setup.hom_dim
    pc = _conjugate(p)
    us = u.rearrangement(setup)
    vs = v.reciprocal().rearrangement(setup)
    inv_v = vs ** (pc - 1.0)
    first = evaluate_condition(
        "two-weight-small-scale",
        "two-weight condition, weak-type (1, N/(N-alpha)) endpoint",
        [("tail", us.times_power(-q * (1.0 - alpha / N)), 1.0 / q), ("head", inv_v, 1.0 / pc)],
    )
    second = evaluate_condition(
        "two-weight-large-scale",
        "two-weight condition, strong-type (r, Nr/(N-alpha r)) endpoint",
        [("head", us.times_power(-q * (1.0 / r - alpha / N)), 1.0 / q), ("tail", inv_v.times_power(pc * (1.0 / r - 1.0)), 1.0 / pc)],
    )
    params = {"p": p, "q": q, "r": r, "alpha": alpha, "u": _weight_dict(u), "v": _weight_dict(v)}
    return InequalityReport("Riesz potential two-weight conditions", [first, second], parameters=params, wall_time=time.perf_counter() - t0)


def _weight_dict(w: WeightSpec) -> dict:
    return {"kind": w.kind, "delta": w.delta, "coef": w.coef, "outer": w.outer, "radius": w.radius}


def corollary_power_verdict(setup: MultiplicitySetup, p: float, alpha: float, beta: float, delta: float) -> bool:
    """Closed-form answer for power weights with p = q = r and delta < 0: 0 < beta < N(p-1), beta = delta + alpha p."""
    N = setup.hom_dim
    return delta < 0.0 and 0.0 < beta < N * (p - 1.0) and abs(beta - (delta + alpha * p)) < 1e-12


def calderon_majorant(table: RearrangementTable, t, alpha: float, r: float, setup: MultiplicitySetup) -> Array:
    """t^(-1/q1) int_0^t f* + t^(-1/q2) int_t^inf s^(1/r - 1) f*(s) ds.

    Endpoints (p1, q1) = (1, 1/(1 - alpha/N)), (p2, q2) = (r, 1/(1/r - alpha/N)); lambda1/lambda2 = 1.
    """
    N = setup.hom_dim
    if not 0.0 < alpha < N or not 1.0 < r < N / alpha:
        raise ParameterOutOfRange("need 0 < alpha < N and 1 < r < N/alpha")
    inv_q1 = 1.0 - alpha / N
    inv_q2 = 1.0 / r - alpha / N
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.array(
        [
            tv ** (-inv_q1) * table.integral_weighted(0.0, tv, 0.0)
            + tv ** (-inv_q2) * table.integral_weighted(tv, math.inf, 1.0 / r - 1.0)
            for tv in ts
        ]
    )
    return out.reshape(np.shape(t)) if np.ndim(t) else float(out[0])
