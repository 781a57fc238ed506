"""Catalog of test functions: radial profiles and general smooth functions on R^d.

A :class:`RadialProfile` carries the profile ``F`` of ``f(x) = F(|x|)``
plus the metadata the quadratures need: a decay envelope for tail bounds,
breakpoints, an optional closed-form Dunkl transform and, for
non-increasing profiles, a generalized inverse used by the rearrangement
code.  :class:`FunctionSpec` covers non-radial functions with exact
gradients (Dunkl operators, one-dimensional transforms of odd functions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Callable, Sequence

import numpy as np
from scipy import special as sp

from .errors import ParameterOutOfRange, TailBoundExceeded

if TYPE_CHECKING:
    from .measure import MultiplicitySetup

Array = np.ndarray


@dataclass(frozen=True)
class Decay:
    """Envelope ``coef * r**power * exp(-rate * r**order)`` bounding |F| (order 1 or 2).

    ``kind`` is one of ``compact`` (``rate`` = support radius),
    ``exponential``, ``gaussian`` or ``power`` (envelope ``coef * r**-rate``
    for ``r >= 1``).
    """

    kind: str
    rate: float
    power: float = 0.0
    coef: float = 1.0

    def __post_init__(self):
        if self.kind not in ("compact", "exponential", "gaussian", "power"):
            raise ParameterOutOfRange(f"unknown decay class {self.kind!r}")
        if self.rate <= 0:
            raise ParameterOutOfRange("decay rate must be positive")

    @property
    def length(self) -> float:
        """Natural length scale of the envelope."""
        if self.kind == "compact":
            return self.rate
        if self.kind == "exponential":
            return 1.0 / self.rate
        if self.kind == "gaussian":
            return 1.0 / math.sqrt(self.rate)
        return 1.0

    def tail(self, R: float, n: float, p: float = 1.0) -> float:
        """Upper bound for ``int_R^inf |F(r)|**p r**n dr``."""
        c = self.coef**p
        if self.kind == "compact":
            return 0.0 if R >= self.rate else math.inf
        m = p * self.power + n
        if self.kind == "exponential":
            a = p * self.rate
            return c * float(sp.gammaincc(m + 1.0, a * R) * sp.gamma(m + 1.0)) / a ** (m + 1.0)
        if self.kind == "gaussian":
            b = p * self.rate
            h = 0.5 * (m + 1.0)
            return c * float(sp.gammaincc(h, b * R * R) * sp.gamma(h)) / (2.0 * b**h)
        e = n - p * self.rate
        if e >= -1.0:
            return math.inf
        R = max(R, 1.0)
        return c * R ** (e + 1.0) / (-e - 1.0)

    def radius(self, n: float, tol: float, p: float = 1.0, scale: float | None = None) -> float:
        """Smallest R (to within a factor 1.1) with tail(R) <= tol * scale.

        ``scale`` defaults to the envelope's full integral ``tail(0)``.
        """
        if self.kind == "compact":
            return self.rate
        if self.kind == "power":
            raise TailBoundExceeded("algebraic decay: no finite truncation radius, use a tail rule")
        ref = self.tail(0.0, n, p) if scale is None else scale
        target = tol * ref
        R = self.length
        while self.tail(R, n, p) > target:
            R *= 1.1
            if R > 1e8 * self.length:
                raise TailBoundExceeded("truncation radius search diverged")
        return R

    def dilate(self, lam: float) -> "Decay":
        """Envelope of F(lam * r)."""
        if self.kind == "compact":
            return replace(self, rate=self.rate / lam)
        if self.kind == "exponential":
            return replace(self, rate=self.rate * lam, coef=self.coef * lam**self.power)
        if self.kind == "gaussian":
            return replace(self, rate=self.rate * lam * lam, coef=self.coef * lam**self.power)
        return replace(self, coef=self.coef * lam ** (-self.rate) * max(1.0, lam**self.rate))

    def slowest(self, other: "Decay") -> "Decay":
        """An envelope valid for the sum of two functions (bounds add up)."""
        order = {"compact": 0, "gaussian": 1, "exponential": 2, "power": 3}
        a, b = (self, other) if order[self.kind] >= order[other.kind] else (other, self)
        if a.kind == "compact":
            return replace(a, rate=max(a.rate, b.rate))
        if a.kind == "power":
            rate = min(a.rate, b.rate) if b.kind == "power" else a.rate
            return Decay("power", rate, 0.0, a.coef + b.coef)
        if b.kind == "compact" or a.kind != b.kind:
            # a dominates b's tail only asymptotically; keep a's shape, pad the prefactor
            return replace(a, coef=a.coef + b.coef * _peak_ratio(b, a), power=max(a.power, b.power))
        rate = min(a.rate, b.rate)
        return Decay(a.kind, rate, max(a.power, b.power), a.coef + b.coef)


def _peak_ratio(b: Decay, a: Decay) -> float:
    r = np.linspace(0.0, 60.0 * max(a.length, b.length), 4001)[1:]
    eb = _envelope(b, r)
    ea = np.maximum(_envelope(a, r), 1e-300)
    return float(np.max(eb / ea))


def _envelope(dec: Decay, r: Array) -> Array:
    if dec.kind == "compact":
        return np.where(r <= dec.rate, dec.coef, 0.0)
    if dec.kind == "exponential":
        return dec.coef * r**dec.power * np.exp(-dec.rate * r)
    if dec.kind == "gaussian":
        return dec.coef * r**dec.power * np.exp(-dec.rate * r * r)
    return dec.coef * np.maximum(r, 1.0) ** (-dec.rate)


TransformFn = Callable[["MultiplicitySetup", Array], Array]


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Profile F of a radial function f(x) = F(|x|)."""

    name: str
    func: Callable[[Array], Array]
    decay: Decay
    params: tuple = ()
    deriv: Callable[[Array], Array] | None = None
    breakpoints: tuple[float, ...] = ()
    transform: TransformFn | None = None
    transform_decay: Callable[["MultiplicitySetup"], Decay] | None = None
    inverse: Callable[[Array], Array] | None = None
    sup: float = 1.0
    nonnegative: bool = True
    schwartz: bool = False

    def __call__(self, r) -> Array:
        return self.func(np.asarray(r, dtype=float))

    @property
    def length(self) -> float:
        return self.decay.length

    @property
    def monotone(self) -> bool:
        return self.inverse is not None

    def derivative(self, r) -> Array:
        if self.deriv is None:
            raise ParameterOutOfRange(f"profile {self.name!r} has no analytic derivative")
        return self.deriv(np.asarray(r, dtype=float))

    def dilate(self, lam: float) -> "RadialProfile":
        """Profile of f(lam * x)."""
        if lam <= 0:
            raise ParameterOutOfRange("dilation factor must be positive")
        f, df, tr, inv, tdec = self.func, self.deriv, self.transform, self.inverse, self.transform_decay
        return RadialProfile(
            name=f"{self.name}@{lam:g}",
            func=lambda r: f(lam * r),
            decay=self.decay.dilate(lam),
            params=self.params + (("dilation", lam),),
            deriv=None if df is None else (lambda r: lam * df(lam * r)),
            breakpoints=tuple(b / lam for b in self.breakpoints),
            transform=None if tr is None else (lambda s, rho: lam ** (-s.hom_dim) * tr(s, np.asarray(rho) / lam)),
            transform_decay=None if tdec is None else (lambda s: _dilate_transform_decay(tdec(s), lam, s)),
            inverse=None if inv is None else (lambda y: inv(y) / lam),
            sup=self.sup,
            nonnegative=self.nonnegative,
            schwartz=self.schwartz,
        )

    def scale(self, c: float) -> "RadialProfile":
        return combine([self], [c])


def _dilate_transform_decay(dec: Decay, lam: float, setup) -> Decay:
    # transform of f(lam x) is lam^-N * hat f(rho / lam)
    out = dec.dilate(1.0 / lam)
    return replace(out, coef=out.coef * lam ** (-setup.hom_dim))


def combine(profiles: Sequence[RadialProfile], coeffs: Sequence[float]) -> RadialProfile:
    """Linear combination sum_i c_i F_i."""
    profiles = list(profiles)
    coeffs = [float(c) for c in coeffs]
    if len(profiles) != len(coeffs) or not profiles:
        raise ParameterOutOfRange("need matching non-empty profile/coefficient lists")
    dec = replace(profiles[0].decay, coef=profiles[0].decay.coef * abs(coeffs[0]))
    for p, c in zip(profiles[1:], coeffs[1:]):
        dec = dec.slowest(replace(p.decay, coef=p.decay.coef * abs(c)))

    def func(r):
        return sum(c * p.func(r) for p, c in zip(profiles, coeffs))

    deriv = None
    if all(p.deriv is not None for p in profiles):
        def deriv(r):
            return sum(c * p.deriv(r) for p, c in zip(profiles, coeffs))

    transform = None
    if all(p.transform is not None for p in profiles):
        def transform(s, rho):
            return sum(c * p.transform(s, rho) for p, c in zip(profiles, coeffs))

    tdec = None
    if all(p.transform_decay is not None for p in profiles):
        def tdec(s):
            out = None
            for p, c in zip(profiles, coeffs):
                d = p.transform_decay(s)
                d = replace(d, coef=d.coef * abs(c))
                out = d if out is None else out.slowest(d)
            return out

    inverse = profiles[0].inverse if len(profiles) == 1 and coeffs[0] == 1.0 else None
    return RadialProfile(
        name="+".join(f"{c:g}*{p.name}" for p, c in zip(profiles, coeffs)),
        func=func,
        decay=dec,
        params=tuple((p.name, c) for p, c in zip(profiles, coeffs)),
        deriv=deriv,
        breakpoints=tuple(sorted({b for p in profiles for b in p.breakpoints})),
        transform=transform,
        transform_decay=tdec,
        inverse=inverse,
        sup=sum(abs(c) * p.sup for p, c in zip(profiles, coeffs)),
        nonnegative=all(p.nonnegative for p in profiles) and all(c >= 0 for c in coeffs),
        schwartz=all(p.schwartz for p in profiles),
    )


# ---------------------------------------------------------------- radial catalog


def gaussian(b: float = 1.0) -> RadialProfile:
    """F(r) = exp(-b r^2)."""
    if b <= 0:
        raise ParameterOutOfRange("gaussian rate must be positive")

    def transform(s, rho):
        rho = np.asarray(rho, dtype=float)
        return (2.0 * b) ** (-s.hom_dim / 2.0) * np.exp(-rho * rho / (4.0 * b))

    def inverse(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            return np.where(y >= 1.0, 0.0, np.sqrt(-np.log(np.clip(y, 0.0, 1.0)) / b))

    return RadialProfile(
        name="gaussian",
        func=lambda r: np.exp(-b * r * r),
        decay=Decay("gaussian", b),
        params=(("b", b),),
        deriv=lambda r: -2.0 * b * r * np.exp(-b * r * r),
        transform=transform,
        transform_decay=lambda s: Decay("gaussian", 1.0 / (4.0 * b), 0.0, (2.0 * b) ** (-s.hom_dim / 2.0)),
        inverse=inverse,
        schwartz=True,
    )


def gaussian_moment(b: float = 1.0) -> RadialProfile:
    """F(r) = r^2 exp(-b r^2) (not monotone; transform = -d/db of the Gaussian's)."""
    if b <= 0:
        raise ParameterOutOfRange("gaussian rate must be positive")

    def transform(s, rho):
        rho = np.asarray(rho, dtype=float)
        mu = s.hom_dim / 2.0
        g = (2.0 * b) ** (-mu) * np.exp(-rho * rho / (4.0 * b))
        return g * (mu / b - rho * rho / (4.0 * b * b))

    def tdec(s):
        mu = s.hom_dim / 2.0
        return Decay("gaussian", 1.0 / (8.0 * b), 0.0, (2.0 * b) ** (-mu) * (mu / b + 2.0 / b))

    return RadialProfile(
        name="gaussian_moment",
        func=lambda r: r * r * np.exp(-b * r * r),
        decay=Decay("gaussian", b, 2.0),
        params=(("b", b),),
        deriv=lambda r: (2.0 * r - 2.0 * b * r**3) * np.exp(-b * r * r),
        transform=transform,
        transform_decay=tdec,
        sup=1.0 / (b * math.e),
        schwartz=True,
    )


def exponential(a: float = 1.0) -> RadialProfile:
    """F(r) = exp(-a r); closed-form transform c_{d,k} a^-N (1 + rho^2/a^2)^-(gamma+(d+1)/2)."""
    if a <= 0:
        raise ParameterOutOfRange("exponential rate must be positive")

    def const(s):
        return 2.0 ** (s.gamma + s.d / 2.0) * math.exp(sp.gammaln(s.gamma + (s.d + 1) / 2.0)) / math.sqrt(math.pi)

    def transform(s, rho):
        rho = np.asarray(rho, dtype=float) / a
        return const(s) * a ** (-s.hom_dim) * (1.0 + rho * rho) ** (-(s.gamma + (s.d + 1) / 2.0))

    def inverse(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            return np.where(y >= 1.0, 0.0, -np.log(np.clip(y, 0.0, 1.0)) / a)

    return RadialProfile(
        name="exponential",
        func=lambda r: np.exp(-a * r),
        decay=Decay("exponential", a),
        params=(("a", a),),
        deriv=lambda r: -a * np.exp(-a * r),
        transform=transform,
        transform_decay=lambda s: Decay("power", s.hom_dim + 1.0, 0.0, const(s) * a),
        inverse=inverse,
    )


def ball(radius: float = 1.0) -> RadialProfile:
    """Indicator of the open ball B(0, radius)."""
    if radius <= 0:
        raise ParameterOutOfRange("ball radius must be positive")

    def transform(s, rho):
        # c_k d_k int_0^R j_nu(r rho) r^(2nu+1) dr = c_k d_k R^N j_{nu+1}(R rho) / N
        from .special import bessel_j_normalized

        nu = s.hom_dim / 2.0 - 1.0
        return s.mehta * s.sphere * radius**s.hom_dim * bessel_j_normalized(nu + 1.0, radius * np.asarray(rho)) / s.hom_dim

    def inverse(y):
        y = np.asarray(y, dtype=float)
        return np.where(y < 1.0, radius, 0.0)

    return RadialProfile(
        name="ball",
        func=lambda r: np.where(np.abs(r) < radius, 1.0, 0.0),
        decay=Decay("compact", radius),
        params=(("radius", radius),),
        breakpoints=(radius,),
        transform=transform,
        transform_decay=lambda s: Decay("power", (s.hom_dim + 1.0) / 2.0, 0.0, 10.0 * radius ** ((s.hom_dim - 1) / 2.0)),
        inverse=inverse,
    )


def bump(radius: float = 1.0) -> RadialProfile:
    """Smooth compactly supported F(r) = exp(1 - 1/(1 - (r/radius)^2)) on [0, radius)."""
    if radius <= 0:
        raise ParameterOutOfRange("bump radius must be positive")

    def func(r):
        u = np.asarray(r, dtype=float) / radius
        inside = np.abs(u) < 1.0
        out = np.zeros_like(u)
        ui = u[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out

    def deriv(r):
        u = np.asarray(r, dtype=float) / radius
        inside = np.abs(u) < 1.0
        out = np.zeros_like(u)
        ui = u[inside]
        den = 1.0 - ui * ui
        out[inside] = np.exp(1.0 - 1.0 / den) * (-2.0 * ui / den**2) / radius
        return out

    def inverse(y):
        y = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
        with np.errstate(divide="ignore"):
            u2 = np.where(y > 0, 1.0 - 1.0 / (1.0 - np.log(np.where(y > 0, y, 1.0))), 1.0)
        return np.where(y >= 1.0, 0.0, radius * np.sqrt(np.clip(u2, 0.0, 1.0)))

    return RadialProfile(
        name="bump",
        func=func,
        decay=Decay("compact", radius),
        params=(("radius", radius),),
        deriv=deriv,
        breakpoints=(radius,),
        inverse=inverse,
    )


def power_profile(exponent: float) -> RadialProfile:
    """F(r) = r**exponent; used for power weights, not integrable on R^d."""

    def inverse(y):
        y = np.asarray(y, dtype=float)
        if exponent >= 0:
            return np.full_like(y, np.inf)
        with np.errstate(divide="ignore"):
            return np.where(y > 0, y ** (1.0 / exponent), np.inf)

    return RadialProfile(
        name="power",
        func=lambda r: np.asarray(r, dtype=float) ** exponent,
        decay=Decay("power", max(-exponent, 1e-300), 0.0),
        params=(("exponent", exponent),),
        deriv=lambda r: exponent * np.asarray(r, dtype=float) ** (exponent - 1.0),
        inverse=inverse,
        sup=math.inf if exponent != 0 else 1.0,
    )


RADIAL_CATALOG: dict[str, Callable[..., RadialProfile]] = {
    "gaussian": gaussian,
    "gaussian_moment": gaussian_moment,
    "exponential": exponential,
    "ball": ball,
    "bump": bump,
}


def make_profile(name: str, **params) -> RadialProfile:
    try:
        factory = RADIAL_CATALOG[name]
    except KeyError:
        raise ParameterOutOfRange(f"unknown catalog function {name!r}; choose from {sorted(RADIAL_CATALOG)}") from None
    return factory(**params)


# ---------------------------------------------------------------- general functions on R^d


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    """A function on R^d evaluated on arrays of shape (..., d), with optional exact gradient.

    ``parity[j]`` is +1 (even in x_j), -1 (odd) or 0 (neither).
    """

    name: str
    d: int
    func: Callable[[Array], Array]
    decay: Decay
    grad: Callable[[Array], Array] | None = None
    parity: tuple[int, ...] = ()
    radial: RadialProfile | None = None
    params: tuple = field(default=())

    def __call__(self, x) -> Array:
        return self.func(_as_points(x, self.d))

    def gradient(self, x) -> Array:
        if self.grad is None:
            raise ParameterOutOfRange(f"function {self.name!r} has no analytic gradient")
        return self.grad(_as_points(x, self.d))

    def dilate(self, lam: float) -> "FunctionSpec":
        """x -> f(lam x), with gradient lam * (grad f)(lam x)."""
        f, g = self.func, self.grad
        return FunctionSpec(
            name=f"{self.name}@{lam:g}",
            d=self.d,
            func=lambda x: f(lam * x),
            decay=self.decay.dilate(lam),
            grad=None if g is None else (lambda x: lam * g(lam * x)),
            parity=self.parity,
            radial=None if self.radial is None else self.radial.dilate(lam),
            params=self.params + (("dilation", lam),),
        )


def _as_points(x, d: int) -> Array:
    x = np.asarray(x, dtype=float)
    if d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    if x.shape[-1] != d:
        raise ParameterOutOfRange(f"expected points of dimension {d}, got shape {x.shape}")
    return x


def radial_function(profile: RadialProfile, d: int) -> FunctionSpec:
    """Lift a radial profile to a function on R^d."""

    def func(x):
        return profile(np.linalg.norm(x, axis=-1))

    grad = None
    if profile.deriv is not None:
        def grad(x):
            r = np.linalg.norm(x, axis=-1)
            with np.errstate(invalid="ignore", divide="ignore"):
                ratio = np.where(r > 0, profile.derivative(r) / np.where(r > 0, r, 1.0), 0.0)
            # F'(r)/r -> F''(0) at the origin; F'(0) = 0 for the smooth catalog entries
            return ratio[..., None] * x

    return FunctionSpec(
        name=profile.name,
        d=d,
        func=func,
        decay=profile.decay,
        grad=grad,
        parity=(1,) * d,
        radial=profile,
        params=profile.params,
    )


def poly_gaussian(coeffs: Sequence[float], b: float = 1.0) -> FunctionSpec:
    """One-dimensional f(y) = (sum_n c_n y^n) exp(-b y^2)."""
    c = np.asarray(coeffs, dtype=float)
    if b <= 0:
        raise ParameterOutOfRange("gaussian rate must be positive")
    poly = np.polynomial.Polynomial(c)
    dpoly = poly.deriv()
    even = np.all(c[1::2] == 0)
    odd = np.all(c[0::2] == 0)
    parity = 1 if even else (-1 if odd else 0)
    deg = len(c) - 1

    def func(x):
        y = x[..., 0]
        return poly(y) * np.exp(-b * y * y)

    def grad(x):
        y = x[..., 0]
        return ((dpoly(y) - 2.0 * b * y * poly(y)) * np.exp(-b * y * y))[..., None]

    return FunctionSpec(
        name="poly_gaussian",
        d=1,
        func=func,
        decay=Decay("gaussian", b, float(deg), float(np.sum(np.abs(c)))),
        grad=grad,
        parity=(parity,),
        params=(("coeffs", tuple(c.tolist())), ("b", b)),
    )


def tensor(factors: Sequence[FunctionSpec]) -> FunctionSpec:
    """Product f(x) = prod_j f_j(x_j) of one-dimensional factors."""
    factors = list(factors)
    if any(f.d != 1 for f in factors):
        raise ParameterOutOfRange("tensor factors must be one-dimensional")
    d = len(factors)

    def func(x):
        out = np.ones(x.shape[:-1])
        for j, f in enumerate(factors):
            out = out * f.func(x[..., j : j + 1])
        return out

    grad = None
    if all(f.grad is not None for f in factors):
        def grad(x):
            vals = [f.func(x[..., j : j + 1]) for j, f in enumerate(factors)]
            out = np.empty(x.shape)
            for j, f in enumerate(factors):
                g = f.grad(x[..., j : j + 1])[..., 0]
                for i, v in enumerate(vals):
                    if i != j:
                        g = g * v
                out[..., j] = g
            return out

    dec = factors[0].decay
    for f in factors[1:]:
        dec = dec.slowest(f.decay)
    return FunctionSpec(
        name="x".join(f.name for f in factors),
        d=d,
        func=func,
        decay=dec,
        grad=grad,
        parity=tuple(f.parity[0] for f in factors),
        params=tuple(f.params for f in factors),
    )


def from_profile_1d(profile: RadialProfile) -> FunctionSpec:
    return radial_function(profile, 1)
