"""Composite Gauss rules, graded panels, semi-infinite tails and Bessel-weighted integrals.

Every rule here is returned as a pair ``(nodes, weights)`` so callers can
evaluate their integrands once, vectorised, and reduce with ``np.sum``
(pairwise summation, fixed order, hence bitwise reproducible).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import special as sp

from .errors import ParameterOutOfRange, TailBoundExceeded


@dataclass(frozen=True)
class QuadratureSpec:
    """Knobs shared by every quadrature in the package.

    ``panel_width`` is measured in units of the integrand's natural length
    scale; ``radius`` overrides the automatic truncation radius.
    """

    nodes: int = 16
    panel_width: float = 0.5
    radius: float | None = None
    tolerance: float = 1e-12
    s_split: float = 1.0
    grading: float = 0.5
    smallest: float = 1e-15
    oscillations: int = 48
    max_doublings: int = 5

    def __post_init__(self):
        if self.nodes < 2:
            raise ParameterOutOfRange("need at least two nodes per panel")
        if not 0.0 < self.grading < 1.0:
            raise ParameterOutOfRange("grading ratio must lie in (0, 1)")
        if self.panel_width <= 0 or self.tolerance <= 0:
            raise ParameterOutOfRange("panel width and tolerance must be positive")

    def refined(self) -> "QuadratureSpec":
        """Roughly doubles the work of every rule built from this spec."""
        return replace(
            self,
            nodes=self.nodes + self.nodes // 2,
            panel_width=self.panel_width / 2,
            grading=math.sqrt(self.grading),
            oscillations=self.oscillations + 16,
        )

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "panel_width": self.panel_width,
            "radius": self.radius,
            "tolerance": self.tolerance,
            "s_split": self.s_split,
            "grading": self.grading,
            "smallest": self.smallest,
            "oscillations": self.oscillations,
            "max_doublings": self.max_doublings,
        }


DEFAULT_QUAD = QuadratureSpec()


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


@lru_cache(maxsize=None)
def gauss_jacobi(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for the weight ``(1 - t)**a * (1 + t)**b`` on [-1, 1]."""
    if a <= -1 or b <= -1:
        raise ParameterOutOfRange(f"Jacobi exponents must exceed -1, got ({a}, {b})")
    if a == 0 and b == 0:
        return gauss_legendre(n)
    x, w = sp.roots_jacobi(n, a, b)
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def composite(edges: Sequence[float], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on consecutive panels ``edges[i]..edges[i+1]``."""
    e = np.asarray(edges, dtype=float)
    if e.size < 2:
        return np.empty(0), np.empty(0)
    x, w = gauss_legendre(n)
    half = 0.5 * np.diff(e)
    mid = 0.5 * (e[1:] + e[:-1])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return t, wt


def power_composite(
    edges: Sequence[float], n: int, power: float = 0.0, at: str = "left"
) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int g(t) |t - c|**power dt`` with ``c`` the left (or right) end.

    The panel touching ``c`` uses Gauss-Jacobi so the algebraic factor is
    integrated exactly; the remaining panels carry it in their weights.
    """
    e = np.asarray(edges, dtype=float)
    if e.size < 2:
        return np.empty(0), np.empty(0)
    if power == 0.0:
        return composite(e, n)
    if at == "right":
        t, w = power_composite(e[-1] + e[0] - e[::-1], n, power, "left")
        return e[-1] + e[0] - t, w
    c = e[0]
    a, b = e[0], e[1]
    xj, wj = gauss_jacobi(n, 0.0, float(power))
    half = 0.5 * (b - a)
    t0 = a + half * (xj + 1.0)
    w0 = wj * half ** (power + 1.0)
    t1, w1 = composite(e[1:], n)
    w1 = w1 * (t1 - c) ** power
    return np.concatenate([t0, t1]), np.concatenate([w0, w1])


def graded_edges(a: float, b: float, ratio: float, smallest: float) -> np.ndarray:
    """Edges geometrically refined toward ``a``; the innermost panel has width <= smallest*(b-a)."""
    levels = max(1, int(math.ceil(math.log(smallest) / math.log(ratio))))
    frac = ratio ** np.arange(levels, -1, -1, dtype=float)
    return np.concatenate([[a], a + (b - a) * frac])


def graded_rule(
    a: float,
    b: float,
    n: int,
    power: float = 0.0,
    ratio: float = 0.5,
    smallest: float = 1e-15,
    at: str = "left",
) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_a^b g(t) |t - c|**power dt``, panels graded toward the singular end ``c``."""
    if b <= a:
        return np.empty(0), np.empty(0)
    e = graded_edges(a, b, ratio, smallest)
    if at == "right":
        e = a + b - e[::-1]
    return power_composite(e, n, power, at)


def semi_infinite(
    start: float, n: int, decay: float, ratio: float = 0.5, smallest: float = 1e-15
) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_start^inf g(t) dt`` when ``g(t) ~ t**(-decay)``.

    Uses ``t = start / sigma``; the ``sigma**(decay - 2)`` behaviour at 0 is
    absorbed by a Jacobi panel, so only ``g * t**decay`` needs to be smooth.
    """
    if start <= 0:
        raise ParameterOutOfRange("semi-infinite rule needs a positive start")
    if decay <= 1:
        raise TailBoundExceeded(f"integrand ~ t^-{decay} is not integrable at infinity")
    power = decay - 2.0
    sig, w = graded_rule(0.0, 1.0, n, power, ratio, smallest)
    t = start / sig
    wt = w * start * sig ** (-2.0 - power)
    return t, wt


def wynn_epsilon(partial_sums: Sequence[float]) -> float:
    """Wynn's epsilon extrapolation of a sequence of partial sums."""
    s = [float(v) for v in partial_sums]
    if not s:
        return 0.0
    if len(s) < 3:
        return s[-1]
    prev = [0.0] * (len(s) + 1)
    cur = list(s)
    best = s[-1]
    col = 0
    while len(cur) > 1:
        nxt = []
        for j in range(len(cur) - 1):
            diff = cur[j + 1] - cur[j]
            if diff == 0.0:
                return cur[j + 1]
            nxt.append(prev[j + 1] + 1.0 / diff)
        col += 1
        prev, cur = cur, nxt
        if col % 2 == 0 and cur:
            best = cur[-1]
    return best


def bessel_zero_estimate(nu: float, m: np.ndarray) -> np.ndarray:
    """McMahon's asymptotic estimate of the m-th positive zero of J_nu."""
    mu = 4.0 * nu * nu
    beta = (np.asarray(m, dtype=float) + 0.5 * nu - 0.25) * math.pi
    eb = 8.0 * beta
    return beta - (mu - 1.0) / eb - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * eb**3)


def sum_rule(fun: Callable[[np.ndarray], np.ndarray], rule: tuple[np.ndarray, np.ndarray]) -> float:
    t, w = rule
    if t.size == 0:
        return 0.0
    return float(np.sum(w * fun(t)))


def doubling_integral(
    build: Callable[[int], tuple[np.ndarray, np.ndarray]],
    fun: Callable[[np.ndarray], np.ndarray],
    tol: float,
    max_doublings: int = 5,
    start: int = 1,
) -> tuple[float, float]:
    """Evaluate with ``build(m)`` for m = start, 2*start, ... until successive values agree.

    Returns ``(value, last_difference)``.
    """
    m = start
    prev = sum_rule(fun, build(m))
    diff = math.inf
    for _ in range(max_doublings):
        m *= 2
        cur = sum_rule(fun, build(m))
        diff = abs(cur - prev)
        prev = cur
        if diff <= tol * max(abs(cur), 1e-300):
            break
    return prev, diff


def uniform_edges(a: float, b: float, width: float, breakpoints: Sequence[float] = ()) -> np.ndarray:
    """Panels of width <= ``width`` on [a, b], always splitting at ``breakpoints``."""
    pts = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    out = [pts[0]]
    for lo, hi in zip(pts[:-1], pts[1:]):
        m = max(1, int(math.ceil((hi - lo) / width - 1e-12)))
        out.extend(lo + (hi - lo) * np.arange(1, m + 1) / m)
    return np.asarray(out, dtype=float)


def breakpoint_rule(
    a: float,
    b: float,
    breakpoints: Sequence[float],
    width: float,
    n: int,
    power: float = 0.0,
    ratio: float = 0.5,
    smallest: float = 1e-10,
) -> tuple[np.ndarray, np.ndarray]:
    """Rule for ``int_a^b g(t) (t - a)**power dt`` with ``g`` singular (kinks, square roots) at ``breakpoints``.

    Uniform panels of width <= ``width``, geometrically refined on both sides
    of every breakpoint lying in [a, b].
    """
    if b <= a:
        return np.empty(0), np.empty(0)
    bps = sorted(p for p in breakpoints if a <= p <= b)
    edges = uniform_edges(a, b, width, bps)
    extra = []
    levels = max(1, int(math.ceil(math.log(smallest) / math.log(ratio))))
    scale = ratio ** np.arange(1, levels + 1, dtype=float)
    for p in bps:
        i = int(np.searchsorted(edges, p))
        if i > 0 and p > a:
            extra.append(p - (p - edges[i - 1]) * scale)
        j = min(i + 1, edges.size - 1) if i < edges.size and edges[i] == p else i
        if j < edges.size and p < b:
            extra.append(p + (edges[j] - p) * scale)
    if extra:
        edges = np.unique(np.concatenate([edges, *extra]))
    return power_composite(edges, n, power)
