"""The acceptance suite: thirteen numerical checks, each returning a CheckRecord.

Checks are top-level functions so a process pool can run them; the suite
reassembles records in declaration order.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy import special as sp

from .catalog import Decay, RadialProfile, ball, combine, exponential, gaussian, gaussian_moment, poly_gaussian
from .errors import DunklError
from .kernel import dunkl_kernel_1d, dunkl_transform_1d, dunkl_transform_radial, inverse_transform_1d
from .measure import MultiplicitySetup, gaussian_mass, radial_integral
from .rearrangement import (
    WeightSpec,
    sample_profile,
    theorem41_conditions,
)
from .report import CheckRecord, SuiteReport
from .riesz import (
    RieszParams,
    classical_riesz_1d,
    decay_fit,
    empirical_two_weight,
    fractional_maximal,
    riesz_multiplier_radial,
    riesz_subordination,
)
from .sobolev import (
    function_norm_1d,
    riesz_transform_multiplier_1d,
    sobolev_delta,
    sobolev_sweep,
    theorem42_conditions,
    transform_l2_norm,
)
from .translation import translate_gaussian, translate_radial_1d, translation_mass_check


def _rel(a, b) -> float:
    a = np.asarray(a, dtype=complex if np.iscomplexobj(a) or np.iscomplexobj(b) else float)
    b = np.asarray(b, dtype=a.dtype)
    scale = np.maximum(np.abs(b), 1e-300)
    return float(np.max(np.abs(a - b) / scale))


def _record(name, anchor, value, tol, t0, detail=None, expected=None, passed=None) -> CheckRecord:
    ok = (value <= tol) if passed is None else passed
    return CheckRecord(
        name=name,
        anchor=anchor,
        value=value,
        expected=expected if expected is not None else f"<= {tol:g}",
        tolerance=tol,
        passed=bool(ok),
        wall_time=time.perf_counter() - t0,
        detail=detail or {},
    )


# ---------------------------------------------------------------- 1-4: kernel, measure, transform


def check_kernel_classical() -> CheckRecord:
    t0 = time.perf_counter()
    g = np.linspace(-3.0, 3.0, 21)
    X, Y = np.meshgrid(g, g)
    err = _rel(dunkl_kernel_1d(0.0, X, Y), np.exp(X * Y))
    elapsed = time.perf_counter() - t0
    rec = _record("kernel-classical-limit", "classical limit of the Dunkl kernel", err, 1e-12, t0,
                  {"points": int(X.size), "runtime": elapsed, "runtime_limit": 1.0})
    rec.passed = rec.passed and elapsed < 1.0
    return rec


def _tensor_gaussian_mass(setup: MultiplicitySetup, s: float) -> float:
    # independent oracle: product of one-dimensional adaptive integrals
    out = 1.0
    for kj in setup.k:
        val, _ = integrate.quad(lambda x: math.exp(-s * x * x) * x ** (2.0 * kj), 0.0, math.inf, epsabs=0.0, epsrel=1e-13, limit=200)
        out *= 2.0 * val
    return out


def check_gaussian_mass() -> CheckRecord:
    t0 = time.perf_counter()
    worst = 0.0
    rows = []
    for d, k in ((1, 0.0), (1, 0.5), (1, 1.0), (2, (0.5, 0.5))):
        setup = MultiplicitySetup(d, k)
        for s in (0.1, 1.0, 10.0):
            closed = gaussian_mass(setup, s)
            radial = radial_integral(setup, gaussian(s))
            tensor = _tensor_gaussian_mass(setup, s)
            e = max(_rel(closed, radial), _rel(closed, tensor))
            worst = max(worst, e)
            rows.append({"d": d, "k": list(setup.k), "s": s, "closed": closed, "quadrature": radial, "error": e})
    note = "mass scales as s^-(gamma + d/2); the printed exponent without the 1/2 is inconsistent with these values"
    return _record("gaussian-mass-law", "Gaussian mass of the Dunkl measure", worst, 1e-10, t0, {"cases": rows, "note": note})


def check_exponential_pair() -> CheckRecord:
    t0 = time.perf_counter()
    rho = np.linspace(0.0, 10.0, 50)
    worst = 0.0
    for k in (0.0, 0.5, 1.0):
        setup = MultiplicitySetup(1, k)
        g = setup.gamma
        c = 2.0 ** (g + 0.5) * math.exp(sp.gammaln(g + 1.0)) / math.sqrt(math.pi)
        exact = c * (1.0 + rho * rho) ** (-(g + 1.0))
        worst = max(worst, _rel(dunkl_transform_radial(setup, exponential(1.0), rho), exact))
    return _record("exponential-transform-pair", "transform of exp(-|x|)", worst, 1e-6, t0, {"points": 50})


def plancherel_functions() -> list[RadialProfile]:
    return [
        gaussian(1.0),
        gaussian_moment(1.0),
        combine([gaussian(1.0), gaussian_moment(0.5)], [1.0, -0.5]),
        exponential(1.0),
    ]


def check_plancherel() -> CheckRecord:
    t0 = time.perf_counter()
    worst = 0.0
    rows = []
    for k in (0.0, 0.5, 1.0):
        setup = MultiplicitySetup(1, k)
        for F in plancherel_functions():
            lhs = radial_integral(setup, F, p=2.0)
            if F.schwartz:
                tf = lambda r, F=F, setup=setup: dunkl_transform_radial(setup, F, r)
                source = "quadrature"
            else:
                tf = lambda r, F=F, setup=setup: F.transform(setup, r)
                source = "closed-form"
            G = RadialProfile(name=f"F[{F.name}]", func=tf, decay=F.transform_decay(setup))
            rhs = radial_integral(setup, G, p=2.0)
            e = _rel(rhs, lhs)
            worst = max(worst, e)
            rows.append({"k": k, "function": F.name, "transform": source, "defect": e})
    return _record("plancherel", "Plancherel identity", worst, 1e-8, t0, {"cases": rows})


# ---------------------------------------------------------------- 5: translation


def check_translation() -> CheckRecord:
    t0 = time.perf_counter()
    pts = (0.5, 1.0, 3.0)
    cross = 0.0
    for k in (0.3, 0.7, 1.5):
        setup = MultiplicitySetup(1, k)
        for s in (0.5, 2.0):
            F = gaussian(s)
            for x in pts:
                for y in pts + tuple(-v for v in pts):
                    a = translate_radial_1d(k, F, x, y)
                    b = translate_gaussian(setup, s, x, y)
                    cross = max(cross, abs(a - b) / b)
    mass = 0.0
    rows = []
    for k in (0.3, 0.7, 1.5):
        setup = MultiplicitySetup(1, k)
        for F in (gaussian(1.0), exponential(1.0), ball(1.0)):
            for x in (0.5, 3.0):
                lhs, rhs = translation_mass_check(setup, F, x)
                e = abs(lhs - rhs) / rhs
                mass = max(mass, e)
                rows.append({"k": k, "function": F.name, "x": x, "error": e})
    worst = max(cross, mass)
    return _record("translation", "Dunkl translation of radial functions", worst, 1e-8, t0,
                   {"kernel_identity": cross, "mass_preservation": mass, "mass_cases": rows})


# ---------------------------------------------------------------- 6-7: Riesz potential


def check_riesz_routes() -> CheckRecord:
    t0 = time.perf_counter()
    xs = np.array([0.0, 1.0, 3.0])
    routes = 0.0
    rows = []
    for k in (0.0, 0.5):
        setup = MultiplicitySetup(1, k)
        for alpha in (0.5, 1.0):
            if alpha >= setup.hom_dim:
                # the potential needs alpha < 2 gamma + d
                rows.append({"k": k, "alpha": alpha, "skipped": "alpha >= homogeneous dimension"})
                continue
            params = RieszParams(alpha, setup)
            for F in (gaussian(1.0), exponential(1.0)):
                a = np.asarray(riesz_subordination(setup, F, params, xs))
                b = np.asarray(riesz_multiplier_radial(setup, F, params, xs))
                e = _rel(a, b)
                routes = max(routes, e)
                rows.append({"k": k, "alpha": alpha, "function": F.name, "gap": e})
    oracle = 0.0
    setup = MultiplicitySetup(1, 0.0)
    for alpha in (0.5,):
        params = RieszParams(alpha, setup)
        for F in (gaussian(1.0), exponential(1.0)):
            b = np.asarray(riesz_multiplier_radial(setup, F, params, xs))
            c = np.array([classical_riesz_1d(lambda y, F=F: float(F(abs(y))), alpha, float(x)) for x in xs])
            oracle = max(oracle, _rel(b, c))
    ok = routes <= 1e-4 and oracle <= 1e-5
    return _record("riesz-route-agreement", "Riesz potential: subordination and multiplier", routes, 1e-4, t0,
                   {"cases": rows, "classical_oracle": oracle, "classical_tolerance": 1e-5}, passed=ok)


DECAY_CASES = (("exponential", 1.0, 1.0), ("ball", 0.5, 0.5), ("gaussian", 0.0, 0.5))


def check_decay() -> CheckRecord:
    t0 = time.perf_counter()
    rows = []
    worst = 0.0
    for name, k, alpha in DECAY_CASES:
        setup = MultiplicitySetup(1, k)
        F = {"exponential": exponential(1.0), "ball": ball(1.0), "gaussian": gaussian(1.0)}[name]
        rep = decay_fit(setup, F, RieszParams(alpha, setup))
        worst = max(worst, rep.deviation)
        rows.append({"function": name, "k": k, "alpha": alpha, "slope": rep.slope, "expected": rep.expected})
    elapsed = time.perf_counter() - t0
    rec = _record("riesz-decay", "decay of the Riesz potential at infinity", worst, 0.05, t0,
                  {"cases": rows, "runtime": elapsed, "runtime_limit": 120.0})
    rec.passed = rec.passed and elapsed < 120.0
    return rec


# ---------------------------------------------------------------- 8-9: rearrangement and two-weight conditions


def _closed_power_rearrangement(setup: MultiplicitySetup, e: float, t: np.ndarray) -> np.ndarray:
    N = setup.hom_dim
    return (N / setup.sphere) ** (e / N) * t ** (e / N)


def check_rearrangement() -> CheckRecord:
    t0 = time.perf_counter()
    rows = []
    worst = 0.0
    radii = np.concatenate([[0.0], np.geomspace(1e-5, 1e5, 4001)])
    t = np.geomspace(1e-3, 1e3, 25)
    delta, beta, R = -0.5, 1.0, 1.5
    hl = 0.0
    for d, k in ((1, 0.0), (1, 0.5), (1, 1.0), (2, (0.5, 0.5))):
        setup = MultiplicitySetup(d, k)
        u = WeightSpec.power(delta)
        inv_v = WeightSpec.power(beta).reciprocal()
        for label, w, e in (("u", u, delta), ("1/v", inv_v, -beta)):
            num = sample_profile(setup, w, radii)(t)
            worst = max(worst, _rel(num, _closed_power_rearrangement(setup, e, t)))
        F = ball(R)
        mass = setup.sphere * R**setup.hom_dim / setup.hom_dim
        tb = np.array([0.5, 0.9, 0.99, 1.01, 1.1, 2.0]) * mass
        exact = (tb < mass).astype(float)
        edges = np.concatenate([[0.0], np.linspace(1e-3, 2.0 * R, 2001)])
        num = sample_profile(setup, F, edges)(tb)
        worst = max(worst, float(np.max(np.abs(num - exact))))
        # equality cases: integrals of aligned pairs, radial quadrature against the rearranged side
        fu = radial_integral(setup, F, weight_exponent=delta)
        fu_star = u.rearrangement(setup).integral(0.0, mass)
        fv = radial_integral(setup, F, weight_exponent=beta)
        fv_star = (inv_v.rearrangement(setup) ** -1.0).integral(0.0, mass)
        fu_exact = setup.sphere * R ** (delta + setup.hom_dim) / (delta + setup.hom_dim)
        e = max(_rel(fu, fu_star), _rel(fv, fv_star), _rel(fu_star, fu_exact))
        hl = max(hl, e)
        rows.append({"d": d, "k": list(setup.k), "f_u": fu, "f*u*": float(fu_star), "f_v": fv, "f*/(1/v)*": float(fv_star)})
    ok = worst <= 1e-2 and hl <= 1e-8
    return _record("rearrangement-closed-forms", "rearrangements of power weights and ball indicators", worst, 1e-2, t0,
                   {"hardy_littlewood_equality": hl, "hardy_littlewood_tolerance": 1e-8, "cases": rows}, passed=ok)


def corollary_sweep_cases() -> list[tuple[float, float, float, float, bool]]:
    """(p, alpha, beta, delta, satisfies) on d = 1, k = 0.5 (N = 2)."""
    N = 2.0
    cases = []
    good = [(1.5, 0.5, 0.5), (2.0, 0.5, 0.8), (3.0, 0.5, 1.0), (1.5, 1.0, 0.7), (1.8, 0.8, 1.0),
            (2.5, 0.4, 0.9), (1.2, 1.5, 0.3), (3.5, 0.5, 1.5), (2.0, 0.9, 0.5), (1.6, 1.0, 1.1)]
    for p, alpha, beta in good:
        cases.append((p, alpha, beta, beta - alpha * p, True))
    # beta at or above N (p - 1) with the exponent relation kept
    for p, alpha, extra in ((1.5, 1.0, 0.0), (1.5, 1.2, 0.3), (1.2, 1.5, 0.1), (1.25, 1.5, 0.2), (1.8, 1.0, 0.0)):
        beta = N * (p - 1.0) + extra
        cases.append((p, alpha, beta, beta - alpha * p, False))
    # exponent relation broken
    for p, alpha, beta, shift in ((2.0, 0.5, 0.6, 0.3), (3.0, 0.5, 1.0, -0.4), (1.5, 1.0, 0.5, 0.2), (2.5, 0.6, 1.5, -0.25), (1.8, 0.8, 1.2, 0.1)):
        cases.append((p, alpha, beta, beta - alpha * p + shift, False))
    return cases


def check_corollary_sweep() -> CheckRecord:
    t0 = time.perf_counter()
    setup = MultiplicitySetup(1, 0.5)
    N = setup.hom_dim
    rows = []
    mismatches = 0
    for p, alpha, beta, delta, expected in corollary_sweep_cases():
        analytic = delta < 0.0 and 0.0 < beta < N * (p - 1.0) and abs(beta - delta - alpha * p) < 1e-12
        rep = theorem41_conditions(setup, WeightSpec.power(delta), WeightSpec.power(beta), p, p, p, alpha)
        got = rep.verdict == "finite"
        mismatches += int(got != analytic) + int(analytic != expected)
        rows.append({"p": p, "alpha": alpha, "beta": beta, "delta": delta, "analytic": analytic, "verdict": rep.verdict})
    n_sat = sum(r["analytic"] for r in rows)
    ok = mismatches == 0 and n_sat == 10 and len(rows) == 20
    return _record("power-weight-sweep", "two-weight conditions for power weights", float(mismatches), 0.0, t0,
                   {"cases": rows, "satisfying": n_sat}, expected="0 mismatches", passed=ok)


# ---------------------------------------------------------------- 10-11: empirical inequalities


def check_two_weight() -> CheckRecord:
    t0 = time.perf_counter()
    setup = MultiplicitySetup(1, 0.5)
    p = q = r = 3.0
    alpha, beta, delta = 0.5, 1.0, -0.5
    u, v = WeightSpec.power(delta), WeightSpec.power(beta)
    rep = empirical_two_weight(setup, u, v, p, q, r, alpha)
    ratios = np.array([s["ratio"] for s in rep.samples])
    spread = float((ratios.max() - ratios.min()) / ratios.mean())
    drift = rep.drift
    ok = rep.verdict == "finite" and math.isfinite(rep.best_constant) and drift < 0.05 and spread < 1e-3
    detail = {"max_ratio": rep.best_constant, "refined_max_ratio": rep.refined_constant, "drift": drift,
              "lambda_spread": spread, "ratios": ratios.tolist(), "verdict": rep.verdict}
    return _record("two-weight-empirical", "weighted Riesz potential inequality", drift, 0.05, t0, detail, passed=ok)


def sobolev_verdict_cases() -> list[tuple[float, float, float, float]]:
    """(p, q, r, delta) on d = 1, k = 0.5; five on the scaling relation, five off it."""
    setup = MultiplicitySetup(1, 0.5)
    on = [(1.2, 1.5, 1.6), (1.2, 2.0, 1.8), (1.2, 3.0, 1.5), (1.5, 6.0, 1.8), (1.4, 4.0, 1.9)]
    off = [(1.2, 1.5, 1.6, 0.5), (1.2, 2.0, 1.8, -0.5), (1.5, 3.0, 1.8, 0.5), (1.5, 6.0, 1.8, -0.3), (1.4, 4.0, 1.9, 0.25)]
    out = [(p, q, r, sobolev_delta(setup, p, q)) for p, q, r in on]
    out += [(p, q, r, sobolev_delta(setup, p, q) + s) for p, q, r, s in off]
    # snap round-off so the delta = 0 cases use the constant weight
    return [(p, q, r, 0.0 if abs(d) < 1e-12 else d) for p, q, r, d in out]


def check_sobolev() -> CheckRecord:
    t0 = time.perf_counter()
    setup = MultiplicitySetup(1, 0.5)
    F = gaussian(1.0)
    sweeps = []
    inv = 0.0
    drift = math.inf
    for p, q in ((1.5, 3.0), (1.5, 6.0)):
        delta = sobolev_delta(setup, p, q)
        sw = sobolev_sweep(setup, F, p, q, delta)
        off = sobolev_sweep(setup, F, p, q, delta + 0.5)
        monotone = bool(np.all(np.diff(off.ratios) < 0) or np.all(np.diff(off.ratios) > 0))
        off_drift = float(off.ratios.max() / off.ratios.min() - 1.0)
        inv = max(inv, sw.spread)
        drift = min(drift, off_drift if monotone else 0.0)
        sweeps.append({"p": p, "q": q, "delta": delta, "spread": sw.spread, "offset_drift": off_drift, "monotone": monotone})
    mism = 0
    rows = []
    N = setup.hom_dim
    for p, q, r, delta in sobolev_verdict_cases():
        analytic = delta <= 0.0 and abs(delta - q * (N * (1.0 / p - 1.0 / q) - 1.0)) < 1e-12 and 1.0 < p < r
        u = WeightSpec.constant() if delta == 0.0 else WeightSpec.power(delta)
        rep = theorem42_conditions(setup, u, p, q, r)
        mism += int((rep.verdict == "finite") != analytic)
        rows.append({"p": p, "q": q, "r": r, "delta": delta, "analytic": analytic, "verdict": rep.verdict})
    ok = inv < 1e-3 and drift >= 0.10 and mism == 0
    return _record("sobolev-scaling", "weighted Sobolev inequality", inv, 1e-3, t0,
                   {"sweeps": sweeps, "offset_drift_min": drift, "verdict_mismatches": mism, "verdicts": rows}, passed=ok)


# ---------------------------------------------------------------- 12-13: Riesz transform, maximal operator


def check_riesz_transform() -> CheckRecord:
    t0 = time.perf_counter()
    f = poly_gaussian([1.0, 2.0, 0.0, 1.0])
    tdec = Decay("gaussian", 0.25, 3.0, 10.0)
    iso = 0.0
    square = 0.0
    xi = np.linspace(-10.0, 10.0, 201)
    for k in (0.0, 0.5, 1.0):
        setup = MultiplicitySetup(1, k)

        def Ff(t, setup=setup):
            return dunkl_transform_1d(f, t, setup)

        def RFf(t, Ff=Ff):
            return riesz_transform_multiplier_1d(Ff, t)

        lhs = transform_l2_norm(setup, RFf, tdec)
        rhs = function_norm_1d(setup, lambda t: f.func(t[..., None]), f.decay)
        iso = max(iso, abs(lhs - rhs) / rhs)
        vals = Ff(xi)
        twice = riesz_transform_multiplier_1d(riesz_transform_multiplier_1d(vals, xi), xi)
        mask = xi != 0.0
        square = max(square, float(np.max(np.abs(twice[mask] + vals[mask]) / np.maximum(np.abs(vals[mask]), 1e-300))))
    # classical oracle: the Hilbert transform of exp(-x^2/2) is (2/sqrt(pi)) D(x/sqrt(2)), D = Dawson's integral
    setup = MultiplicitySetup(1, 0.0)
    x = np.linspace(-5.0, 5.0, 21)
    h = inverse_transform_1d(lambda t: -1j * np.sign(t) * np.exp(-t * t / 2.0), Decay("gaussian", 0.5), x, setup, parity=-1)
    hilbert = _rel(np.real(h), 2.0 / math.sqrt(math.pi) * sp.dawsn(x / math.sqrt(2.0)))
    ok = iso <= 1e-8 and square <= 1e-10 and hilbert <= 1e-8
    return _record("riesz-transform-multiplier", "Riesz transform as a Fourier-Dunkl multiplier", iso, 1e-8, t0,
                   {"isometry": iso, "square_minus_identity": square, "square_tolerance": 1e-10,
                    "hilbert_oracle": hilbert}, passed=ok)


def check_maximal() -> CheckRecord:
    t0 = time.perf_counter()
    setup = MultiplicitySetup(1, 0.5)
    alpha = 0.5
    F = gaussian(1.0)
    xs = np.linspace(0.0, 8.7, 30)
    M = np.array([float(fractional_maximal(setup, F, alpha, float(x))) for x in xs])
    I = np.asarray(riesz_multiplier_radial(setup, F, RieszParams(alpha, setup), xs))
    ratio = M / I
    c = float(np.max(ratio))
    # no growth at the far end of the x-range means one constant serves all x
    tail_growth = float(ratio[-1] / ratio[-5] - 1.0)
    ok = bool(np.all(np.isfinite(ratio))) and math.isfinite(c) and tail_growth < 0.05
    return _record("maximal-domination", "fractional maximal operator and Riesz potential", c, math.inf, t0,
                   {"fitted_constant": c, "ratios": ratio.tolist(), "x": xs.tolist(), "tail_growth": tail_growth},
                   expected="finite constant", passed=ok)


CHECKS: tuple[tuple[int, Callable[[], CheckRecord]], ...] = (
    (1, check_kernel_classical),
    (2, check_gaussian_mass),
    (3, check_exponential_pair),
    (4, check_plancherel),
    (5, check_translation),
    (6, check_riesz_routes),
    (7, check_decay),
    (8, check_rearrangement),
    (9, check_corollary_sweep),
    (10, check_two_weight),
    (11, check_sobolev),
    (12, check_riesz_transform),
    (13, check_maximal),
)


def run_check(fn: Callable[[], CheckRecord]) -> CheckRecord:
    """Run one check, turning library errors into a failed record."""
    t0 = time.perf_counter()
    try:
        return fn()
    except DunklError as exc:
        return CheckRecord(fn.__name__, "plumbing", None, None, None, False, time.perf_counter() - t0, error=f"{exc.code}: {exc}")


def run_suite(selected: Sequence[int] | None = None, jobs: int = 1, extra: Sequence[Callable[[], CheckRecord]] = ()) -> list[CheckRecord]:
    fns = [fn for i, fn in CHECKS if selected is None or i in selected] + list(extra)
    if jobs <= 1:
        return [run_check(fn) for fn in fns]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_check, fns))


def acceptance_report(selected: Sequence[int] | None = None, jobs: int = 1, config: dict | None = None) -> SuiteReport:
    return SuiteReport("acceptance", run_suite(selected, jobs), config=config or {})
