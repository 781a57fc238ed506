"""Command-line front end: ``dunkl-riesz <subcommand> --config <path> [--out <dir>] [--jobs N]``.

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage,
configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import functools
import math
import os
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import acceptance
from .catalog import ball, exponential, from_profile_1d, gaussian
from .config import RunConfig, default_config, is_classical, load_config
from .errors import ConfigError, DunklError
from .kernel import dunkl_kernel_1d, dunkl_transform_1d, dunkl_transform_radial
from .measure import MultiplicitySetup, gaussian_mass, radial_integral
from .rearrangement import (
    WeightSpec,
    decreasing_rearrangement,
    distribution_function,
    hardy_condition_dual,
    hardy_condition_primal,
    sample_profile,
    theorem41_conditions,
)
from .report import CheckRecord, SuiteReport, json_document, write_csv, write_json
from .riesz import RieszParams, classical_riesz_1d, decay_fit, riesz_multiplier_radial, riesz_subordination
from .sobolev import sobolev_delta, sobolev_sweep, theorem42_conditions

OUT_ENV = "DUNKL_RIESZ_OUT"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def output_dir(cli_out: str | None, cfg: RunConfig) -> Path:
    """--out, then the environment override, then the config, then the working directory."""
    for cand in (cli_out, os.environ.get(OUT_ENV), cfg.out):
        if cand:
            return Path(cand)
    return Path.cwd()


def _record(name: str, anchor: str, value: float, expected, tol: float | None, ok: bool, t0: float, **detail) -> CheckRecord:
    return CheckRecord(name, anchor, value, expected, tol, bool(ok), time.perf_counter() - t0, detail)


def _weight(kind: str, delta: float) -> WeightSpec:
    return WeightSpec.constant() if kind == "constant" else WeightSpec.power(delta)


# ---------------------------------------------------------------- config sub-suite (plumbing)


def check_constants(d: int, k: tuple[float, ...]) -> list[CheckRecord]:
    setup = MultiplicitySetup(d, k)
    out = []
    t0 = time.perf_counter()
    inv_ck = radial_integral(setup, gaussian(0.5))
    e = abs(inv_ck * setup.mehta - 1.0)
    out.append(_record("mehta-constant", "plumbing", setup.mehta, 1.0 / inv_ck, 1e-10, e <= 1e-10, t0, gamma=setup.gamma))
    t0 = time.perf_counter()
    unit_ball = radial_integral(setup, ball(1.0))
    dk = unit_ball * setup.hom_dim
    e = abs(dk / setup.sphere - 1.0)
    out.append(_record("sphere-constant", "plumbing", setup.sphere, dk, 1e-10, e <= 1e-10, t0))
    t0 = time.perf_counter()
    e = abs(gaussian_mass(setup, 1.0) / radial_integral(setup, gaussian(1.0)) - 1.0)
    out.append(_record("gaussian-mass", "plumbing", e, 0.0, 1e-10, e <= 1e-10, t0))
    return out


def check_gaussian_fixed_point(d: int, k: tuple[float, ...]) -> CheckRecord:
    t0 = time.perf_counter()
    setup = MultiplicitySetup(d, k)
    rho = np.linspace(0.0, 6.0, 25)
    val = dunkl_transform_radial(setup, gaussian(0.5), rho)
    e = float(np.max(np.abs(val - np.exp(-rho * rho / 2.0))))
    return _record("config-gaussian-fixed-point", "plumbing", e, 0.0, 1e-10, e <= 1e-10, t0)


def check_classical_reduction() -> CheckRecord:
    """k = 0, d = 1: kernel, transform and potential reduce to their Fourier counterparts."""
    t0 = time.perf_counter()
    setup = MultiplicitySetup(1, 0.0)
    g = np.linspace(-3.0, 3.0, 13)
    X, Y = np.meshgrid(g, g)
    e_kernel = float(np.max(np.abs(dunkl_kernel_1d(0.0, X, Y) / np.exp(X * Y) - 1.0)))
    xi = np.linspace(-5.0, 5.0, 21)
    ft = dunkl_transform_1d(from_profile_1d(exponential(1.0)), xi, setup)
    e_ft = float(np.max(np.abs(ft - math.sqrt(2.0 / math.pi) / (1.0 + xi * xi))))
    params = RieszParams(0.5, setup)
    xs = np.array([0.0, 1.0, 2.0])
    pot = np.asarray(riesz_multiplier_radial(setup, gaussian(1.0), params, xs))
    ref = np.array([classical_riesz_1d(lambda y: math.exp(-y * y), 0.5, float(x)) for x in xs])
    e_pot = float(np.max(np.abs(pot / ref - 1.0)))
    worst = max(e_kernel, e_ft, e_pot)
    return _record("classical-reduction", "classical Fourier limit", worst, 0.0, 1e-8, worst <= 1e-8, t0,
                   kernel=e_kernel, transform=e_ft, potential=e_pot)


def config_checks(cfg: RunConfig) -> list[Callable[[], CheckRecord]]:
    fns: list[Callable[[], CheckRecord]] = [functools.partial(check_gaussian_fixed_point, cfg.d, cfg.k)]
    if is_classical(cfg):
        fns.append(check_classical_reduction)
    return fns


# ---------------------------------------------------------------- subcommands


def cmd_constants(cfg: RunConfig, out: Path) -> SuiteReport:
    setup = cfg.setup
    rep = SuiteReport("constants", check_constants(cfg.d, cfg.k), config=cfg.as_dict())
    rep.records[0].detail.update(setup.describe())
    write_json(out / "constants.json", rep.as_dict())
    return rep


def cmd_transform(cfg: RunConfig, out: Path) -> SuiteReport:
    t0 = time.perf_counter()
    setup = cfg.setup
    F = cfg.profile()
    rho = np.linspace(0.0, cfg.rho_max, cfg.rho_points)
    val = np.asarray(dunkl_transform_radial(setup, F, rho, cfg.quad))
    if F.transform is not None:
        exact = np.asarray(F.transform(setup, rho))
        # relative residual, with the scale floored where the transform is negligible
        scale = np.maximum(np.abs(exact), 1e-6 * np.max(np.abs(exact)))
        resid = np.abs(val - exact) / scale
        rows = zip(rho, val, exact, resid)
        worst = float(np.max(resid))
        ok = worst <= 1e-6
    else:
        rows = ((r, v, "", "") for r, v in zip(rho, val))
        worst, ok = math.nan, True
    write_csv(out / "transform.csv", ["rho", "transform", "closed_form", "relative_residual"], rows)
    rec = _record("transform-closed-form", "radial transform against its closed form", worst, "<= 1e-06", 1e-6, ok, t0,
                  function=F.name, points=cfg.rho_points)
    return SuiteReport("transform", [rec], config=cfg.as_dict())


def cmd_riesz(cfg: RunConfig, out: Path) -> SuiteReport:
    t0 = time.perf_counter()
    setup = cfg.setup
    F = cfg.profile()
    params = RieszParams(cfg.alpha, setup)
    xs = np.asarray(cfg.points, dtype=float)
    a = np.atleast_1d(riesz_subordination(setup, F, params, xs, cfg.quad))
    b = np.atleast_1d(riesz_multiplier_radial(setup, F, params, xs, cfg.quad))
    gap = np.abs(a - b) / np.abs(b)
    write_csv(out / "riesz.csv", ["x", "subordination", "multiplier", "relative_gap"], zip(xs, a, b, gap))
    worst = float(np.max(gap))
    rec = _record("riesz-routes", "Riesz potential: subordination and multiplier", worst, "<= 0.0001", 1e-4, worst <= 1e-4, t0)
    return SuiteReport("riesz", [rec], config=cfg.as_dict())


def cmd_decay_fit(cfg: RunConfig, out: Path) -> SuiteReport:
    t0 = time.perf_counter()
    setup = cfg.setup
    rep = decay_fit(setup, cfg.profile(), RieszParams(cfg.alpha, setup), quad=cfg.quad)
    write_json(out / "decay_fit.json", json_document("decay-fit", rep.as_dict(), cfg.as_dict()))
    rec = _record("decay-slope", "decay of the Riesz potential at infinity", rep.slope, rep.expected, 0.05, rep.deviation <= 0.05, t0)
    return SuiteReport("decay-fit", [rec], config=cfg.as_dict())


def cmd_rearrange(cfg: RunConfig, out: Path) -> SuiteReport:
    t0 = time.perf_counter()
    setup = cfg.setup
    F = cfg.profile()
    L = F.length
    radii = np.concatenate([[0.0], np.geomspace(1e-4 * L, 10.0 * L, 20001)])
    table = sample_profile(setup, F, radii)
    t = np.geomspace(1e-4, 1e2, 61) * setup.sphere * L**setup.hom_dim / setup.hom_dim
    t = t[t < setup.sphere * (10.0 * L) ** setup.hom_dim / setup.hom_dim]
    num = table(t)
    if F.monotone:
        exact = np.asarray(decreasing_rearrangement(setup, F, t))
        big = exact > 1e-6 * F.sup
        # a cell-sampled f* can be off in value (steep profiles) or in position (flat ones); take the better reading
        value_err = np.abs(num - exact) / np.maximum(exact, 1e-300)
        position_err = np.abs(np.asarray(distribution_function(setup, F, num)) - t) / t
        pointwise = np.minimum(value_err, position_err)
        err = float(np.max(pointwise[big])) if np.any(big) else 0.0
        rows = zip(t, num, exact)
        ok = err <= 1e-2
    else:
        rows = ((a, b, "") for a, b in zip(t, num))
        err, ok = math.nan, True
    write_csv(out / "rearrange.csv", ["t", "numeric", "closed_form"], rows)
    rec = _record("rearrangement", "decreasing rearrangement of a radial profile", err, "<= 0.01", 1e-2, ok, t0, function=F.name)
    return SuiteReport("rearrange", [rec], config=cfg.as_dict())


def cmd_hardy_check(cfg: RunConfig, out: Path) -> SuiteReport:
    t0 = time.perf_counter()
    setup = cfg.setup
    u, v = _weight(cfg.u_kind, cfg.u_delta), _weight(cfg.v_kind, cfg.v_delta)
    p, q, r, alpha = cfg.p, cfg.q, cfg.r, cfg.alpha
    rep = theorem41_conditions(setup, u, v, p, q, r, alpha)
    # the same two conditions written as Hardy conditions: tail/head pairs with theta^(1 - p') = (1/v)*^(p' - 1) t^...
    N = setup.hom_dim
    pc = p / (p - 1.0)
    us = u.rearrangement(setup)
    vs = v.reciprocal().rearrangement(setup)
    theta1 = vs ** -1.0
    primal = hardy_condition_primal(us.times_power(-q * (1.0 - alpha / N)), theta1, p, q)
    theta2 = (vs ** (pc - 1.0)).times_power(pc * (1.0 / r - 1.0)) ** (1.0 / (1.0 - pc))
    dual = hardy_condition_dual(us.times_power(-q * (1.0 / r - alpha / N)), theta2, p, q)
    same = [rep.conditions[0].verdict == primal.verdict, rep.conditions[1].verdict == dual.verdict]
    gaps = []
    for a, b in ((rep.conditions[0], primal.conditions[0]), (rep.conditions[1], dual.conditions[0])):
        if math.isfinite(a.grid_sup) and math.isfinite(b.grid_sup):
            gaps.append(abs(a.grid_sup - b.grid_sup) / a.grid_sup)
    gap = max(gaps, default=0.0)
    payload = {"two_weight": rep.as_dict(), "hardy_primal": primal.as_dict(), "hardy_dual": dual.as_dict()}
    write_json(out / "hardy_check.json", json_document("hardy-check", payload, cfg.as_dict()))
    ok = all(same) and gap <= 1e-10
    rec = _record("hardy-forms-agree", "two-weight conditions as Hardy conditions", gap, 0.0, 1e-10, ok, t0, verdict=rep.verdict)
    return SuiteReport("hardy-check", [rec], config=cfg.as_dict())


def cmd_sobolev_check(cfg: RunConfig, out: Path) -> SuiteReport:
    t0 = time.perf_counter()
    setup = cfg.setup
    p, q, r = cfg.sobolev_p, cfg.sobolev_q, cfg.sobolev_r
    delta = sobolev_delta(setup, p, q) if cfg.sobolev_delta is None else cfg.sobolev_delta
    delta = 0.0 if abs(delta) < 1e-12 else delta
    u = WeightSpec.constant() if delta == 0.0 else WeightSpec.power(delta)
    cond = theorem42_conditions(setup, u, p, q, r)
    sweep = sobolev_sweep(setup, cfg.profile(), p, q, delta, cfg.lambdas, cfg.quad)
    write_csv(out / "sobolev_sweep.csv", ["lambda", "ratio"], zip(sweep.lambdas, sweep.ratios))
    payload = {"conditions": cond.as_dict(), "sweep": sweep.as_dict()}
    write_json(out / "sobolev_check.json", json_document("sobolev-check", payload, cfg.as_dict()))
    on_relation = abs(delta - sobolev_delta(setup, p, q)) < 1e-12
    expected = "invariant" if on_relation else "drifting"
    observed = "invariant" if sweep.spread < 1e-3 else "drifting"
    rec = _record("sobolev-scaling", "weighted Sobolev inequality", sweep.spread, expected, 1e-3, observed == expected, t0,
                  verdict=cond.verdict, fitted_exponent=sweep.fitted_exponent, expected_exponent=sweep.expected_exponent)
    return SuiteReport("sobolev-check", [rec], config=cfg.as_dict())


def cmd_validate(cfg: RunConfig, out: Path, jobs: int = 1) -> SuiteReport:
    fns = [fn for i, fn in acceptance.CHECKS if i in cfg.checks] + config_checks(cfg)
    if jobs <= 1:
        records = [acceptance.run_check(fn) for fn in fns]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(acceptance.run_check, fns))
    rep = SuiteReport("validate", records, config=cfg.as_dict())
    write_json(out / "validate.json", rep.as_dict())
    return rep


COMMANDS = {
    "constants": cmd_constants,
    "transform": cmd_transform,
    "riesz": cmd_riesz,
    "decay-fit": cmd_decay_fit,
    "rearrange": cmd_rearrange,
    "hardy-check": cmd_hardy_check,
    "sobolev-check": cmd_sobolev_check,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dunkl-riesz", description="Dunkl-Riesz numerical verification tools")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="INI configuration file (defaults built in when omitted)")
        sp.add_argument("--out", help=f"output directory (overrides ${OUT_ENV} and the config)")
        sp.add_argument("--jobs", type=int, default=None, help="worker processes for suites")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else default_config()
        jobs = args.jobs if args.jobs is not None else cfg.jobs
        if jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        out = output_dir(args.out, cfg)
        out.mkdir(parents=True, exist_ok=True)
    except (DunklError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        fn = COMMANDS[args.command]
        rep = fn(cfg, out, jobs) if args.command == "validate" else fn(cfg, out)
    except OSError as exc:
        print(f"io-error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DunklError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(rep.summary())
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
