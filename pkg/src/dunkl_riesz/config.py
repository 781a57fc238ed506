"""Run configuration: a flat INI file with section headers, parsed with configparser.

Ranges are checked at parse time so that an invalid file never reaches a
computation.
"""

from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .catalog import make_profile
from .errors import AlphaOutOfRange, ConfigError, DunklError, ParameterOutOfRange
from .measure import MultiplicitySetup
from .quadrature import QuadratureSpec

ALL_CHECKS = tuple(range(1, 14))
WEIGHT_KINDS = ("power", "constant")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.replace(",", " ").split())


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return ", ".join(_fmt(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass(frozen=True)
class RunConfig:
    d: int = 1
    k: tuple[float, ...] = (0.5,)
    function: str = "gaussian"
    function_params: tuple[tuple[str, float], ...] = ()
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    alpha: float = 0.5
    points: tuple[float, ...] = (0.0, 1.0, 3.0)
    rho_max: float = 10.0
    rho_points: int = 50
    p: float = 3.0
    q: float = 3.0
    r: float = 3.0
    u_kind: str = "power"
    u_delta: float = -0.5
    v_kind: str = "power"
    v_delta: float = 1.0
    sobolev_p: float = 1.5
    sobolev_q: float = 3.0
    sobolev_r: float = 1.8
    sobolev_delta: float | None = None
    lambdas: tuple[float, ...] = (0.25, 0.5, 1.0, 2.0, 4.0)
    out: str | None = None
    jobs: int = 1
    checks: tuple[int, ...] = ALL_CHECKS

    @property
    def setup(self) -> MultiplicitySetup:
        return MultiplicitySetup(self.d, self.k)

    def profile(self):
        return make_profile(self.function, **dict(self.function_params))

    def validate(self) -> "RunConfig":
        setup = self.setup
        N = setup.hom_dim
        if not 0.0 < self.alpha < N:
            raise AlphaOutOfRange(f"alpha = {self.alpha} must lie in (0, {N:g})")
        self.profile()
        if self.rho_points < 2 or self.rho_max <= 0:
            raise ParameterOutOfRange("need rho_points >= 2 and rho_max > 0")
        if not (1.0 < self.p <= self.q) or self.r <= 1.0:
            raise ParameterOutOfRange("need 1 < p <= q and r > 1")
        if not (1.0 < self.sobolev_p <= self.sobolev_q) or self.sobolev_r <= 1.0:
            raise ParameterOutOfRange("need 1 < p <= q and r > 1 for the Sobolev check")
        for kind in (self.u_kind, self.v_kind):
            if kind not in WEIGHT_KINDS:
                raise ConfigError(f"weight kind must be one of {WEIGHT_KINDS}, got {kind!r}")
        if any(l <= 0 for l in self.lambdas) or not self.lambdas:
            raise ParameterOutOfRange("dilation factors must be positive")
        if self.jobs < 1:
            raise ParameterOutOfRange("jobs must be >= 1")
        bad = [c for c in self.checks if c not in ALL_CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}")
        return self

    def as_dict(self) -> dict:
        out = asdict(self)
        out["quad"] = self.quad.as_dict()
        out["k"] = list(self.k)
        out["function_params"] = dict(self.function_params)
        return out


_SECTIONS = {
    "setup": ("d", "k"),
    "riesz": ("alpha", "points"),
    "transform": ("rho_max", "rho_points"),
    "weights": ("p", "q", "r", "u_kind", "u_delta", "v_kind", "v_delta"),
    "sobolev": ("sobolev_p", "sobolev_q", "sobolev_r", "sobolev_delta", "lambdas"),
    "output": ("out",),
    "suite": ("jobs", "checks"),
}
# INI key names that differ from the dataclass field names
_ALIASES = {
    ("sobolev", "p"): "sobolev_p",
    ("sobolev", "q"): "sobolev_q",
    ("sobolev", "r"): "sobolev_r",
    ("sobolev", "delta"): "sobolev_delta",
    ("output", "dir"): "out",
}
_KEY_OF = {v: k[1] for k, v in _ALIASES.items()}
_QUAD_FIELDS = {f.name: f.type for f in fields(QuadratureSpec)}


def _convert(name: str, text: str):
    text = text.strip()
    if name in ("k", "points", "lambdas"):
        return _floats(text)
    if name == "checks":
        if text.lower() == "all":
            return ALL_CHECKS
        return tuple(int(v) for v in text.replace(",", " ").split())
    if name in ("d", "rho_points", "jobs"):
        return int(text)
    if name in ("u_kind", "v_kind"):
        return text
    if name in ("out", "sobolev_delta"):
        if text.lower() in ("", "none"):
            return None
        return text if name == "out" else float(text)
    return float(text)


def parse_config(text: str) -> RunConfig:
    """Parse INI text into a validated RunConfig; raises ConfigError or a parameter error."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    values: dict = {}
    known = set(_SECTIONS) | {"function", "quadrature"}
    for section in cp.sections():
        if section not in known:
            raise ConfigError(f"unknown section [{section}]")
        for key, raw in cp.items(section):
            try:
                if section == "function":
                    if key == "name":
                        values["function"] = raw.strip()
                    else:
                        values.setdefault("function_params", []).append((key, float(raw)))
                    continue
                if section == "quadrature":
                    if key not in _QUAD_FIELDS:
                        raise ConfigError(f"unknown quadrature key {key!r}")
                    values.setdefault("quad", {})[key] = _quad_value(key, raw)
                    continue
                name = _ALIASES.get((section, key), key)
                if name not in _SECTIONS[section]:
                    raise ConfigError(f"unknown key {key!r} in [{section}]")
                values[name] = _convert(name, raw)
            except ValueError as exc:
                if isinstance(exc, DunklError):
                    raise
                raise ConfigError(f"bad value for {section}.{key}: {raw!r}") from exc
    if "function_params" in values:
        values["function_params"] = tuple(sorted(values["function_params"]))
    if "quad" in values:
        values["quad"] = QuadratureSpec(**values["quad"])
    if "d" in values and "k" in values and len(values["k"]) == 1:
        values["k"] = values["k"] * values["d"]
    elif "d" in values and "k" not in values:
        values["k"] = RunConfig.k * values["d"]
    return RunConfig(**values).validate()


def _quad_value(key: str, raw: str):
    raw = raw.strip()
    if key == "radius":
        return None if raw.lower() in ("", "none") else float(raw)
    if key in ("nodes", "oscillations", "max_doublings"):
        return int(raw)
    return float(raw)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def serialize_config(cfg: RunConfig) -> str:
    """INI text such that parse_config(serialize_config(c)) == c."""
    lines = []
    for section, names in _SECTIONS.items():
        if section == "transform":
            lines.append("[function]")
            lines.append(f"name = {cfg.function}")
            for key, val in cfg.function_params:
                lines.append(f"{key} = {val!r}")
            lines.append("")
            lines.append("[quadrature]")
            for key, val in cfg.quad.as_dict().items():
                lines.append(f"{key} = {'none' if val is None else _fmt(val)}")
            lines.append("")
        lines.append(f"[{section}]")
        for name in names:
            val = getattr(cfg, name)
            if name == "checks" and tuple(val) == ALL_CHECKS:
                val = "all"
            lines.append(f"{_KEY_OF.get(name, name)} = {'none' if val is None else _fmt(val)}")
        lines.append("")
    return "\n".join(lines)


DEFAULT_CONFIG_TEXT = serialize_config(RunConfig())


def default_config() -> RunConfig:
    return RunConfig().validate()


def is_classical(cfg: RunConfig) -> bool:
    return cfg.d == 1 and all(v == 0.0 for v in cfg.k)
