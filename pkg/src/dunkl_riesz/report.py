"""Check records, suite reports and the CSV/JSON writers used by the CLI."""

from __future__ import annotations

import csv
import io
import json
import math
import platform
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
import scipy

SCHEMA_VERSION = "1"


def _clean(obj: Any) -> Any:
    """JSON-safe copy: numpy scalars and arrays become Python values, inf/nan become strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, complex):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    return obj


# measured durations; documents carry them inside the environment block so
# everything else is reproducible byte for byte
TIMING_KEYS = frozenset({"wall_time", "runtime"})


def split_timings(obj: Any, path: str = "") -> tuple[Any, dict]:
    """Copy of ``obj`` without timing keys, plus {path: value} for the removed entries."""
    timings: dict = {}
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            here = f"{path}/{k}" if path else str(k)
            if k in TIMING_KEYS:
                timings[here] = v
                continue
            out[k], sub = split_timings(v, here)
            timings.update(sub)
        return out, timings
    if isinstance(obj, (list, tuple)):
        items = []
        for i, v in enumerate(obj):
            item, sub = split_timings(v, f"{path}/{i}")
            items.append(item)
            timings.update(sub)
        return items, timings
    return obj, timings


def _with_timings(doc: dict) -> dict:
    body, timings = split_timings({k: v for k, v in doc.items() if k != "environment"})
    body["environment"] = {**doc["environment"], "timings": timings}
    return body


def dumps(obj: Any) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


def environment_stamp() -> dict:
    return {
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "platform": platform.platform(),
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


@dataclass
class CheckRecord:
    """One verification: ``anchor`` names the result checked, or "plumbing"."""

    name: str
    anchor: str
    value: Any
    expected: Any
    tolerance: float | None
    passed: bool
    wall_time: float = 0.0
    detail: dict = field(default_factory=dict)
    error: str | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "value": self.value,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "passed": bool(self.passed),
            "wall_time": self.wall_time,
            "detail": self.detail,
            "error": self.error,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tol = "" if self.tolerance is None else f" tol={self.tolerance:.1e}"
        val = f"{self.value:.3e}" if isinstance(self.value, float) else str(self.value)
        return f"[{status}] {self.name}: value={val}{tol} ({self.wall_time:.1f} s)"


@dataclass
class SuiteReport:
    title: str
    records: list[CheckRecord] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    environment: dict = field(default_factory=environment_stamp)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def as_dict(self) -> dict:
        return _with_timings(
            {
                "schema_version": SCHEMA_VERSION,
                "title": self.title,
                "passed": self.passed,
                "records": [r.as_dict() for r in self.records],
                "config": self.config,
                "environment": self.environment,
            }
        )

    def summary(self) -> str:
        lines = [r.line() for r in self.records]
        lines.append(f"{sum(r.passed for r in self.records)}/{len(self.records)} checks passed")
        return "\n".join(lines)


def json_document(kind: str, payload: dict, config: dict | None = None, environment: dict | None = None) -> dict:
    """Envelope for single-computation JSON outputs; timings move into the environment block."""
    return _with_timings(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": kind,
            "result": payload,
            "config": config or {},
            "environment": environment if environment is not None else environment_stamp(),
        }
    )


def write_json(path: Path, obj: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8")
    return path


def format_number(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_number(v) for v in row])
    return buf.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(header, rows), encoding="utf-8")
    return path
