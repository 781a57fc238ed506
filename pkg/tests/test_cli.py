import csv
import json

import pytest

from dunkl_riesz import cli
from dunkl_riesz.report import CheckRecord, SuiteReport, csv_text, dumps, split_timings


def run(argv):
    return cli.main(argv)


def strip_env(path):
    doc = json.loads(path.read_text())
    doc.pop("environment")
    return doc


@pytest.mark.parametrize(
    "command, files",
    [
        ("constants", ["constants.json"]),
        ("transform", ["transform.csv"]),
        ("riesz", ["riesz.csv"]),
        ("rearrange", ["rearrange.csv"]),
        ("hardy-check", ["hardy_check.json"]),
        ("sobolev-check", ["sobolev_sweep.csv", "sobolev_check.json"]),
    ],
)
def test_subcommands_pass_and_are_deterministic(tmp_path, command, files, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run([command, "--out", str(a)]) == 0
    assert run([command, "--out", str(b)]) == 0
    assert "[PASS]" in capsys.readouterr().out
    for name in files:
        if name.endswith(".csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()
        else:
            assert strip_env(a / name) == strip_env(b / name)


def test_csv_uses_round_trip_precision(tmp_path):
    assert run(["riesz", "--out", str(tmp_path)]) == 0
    with (tmp_path / "riesz.csv").open() as fh:
        rows = list(csv.reader(fh))
    assert len(rows) > 1
    for cell in rows[1]:
        assert float(cell) == float(repr(float(cell)))
    assert csv_text(["v"], [[0.1]]) == "v\n0.10000000000000001\n"


def test_decay_fit_writes_report(tmp_path):
    assert run(["decay-fit", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "decay_fit.json").read_text())
    assert doc["kind"] == "decay-fit"
    assert "wall_time" not in doc["result"]
    assert "result/wall_time" in doc["environment"]["timings"]


def test_validate_subset_with_classical_config(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[setup]\nk = 0\n[suite]\nchecks = 1, 2\n")
    assert run(["validate", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "validate.json").read_text())
    names = [r["name"] for r in doc["records"]]
    assert "classical-reduction" in names
    assert doc["passed"] is True
    out = capsys.readouterr().out
    assert out.strip().endswith(f"{len(names)}/{len(names)} checks passed")


def test_exit_code_two_for_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[riesz]\nalpha = 2.5\n")
    assert run(["riesz", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert not (tmp_path / "riesz.csv").exists()
    assert run(["riesz", "--config", str(tmp_path / "missing.ini")]) == 2
    assert run(["constants", "--jobs", "0", "--out", str(tmp_path)]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_exit_code_one_when_a_check_fails(tmp_path, monkeypatch):
    def failing(cfg, out):
        return SuiteReport("x", [CheckRecord("broken", "plumbing", 1.0, 0.0, 0.0, False)])

    monkeypatch.setitem(cli.COMMANDS, "constants", failing)
    assert run(["constants", "--out", str(tmp_path)]) == 1


def test_output_directory_precedence(tmp_path, monkeypatch):
    cfg = cli.default_config()
    monkeypatch.delenv(cli.OUT_ENV, raising=False)
    monkeypatch.chdir(tmp_path)
    assert cli.output_dir(None, cfg) == tmp_path
    from dataclasses import replace

    with_out = replace(cfg, out="from-config")
    assert str(cli.output_dir(None, with_out)) == "from-config"
    monkeypatch.setenv(cli.OUT_ENV, "from-env")
    assert str(cli.output_dir(None, with_out)) == "from-env"
    assert str(cli.output_dir("from-flag", with_out)) == "from-flag"


def test_json_helpers():
    body, timings = split_timings({"a": 1, "wall_time": 2.0, "rows": [{"runtime": 3.0, "x": 1}]})
    assert body == {"a": 1, "rows": [{"x": 1}]}
    assert timings == {"wall_time": 2.0, "rows/0/runtime": 3.0}
    assert json.loads(dumps({"b": float("inf"), "a": float("nan")})) == {"a": "nan", "b": "inf"}
