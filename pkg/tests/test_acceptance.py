"""One test per acceptance criterion; each prints a [PASS]/[FAIL] line."""

import math

from dunkl_riesz import acceptance


def test_01_classical_kernel(report_line):
    rec = report_line(acceptance.check_kernel_classical())
    assert rec.detail["points"] == 441
    assert rec.value <= 1e-12 and rec.detail["runtime"] < 1.0 and rec.passed


def test_02_gaussian_mass(report_line):
    rec = report_line(acceptance.check_gaussian_mass())
    assert rec.value <= 1e-10 and rec.passed


def test_03_exponential_pair(report_line):
    rec = report_line(acceptance.check_exponential_pair())
    assert rec.value <= 1e-6 and rec.passed


def test_04_plancherel(report_line):
    rec = report_line(acceptance.check_plancherel())
    assert rec.value <= 1e-8 and rec.passed


def test_05_translation(report_line):
    rec = report_line(acceptance.check_translation())
    assert rec.value <= 1e-8 and rec.passed


def test_06_riesz_routes(report_line):
    rec = report_line(acceptance.check_riesz_routes())
    assert rec.value <= 1e-4
    assert rec.detail["classical_oracle"] <= 1e-5
    assert rec.passed


def test_07_riesz_decay(report_line):
    rec = report_line(acceptance.check_decay())
    assert rec.value <= 0.05 and rec.detail["runtime"] < 120.0 and rec.passed


def test_08_rearrangement(report_line):
    rec = report_line(acceptance.check_rearrangement())
    assert rec.value <= 1e-2
    assert rec.detail["hardy_littlewood_equality"] <= 1e-8
    assert rec.passed


def test_09_power_weight_sweep(report_line):
    rec = report_line(acceptance.check_corollary_sweep())
    assert rec.value == 0.0
    assert rec.detail["satisfying"] == 10 and len(rec.detail["cases"]) == 20
    assert rec.passed


def test_10_two_weight_empirical(report_line):
    rec = report_line(acceptance.check_two_weight())
    assert rec.detail["verdict"] == "finite"
    assert math.isfinite(rec.detail["max_ratio"])
    assert rec.detail["lambda_spread"] < 1e-3
    assert rec.value < 0.05 and rec.passed


def test_11_sobolev(report_line):
    rec = report_line(acceptance.check_sobolev())
    assert rec.value < 1e-3
    assert rec.detail["offset_drift_min"] >= 0.10
    assert rec.detail["verdict_mismatches"] == 0
    assert rec.passed


def test_12_riesz_transform(report_line):
    rec = report_line(acceptance.check_riesz_transform())
    assert rec.value <= 1e-8
    assert rec.detail["square_minus_identity"] <= 1e-10
    assert rec.detail["hilbert_oracle"] <= 1e-8
    assert rec.passed


def test_13_maximal_domination(report_line):
    rec = report_line(acceptance.check_maximal())
    assert math.isfinite(rec.value)
    assert rec.detail["tail_growth"] < 0.05
    assert rec.passed
