"""Smoke tests for the python bindings: each main operation runs end to end
on the reference data sets and reproduces the library-level numbers."""

import math

import pytest

import mobiusflat as mf


GRID = mf.Grid(41, 41, 0.0, 0.0, 0.025, 0.025)


def e3(**extra):
    return mf.WilczynskiData.from_exprs(GRID, "2", "1", "5/2", "3/2", **extra)


def test_expr_eval_and_diff():
    assert mf.eval_expr("2*x + sin(y)^2", 0.5, 1.0) == pytest.approx(
        1.0 + math.sin(1.0) ** 2
    )
    dy = mf.diff_expr("x*y^2", "y")
    assert mf.eval_expr(dy, 3.0, 2.0) == pytest.approx(12.0)
    with pytest.raises(mf.MflatError):
        mf.eval_expr("2 +", 0.0, 0.0)


def test_compatibility():
    assert mf.compatibility_residual(e3()) < 1e-12
    bad = mf.WilczynskiData.from_exprs(GRID, "0", "0", "y", "0")
    assert mf.compatibility_residual(bad) > 1e-3


def test_moebius_flat_residuals():
    data = e3(a="1", b="1")
    for sign in ("intro", "derived"):
        res = mf.moebius_flat_residuals(data, sign=sign)
        assert max(res.values()) < 1e-12
    tripped = mf.moebius_flat_residuals(e3(a="y", b="0"))
    assert tripped["r_c"] == pytest.approx(2.0)


def test_spectral_sweep():
    rows = mf.spectral_sweep(e3(), [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0])["rows"]
    assert len(rows) == 6
    for row in rows:
        assert row["curvature"] < 1e-10
        assert row["route_agreement"] < 1e-11


def test_theorem1_and_conservation():
    data = e3(alpha="(x + y)/2")
    assert max(mf.theorem1_residuals(data)) < 1e-12
    assert mf.conservation_residual(data) < 1e-10

    perturbed = mf.WilczynskiData.from_exprs(
        GRID, "2", "1", "2.6", "3/2", alpha="(x + y)/2"
    )
    assert mf.conservation_residual(perturbed) > 1e-3


def test_deform_round_trip():
    e2 = mf.WilczynskiData.from_exprs(GRID, "1", "1", "0", "0")
    out = mf.deform(e2, 2.0)
    assert out["path_residual"] < 1e-9
    assert out["beta_max"] == pytest.approx(2.0, abs=1e-6)
    assert out["gamma_max"] == pytest.approx(2.0, abs=1e-6)
    assert out["V_max"] < 1e-6


def test_centroaffine_report():
    rep = mf.centroaffine_report("exp(x)", "exp(y)", "exp(-x - y)", GRID)
    assert rep["g11"] == pytest.approx(2.0 / 3.0, abs=1e-11)
    assert rep["g12"] == pytest.approx(1.0 / 3.0, abs=1e-11)
    assert rep["gauss_curvature"] < 1e-8
    assert rep["chebyshev"] < 1e-8
    assert rep["conserved_total"] < 1e-6


def test_bgg_report():
    rep = mf.bgg_report(e3(a="1", b="1"))
    assert rep["cotton_york_1"] < 1e-12
    assert rep["cotton_york_2"] < 1e-12
    assert rep["cup"] < 1e-12
    assert rep["normality"] < 1e-11

    tripped = mf.bgg_report(e3(a="y", b="0"))
    assert tripped["cotton_york_1"] == pytest.approx(2.0)
