"""Moebius-flat projective surface toolkit (python bindings)."""

from mobiusflat._core import (
    Grid,
    MflatError,
    WilczynskiData,
    bgg_report,
    centroaffine_report,
    compatibility_residual,
    conservation_residual,
    darboux_cubic,
    deform,
    diff_expr,
    eval_expr,
    moebius_flat_residuals,
    spectral_sweep,
    theorem1_residuals,
)

__all__ = [
    "Grid",
    "MflatError",
    "WilczynskiData",
    "bgg_report",
    "centroaffine_report",
    "compatibility_residual",
    "conservation_residual",
    "darboux_cubic",
    "deform",
    "diff_expr",
    "eval_expr",
    "moebius_flat_residuals",
    "spectral_sweep",
    "theorem1_residuals",
]
