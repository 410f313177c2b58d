"""Gabor frame diagnostics for totally positive windows on rational lattices."""

import json as _json

from . import _core
from ._core import (
    InvalidArgument,
    NumericalFailure,
    Window,
    alternating_witness,
    build_G,
    injectivity_scan,
    locate_zero,
    minor_audit,
    perturbation,
    pregramian,
    scan_csv,
    zak,
    zak_grid,
    zz_lower_bound,
)


def diagnose(window="gaussian", alpha="1/2", beta="1", **options):
    """Full frame analysis of one lattice; returns the diagnosis as a dict."""
    return _json.loads(_core._diagnose_json(window, str(alpha), str(beta), **options))


def bounds(window="gaussian", alpha="1/2", beta="1", **options):
    """Frame-bound estimate from the pre-Gramian ladder."""
    return _json.loads(_core._bounds_json(window, str(alpha), str(beta), **options))


__all__ = [
    "InvalidArgument",
    "NumericalFailure",
    "Window",
    "alternating_witness",
    "bounds",
    "build_G",
    "diagnose",
    "injectivity_scan",
    "locate_zero",
    "minor_audit",
    "perturbation",
    "pregramian",
    "scan_csv",
    "zak",
    "zak_grid",
    "zz_lower_bound",
]
