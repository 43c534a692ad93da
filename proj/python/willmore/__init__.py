"""Willmore energy of surfaces of revolution."""

import json
import os

_data = os.path.join(os.path.dirname(__file__), "data")
if os.path.isdir(_data):
    os.environ.setdefault("WILLMORE_DATA", _data)

from ._core import (
    GeometryError,
    ParameterError,
    ParseError,
    builtin_curve,
    builtin_curve_names,
    catsph_energy,
    energy,
    energy_of,
    flow,
    model_curve,
    model_energy,
    multiplicity,
    read_profile,
    run_cli,
    shrinking_trace,
    sweep_csv,
    turning_number,
)


def verify(suite, *args):
    """Run a verification suite; returns (passed, report dict)."""
    code, out, err = run_cli(["verify", suite, *args])
    if code == 2:
        raise ParameterError(err.strip())
    return code == 0, json.loads(out)


__all__ = [
    "GeometryError",
    "ParameterError",
    "ParseError",
    "builtin_curve",
    "builtin_curve_names",
    "catsph_energy",
    "energy",
    "energy_of",
    "flow",
    "model_curve",
    "model_energy",
    "multiplicity",
    "read_profile",
    "run_cli",
    "shrinking_trace",
    "sweep_csv",
    "turning_number",
    "verify",
]
