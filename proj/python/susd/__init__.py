"""Python interface to the distributed source-seeking simulator core."""

from pathlib import Path

from ._core import (
    DegenerateInputError,
    ParseError,
    alignment_error,
    bounds_report,
    covariance,
    oja_flow,
    principal_axes,
    run_scenario,
    verify_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateInputError",
    "ParseError",
    "alignment_error",
    "bounds_report",
    "covariance",
    "load_scenario_text",
    "oja_flow",
    "principal_axes",
    "run_scenario",
    "verify_scenario",
]


def load_scenario_text(path):
    """Read a scenario JSON file and return its text for the run/verify entry points."""
    return Path(path).read_text(encoding="utf-8")
