"""Exact determinant-line computations and verification campaigns."""

import json

from ._core import (
    ConfigError,
    Error,
    Gaussian,
    ParseError,
    RatFunc,
    campaign_names,
    compute_kinds,
    default_grid,
    det,
    rank,
    rational_reconstruct,
)
from . import _core

__all__ = [
    "ConfigError",
    "Error",
    "Gaussian",
    "ParseError",
    "RatFunc",
    "campaign_names",
    "compute",
    "compute_kinds",
    "default_grid",
    "det",
    "rank",
    "rational_reconstruct",
    "run_campaign",
]


def run_campaign(name, seed=1, trials=None, max_dim=None, field="gaussian", grid=None,
                 corrupt_oracle=False):
    """Run a named campaign and return its report as a dict."""
    report = _core._run_campaign(name, seed, trials, max_dim, field,
                                 None if grid is None else [str(z) for z in grid],
                                 corrupt_oracle)
    return json.loads(report)


def compute(kind, data, grid=None):
    """Ad-hoc computation on a JSON-compatible input (dict or JSON text)."""
    text = data if isinstance(data, str) else json.dumps(data)
    return json.loads(_core._compute(kind, text, None if grid is None else [str(z) for z in grid]))
