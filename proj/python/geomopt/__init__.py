"""Python bindings for the geomopt library."""

import json as _json

from ._geomopt import *  # noqa: F401,F403
from ._geomopt import _run_config, _sweep_csv


def run(config):
    """Run one experiment from a config dict. Returns the sidecar dict plus per-optimizer series."""
    return _run_config(_json.dumps(config))


def sweep_csv(config):
    """Run a sweep from a config dict and return the CSV table as text."""
    return _sweep_csv(_json.dumps(config))
