"""Exact Saito structure and contact-order bases for finite Coxeter groups."""

import json

from ._core import (
    ConfigError,
    Context,
    Error,
    ParseError,
    ValidationError,
    run_cli,
    suite_names,
)

__all__ = [
    "ConfigError",
    "Context",
    "Error",
    "ParseError",
    "ValidationError",
    "run_cli",
    "suite_names",
    "verify",
]


def verify(ctx, suites=(), kmax=3, mmax=7, pmax=3, jobs=1):
    """Runs the check suites on `ctx` and returns the report as a dict."""
    return json.loads(ctx.verify_json(list(suites), kmax, mmax, pmax, jobs))
