# mtsc: metamorphic testing of smart contracts
# Copyright 2026 The mtsc Authors.
# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the mtsc metamorphic testing tool."""

import json
import os

from ._mtsc import default_schedule, fdr, format_percent, format_source, run, tpr, validate_source

__all__ = [
    "MtscError",
    "bench",
    "check",
    "default_schedule",
    "estimate",
    "fdr",
    "format_percent",
    "format_source",
    "run",
    "tpr",
    "validate_source",
]


class MtscError(RuntimeError):
    """Raised when the tool rejects its input (exit code 2)."""


def _flags(options):
    args = []
    for key, value in options.items():
        if value is None:
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, (list, tuple)):
            value = ",".join(value)
        args += [flag, str(value)]
    return args


def _invoke(command, target, options):
    code, out, err = run([command, os.fspath(target), "--format", "json", *_flags(options)])
    if code == 2:
        raise MtscError(err.strip())
    return code, json.loads(out)


def check(scenario, **options):
    """Checks one scenario. Returns (vulnerable, report)."""
    code, report = _invoke("check", scenario, options)
    return code == 1, report


def bench(directory, **options):
    """Checks every scenario in a directory against its labels. Returns the report."""
    return _invoke("bench", directory, options)[1]


def estimate(scenario, **options):
    """Intrinsic gas of the scenario's target per actor kind."""
    return _invoke("estimate", scenario, options)[1]
