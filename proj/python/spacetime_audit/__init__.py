"""Python front end to the spacetime-audit core."""

import json

from ._core import (
    Error,
    InputError,
    ManifoldSpec,
    MetricError,
    ParseError,
    canonical,
    known_checks,
    load_spec,
    parse_spec,
    render,
)

__all__ = [
    "Error",
    "InputError",
    "ManifoldSpec",
    "MetricError",
    "ParseError",
    "analyze",
    "canonical",
    "check",
    "classify",
    "known_checks",
    "load_spec",
    "parse_spec",
    "render",
]


def _spec(source):
    return source if isinstance(source, ManifoldSpec) else load_spec(str(source))


def analyze(source, numeric=None):
    return json.loads(render(_spec(source), "analyze", numeric=numeric))


def classify(source):
    return json.loads(render(_spec(source), "classify"))


def check(source, name):
    return json.loads(render(_spec(source), "check", check=name))
