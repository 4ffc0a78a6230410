"""Leakage analysis of action-based randomization mechanisms.

Mechanisms and strategies are plain JSON-compatible values: a mechanism is a
dict with ``secrets``, ``observations`` and ``actions`` (plus optional
``prior`` and ``secret_values``); a strategy is a list of action names or a
node ``{"action": ..., "children": {obs: node, "*": node}}``.
"""

import json

from . import _core
from ._core import QifError

__all__ = [
    "QifError",
    "capacity",
    "capacity_search",
    "classes",
    "convergence_probe",
    "estimate_leakage",
    "expand_nonadaptive",
    "ingest",
    "leakage",
    "load",
    "max_leakage",
    "optimal_strategy",
    "psr_scores",
    "uncertainty",
    "validate",
]


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def load(path):
    """Read a mechanism or strategy JSON file."""
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def validate(mechanism):
    """Row violations as strings; empty when the mechanism is valid."""
    return _core.validate(_text(mechanism))


def leakage(mechanism, strategy, measure="shannon", prior=None):
    return json.loads(_core.leakage(_text(mechanism), _text(strategy), measure, prior))


def max_leakage(mechanism, measure="shannon", prior=None):
    return _core.max_leakage(_text(mechanism), measure, prior)


def capacity(mechanism, measure="shannon"):
    return _core.capacity(_text(mechanism), measure)


def capacity_search(mechanism, measure="shannon", restarts=32, seed=0):
    """Best (prior, value) found by hill climbing over class representatives."""
    return _core.capacity_search(_text(mechanism), measure, restarts, seed)


def classes(mechanism):
    return _core.classes(_text(mechanism))


def optimal_strategy(mechanism, horizon, measure="shannon", prior=None):
    return json.loads(_core.optimal_strategy(_text(mechanism), horizon, measure, prior))


def expand_nonadaptive(strategy):
    return json.loads(_core.expand_nonadaptive(_text(strategy)))


def estimate_leakage(mechanism, strategy, measure="shannon", trials=100000, seed=0, prior=None):
    return json.loads(_core.estimate_leakage(_text(mechanism), _text(strategy), measure, trials, seed, prior))


def convergence_probe(mechanism, rounds, measure="shannon", prior=None):
    """(round, leakage, gap) for lock-step strategies of length 1..rounds."""
    return _core.convergence_probe(_text(mechanism), rounds, measure, prior)


def uncertainty(measure, belief, secret_values=None):
    return _core.uncertainty(measure, belief, secret_values)


def psr_scores(measure, forecast, secret_values=None):
    return _core.psr_scores(measure, forecast, secret_values)


def ingest(csv_path, secret_col, attrs, noise=None):
    return json.loads(_core.ingest(str(csv_path), secret_col, list(attrs), dict(noise or {})))
