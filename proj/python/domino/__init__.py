"""Python bindings for the domino core library."""

import json as _json

from ._domino import dehn_reduce, eigen, expand, is_identity, ring_size, solve_json

__all__ = ["dehn_reduce", "eigen", "expand", "is_identity", "ring_size", "solve", "solve_json"]


def solve(instance, budget=1000000):
    """Solve an instance given as a dict; returns the result dict."""
    return _json.loads(solve_json(_json.dumps(instance), budget))
