"""Graph and certificate JSON, number formatting."""

from __future__ import annotations

import json
import math
import re

from .errors import GraphError
from .graph import Graph

_TIME = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")


def round15(x: float) -> float:
    """Round to 15 significant digits."""
    return float(f"{x:.15g}")


def clean(obj):
    """Recursively round floats for output; leaves ints, bools and strings alone."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round15(obj)
    if isinstance(obj, dict):
        return {k: clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if hasattr(obj, "item"):
        return clean(obj.item())
    return obj


def dumps(obj) -> str:
    return json.dumps(clean(obj), indent=2) + "\n"


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v, w] for u, v, w in g.edges]}


def graph_from_dict(data) -> Graph:
    if not isinstance(data, dict) or "n" not in data:
        raise GraphError('graph JSON must be an object with an "n" field')
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise GraphError(f'"n" must be a non-negative integer, got {n!r}')
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise GraphError('"edges" must be an array')
    for e in edges:
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise GraphError(f"edge must be [u, v] or [u, v, w], got {e!r}")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in e[:2]):
            raise GraphError(f"edge endpoints must be integers, got {e!r}")
        if len(e) == 3 and (isinstance(e[2], bool) or not isinstance(e[2], (int, float))):
            raise GraphError(f"edge weight must be a number, got {e!r}")
    return Graph.from_edges(n, [tuple(e) for e in edges])


def graph_dumps(g: Graph) -> str:
    return dumps(graph_to_dict(g))


def graph_loads(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def parse_time(token: str) -> float:
    """Parse ``1.5``, ``pi``, ``pi/2``, ``3pi/2``, ``2*pi`` and similar."""
    m = _TIME.match(token)
    if m:
        coeff = float(m.group(1)) if m.group(1) else 1.0
        denom = int(m.group(2)) if m.group(2) else 1
        if denom == 0:
            raise ValueError("division by zero in time")
        return coeff * math.pi / denom
    try:
        value = float(token)
    except ValueError:
        raise ValueError(f"cannot parse time {token!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"time must be finite, got {token!r}")
    return value
