"""JSON formats.

Graph: ``{"n": int, "edges": [[u, v], ...], "loops": [v, ...]}``.
Instance: ``{"graph": Graph, "pattern": Graph, "revenue": [[...], ...]}``.
List instance: ``{"graph": Graph, "pattern": "H0" | Graph, "lists": [[...], ...]}``.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .graph import Graph
from .hardness import ListInstance, build_H0
from .model import Instance, pattern


class FormatError(ValueError):
    """Malformed JSON document."""


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer")
    return x


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)], "loops": sorted(g.loops)}


def graph_from_json(obj: Any) -> Graph:
    if not isinstance(obj, dict):
        raise FormatError("graph must be an object")
    n = _int(obj.get("n"), "n")
    if n < 0 or n > 4096:
        raise FormatError("n out of range")
    edges = obj.get("edges", [])
    loops = obj.get("loops", [])
    if not isinstance(edges, list) or not isinstance(loops, list):
        raise FormatError("edges and loops must be lists")
    pairs = []
    seen = set()
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError("each edge must be a pair")
        u, v = (_int(x, "edge endpoint") for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge {e} out of range")
        if u == v:
            raise FormatError(f"edge {e} is a loop; list it under loops")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {e}")
        seen.add(key)
        pairs.append(key)
    lv = [_int(v, "loop") for v in loops]
    if any(not 0 <= v < n for v in lv):
        raise FormatError("loop out of range")
    return Graph.from_edges(n, pairs, lv)


def instance_to_json(inst: Instance) -> dict:
    return {
        "graph": graph_to_json(inst.host),
        "pattern": graph_to_json(inst.pattern.graph),
        "revenue": [list(row) for row in inst.rev],
    }


def instance_from_json(obj: Any) -> Instance:
    if not isinstance(obj, dict):
        raise FormatError("instance must be an object")
    g = graph_from_json(obj.get("graph"))
    h = graph_from_json(obj.get("pattern"))
    rev = obj.get("revenue")
    if not isinstance(rev, list) or not all(isinstance(r, list) for r in rev):
        raise FormatError("revenue must be a list of rows")
    for row in rev:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise FormatError("revenues must be finite numbers")
    try:
        return Instance(g, pattern(h), tuple(tuple(row) for row in rev))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def list_instance_to_json(li: ListInstance) -> dict:
    pat: Any = "H0" if li.pattern == build_H0() else graph_to_json(li.pattern.graph)
    return {"graph": graph_to_json(li.graph), "pattern": pat, "lists": [list(x) for x in li.lists]}


def list_instance_from_json(obj: Any) -> ListInstance:
    if not isinstance(obj, dict):
        raise FormatError("list instance must be an object")
    g = graph_from_json(obj.get("graph"))
    p = obj.get("pattern")
    h = build_H0() if p == "H0" else pattern(graph_from_json(p))
    lists = obj.get("lists")
    if not isinstance(lists, list) or not all(isinstance(x, list) for x in lists):
        raise FormatError("lists must be a list of lists")
    try:
        return ListInstance(g, h, tuple(tuple(_int(c, "colour") for c in x) for x in lists))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def dumps(obj: Any) -> str:
    """Canonical JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except (json.JSONDecodeError, RecursionError) as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
