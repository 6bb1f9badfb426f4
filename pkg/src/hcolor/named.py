"""Constructors for the named graphs used throughout the package."""

from __future__ import annotations

import re

from .graph import Graph, disjoint_union


def path(t: int) -> Graph:
    return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])


def cycle(t: int) -> Graph:
    if t < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def complete(t: int) -> Graph:
    return Graph.from_edges(t, [(i, j) for i in range(t) for j in range(i + 1, t)])


def edgeless(t: int) -> Graph:
    return Graph(t)


def star_subdivision(t: int) -> Graph:
    """S_t: centre 0, middle vertices 1..t, leaves t+1..2t."""
    edges = [(0, i) for i in range(1, t + 1)] + [(i, t + i) for i in range(1, t + 1)]
    return Graph.from_edges(2 * t + 1, edges)


def star_subdivision_clique(t: int) -> Graph:
    """L_t: S_t with the leaves made pairwise adjacent; L_1 is P_3."""
    if t == 1:
        return path(3)
    base = star_subdivision(t)
    leaves = range(t + 1, 2 * t + 1)
    extra = [(a, b) for a in leaves for b in leaves if a < b]
    return Graph.from_edges(base.n, list(base.edges) + extra)


def half_graph(k: int) -> Graph:
    """Q_k: independent a_1..a_k (ids 0..k-1), clique b_1..b_k (ids k..2k-1),
    a_i ~ b_j iff i <= j."""
    edges = [(k + i, k + j) for i in range(k) for j in range(i + 1, k)]
    edges += [(i, k + j) for i in range(k) for j in range(i, k)]
    return Graph.from_edges(2 * k, edges)


def univ(f: Graph) -> Graph:
    """``f`` plus a universal vertex (id ``f.n``)."""
    return Graph.from_edges(f.n + 1, list(f.edges) + [(v, f.n) for v in range(f.n)])


def ante(f: Graph) -> Graph:
    """``f`` plus an isolated vertex ``f.n``, then a universal vertex ``f.n + 1``."""
    y = f.n + 1
    return Graph.from_edges(f.n + 2, list(f.edges) + [(v, y) for v in range(f.n + 1)])


def bull() -> Graph:
    # triangle 0-1-2 with pendant horns 3 (on 0) and 4 (on 1)
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)])


def gem() -> Graph:
    return univ(path(4))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


_INDEXED = {
    "P": path,
    "C": cycle,
    "K": complete,
    "E": edgeless,
    "S": star_subdivision,
    "L": star_subdivision_clique,
    "Q": half_graph,
}


def make_named(kind: str, param: int | Graph | None = None) -> Graph:
    """Build a named graph.

    ``kind`` is one of ``P C K E S L Q`` (with a positive integer ``param``),
    ``univ``/``ante`` (with a graph ``param``), or ``bull``/``gem``/``petersen``.
    """
    if kind in _INDEXED:
        if not isinstance(param, int) or isinstance(param, bool) or param < 1:
            raise ValueError(f"{kind} needs a positive integer parameter, got {param!r}")
        return _INDEXED[kind](param)
    if kind in ("univ", "ante"):
        if not isinstance(param, Graph):
            raise ValueError(f"{kind} needs a graph parameter")
        return univ(param) if kind == "univ" else ante(param)
    if kind in ("bull", "gem", "petersen"):
        return {"bull": bull, "gem": gem, "petersen": petersen}[kind]()
    raise ValueError(f"unknown graph kind {kind!r}")


_NAME = re.compile(r"^(\d*)([A-Za-z]+?)(\d*)$")


def parse_named(name: str) -> Graph:
    """Graph from a short name such as ``P5``, ``C4``, ``2K2``, ``bull`` or ``Q3``."""
    m = _NAME.match(name.strip())
    if not m:
        raise ValueError(f"cannot parse graph name {name!r}")
    copies, kind, index = m.groups()
    g = make_named(kind, int(index)) if index else make_named(kind)
    if copies:
        g = disjoint_union(*([g] * int(copies)))
    return g


def gen_p7_counterexample(k: int) -> Graph:
    """k+1 disjoint cliques of size k; vertex ``i*k`` of clique ``i >= 1`` is
    joined to vertex ``i-1`` of clique 0."""
    if k < 1:
        raise ValueError("k must be at least 1")
    edges = []
    for c in range(k + 1):
        base = c * k
        edges += [(base + i, base + j) for i in range(k) for j in range(i + 1, k)]
    edges += [(c * k, c - 1) for c in range(1, k + 1)]
    return Graph.from_edges(k * (k + 1), edges)
