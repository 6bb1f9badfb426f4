"""Patterns, revenue tables, partial colourings and multicolouring instances.

A partial colouring is a plain ``dict`` mapping host vertices to colours.
A partial multicolouring maps host vertices to non-empty colour subsets given
as bitmasks over ``V(H)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .graph import Graph, bits

PartialColoring = dict[int, int]
Multicoloring = dict[int, int]


class ReflexivePatternError(ValueError):
    """A solver that needs an irreflexive pattern received one with loops."""


@dataclass(frozen=True)
class Pattern:
    """Pattern graph ``H``. Colours are ``0..k-1``.

    ``subsets``/``base`` are set when the pattern is an induced subpattern of
    ``hat(base)``: colour ``i`` then stands for the colour set ``subsets[i]``
    (a bitmask over ``V(base)``). ``names`` are display labels only.
    """

    graph: Graph
    reflexive: bool = False
    names: tuple[str, ...] | None = None
    subsets: tuple[int, ...] | None = field(default=None, compare=False)
    base: Pattern | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.graph.loops and not self.reflexive:
            raise ValueError("pattern has loops but is not flagged reflexive")
        if self.names is not None and len(self.names) != self.graph.n:
            raise ValueError("one name per colour required")

    @property
    def k(self) -> int:
        return self.graph.n

    def adjacent(self, a: int, b: int) -> bool:
        return self.graph.has_edge(a, b)

    def require_irreflexive(self) -> None:
        if self.graph.loops:
            raise ReflexivePatternError("solvers accept irreflexive patterns only")

    def name(self, c: int) -> str:
        return self.names[c] if self.names else str(c)

    def without(self, y: int) -> tuple[Pattern, tuple[int, ...]]:
        """``H - y`` and the new-to-old colour map."""
        keep = [c for c in range(self.k) if c != y]
        return self.restricted(keep), tuple(keep)

    def restricted(self, keep: Sequence[int]) -> Pattern:
        """Induced subpattern on the colours ``keep`` (in that order)."""
        index = {c: i for i, c in enumerate(keep)}
        edges = [(index[a], index[b]) for a, b in self.graph.edges if a in index and b in index]
        loops = [index[c] for c in self.graph.loops if c in index]
        return Pattern(
            Graph.from_edges(len(keep), edges, loops),
            self.reflexive,
            tuple(self.names[c] for c in keep) if self.names else None,
            tuple(self.subsets[c] for c in keep) if self.subsets is not None else None,
            self.base,
        )


def pattern(graph: Graph, names: Iterable[str] | None = None) -> Pattern:
    return Pattern(graph, bool(graph.loops), tuple(names) if names is not None else None)


RevenueTable = tuple[tuple[float, ...], ...]


def _table(rows: Iterable[Iterable[float]]) -> RevenueTable:
    return tuple(tuple(float(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Instance:
    """Host graph, pattern and an ``n x k`` revenue table (``rev[u][v]``)."""

    host: Graph
    pattern: Pattern
    rev: RevenueTable

    def __post_init__(self) -> None:
        object.__setattr__(self, "rev", _table(self.rev))
        if self.host.loops:
            raise ValueError("host graph must be loop-free")
        if len(self.rev) != self.host.n:
            raise ValueError(f"revenue table has {len(self.rev)} rows, host has {self.host.n} vertices")
        for row in self.rev:
            if len(row) != self.pattern.k:
                raise ValueError(f"revenue row of length {len(row)}, pattern has {self.pattern.k} colours")
            if not all(math.isfinite(x) for x in row):
                raise ValueError("revenues must be finite")

    @property
    def n(self) -> int:
        return self.host.n

    @property
    def k(self) -> int:
        return self.pattern.k

    def has_positive(self) -> bool:
        return any(x > 0 for row in self.rev for x in row)

    def restrict(self, vertices: Iterable[int]) -> tuple[Instance, tuple[int, ...]]:
        sub, old = self.host.induced(vertices)
        return Instance(sub, self.pattern, tuple(self.rev[u] for u in old)), old

    def with_host(self, host: Graph) -> Instance:
        return Instance(host, self.pattern, self.rev)


def _check_assignment(inst: Instance, phi: Mapping[int, int]) -> None:
    for u, v in phi.items():
        if not 0 <= u < inst.n or not 0 <= v < inst.k:
            raise ValueError(f"assignment {(u, v)} out of range")


def revenue(inst: Instance, phi: Mapping[int, int]) -> float:
    """Sum of ``rev(u, phi(u))`` over the domain of ``phi``."""
    _check_assignment(inst, phi)
    return sum(inst.rev[u][v] for u, v in phi.items())


def is_valid(inst: Instance, phi: Mapping[int, int]) -> bool:
    """Whether ``phi`` is a homomorphism from ``host[dom phi]`` to the pattern."""
    for u, v in inst.host.edges:
        if u in phi and v in phi and not inst.pattern.adjacent(phi[u], phi[v]):
            return False
    return True


def strip_negative(inst: Instance, phi: Mapping[int, int]) -> PartialColoring:
    """Drop the assignments with negative revenue."""
    return {u: v for u, v in phi.items() if inst.rev[u][v] >= 0}


def from_list_instance(g: Graph, h: Pattern, lists: Sequence[Iterable[int]]) -> Instance:
    """Revenue ``1`` for listed colours, ``-1`` for the others."""
    if len(lists) != g.n:
        raise ValueError("one list per host vertex required")
    rows = []
    for lst in lists:
        allowed = set(lst)
        if not allowed <= set(range(h.k)):
            raise ValueError(f"list {sorted(allowed)} names unknown colours")
        rows.append(tuple(1.0 if c in allowed else -1.0 for c in range(h.k)))
    return Instance(g, h, tuple(rows))


def solve_edgeless(inst: Instance) -> tuple[float, PartialColoring]:
    """Optimum on a host without edges: each vertex takes its best positive colour."""
    if inst.host.edges:
        raise ValueError("solve_edgeless requires a host without edges")
    phi: PartialColoring = {}
    total = 0.0
    for u, row in enumerate(inst.rev):
        best = max(range(inst.k), key=lambda c: (row[c], -c), default=None)
        if best is not None and row[best] > 0:
            phi[u] = best
            total += row[best]
    return total, phi


# --- power patterns and multicolouring -----------------------------------


def complete_to(h: Pattern, a: int, b: int) -> bool:
    """Colour sets ``a`` and ``b`` (bitmasks) are disjoint and complete in ``h``."""
    if a & b:
        return False
    adj = h.graph.adj
    return all(adj[c] & b == b for c in bits(a))


def hat(h: Pattern) -> Pattern:
    """Pattern on the non-empty colour sets of ``h``; two sets are adjacent
    when they are disjoint and complete to each other. Colour ``i`` is the
    set with bitmask ``i + 1``."""
    h.require_irreflexive()
    size = (1 << h.k) - 1
    edges = [
        (a - 1, b - 1)
        for a in range(1, size + 1)
        for b in range(a + 1, size + 1)
        if complete_to(h, a, b)
    ]
    names = tuple("{" + ",".join(h.name(c) for c in bits(m)) + "}" for m in range(1, size + 1))
    return Pattern(Graph.from_edges(size, edges), False, names, tuple(range(1, size + 1)), h)


@dataclass(frozen=True)
class MulticolorInstance:
    """Host, irreflexive base pattern ``H`` and revenues on non-empty colour sets.

    ``rev[u]`` has length ``2**k``; entry ``Z`` is the revenue for assigning
    the set with bitmask ``Z`` to ``u``. Entry ``0`` is unused.
    """

    host: Graph
    pattern: Pattern
    rev: RevenueTable

    def __post_init__(self) -> None:
        object.__setattr__(self, "rev", _table(self.rev))
        self.pattern.require_irreflexive()
        if len(self.rev) != self.host.n:
            raise ValueError("one revenue row per host vertex required")
        width = 1 << self.pattern.k
        for row in self.rev:
            if len(row) != width:
                raise ValueError(f"multicolour revenue rows need {width} entries")
            if not all(math.isfinite(x) for x in row):
                raise ValueError("revenues must be finite")

    @property
    def n(self) -> int:
        return self.host.n

    @property
    def k(self) -> int:
        return self.pattern.k

    @cached_property
    def full_colors(self) -> int:
        return (1 << self.pattern.k) - 1

    def restrict(self, vertices: Iterable[int]) -> tuple[MulticolorInstance, tuple[int, ...]]:
        sub, old = self.host.induced(vertices)
        return MulticolorInstance(sub, self.pattern, tuple(self.rev[u] for u in old)), old


def multicolor_revenue(minst: MulticolorInstance, phi: Mapping[int, int]) -> float:
    return sum(minst.rev[u][z] for u, z in phi.items())


def is_valid_multicoloring(minst: MulticolorInstance, phi: Mapping[int, int]) -> bool:
    for z in phi.values():
        if not 0 < z <= minst.full_colors:
            return False
    for u, v in minst.host.edges:
        if u in phi and v in phi and not complete_to(minst.pattern, phi[u], phi[v]):
            return False
    return True


def to_multicolor(inst: Instance) -> MulticolorInstance:
    """Singleton sets keep their revenue; every larger set gets ``-1``."""
    inst.pattern.require_irreflexive()
    width = 1 << inst.k
    rows = []
    for row in inst.rev:
        r = [-1.0] * width
        for c in range(inst.k):
            r[1 << c] = row[c]
        rows.append(r)
    return MulticolorInstance(inst.host, inst.pattern, tuple(rows))


def as_multicolor(inst: Instance) -> MulticolorInstance:
    """Multicolouring instance with the same optimum as ``inst``.

    If the pattern is a subpattern of a power pattern, the instance is read
    back over the base pattern (colour sets missing from the subpattern get
    ``-1``); otherwise this is :func:`to_multicolor`.
    """
    p = inst.pattern
    if p.base is None:
        return to_multicolor(inst)
    width = 1 << p.base.k
    rows = []
    for row in inst.rev:
        r = [-1.0] * width
        for c, z in enumerate(p.subsets):
            r[z] = row[c]
        rows.append(r)
    return MulticolorInstance(inst.host, p.base, tuple(rows))


def multicoloring_to_coloring(inst: Instance, phi: Mapping[int, int]) -> PartialColoring:
    """Translate a multicolouring of ``as_multicolor(inst)`` back to colours of ``inst``."""
    p = inst.pattern
    index = {z: c for c, z in enumerate(p.subsets)} if p.base is not None else {1 << c: c for c in range(p.k)}
    out = {}
    for u, z in phi.items():
        if z not in index:
            raise ValueError(f"colour set {z:b} has no colour in the pattern")
        out[u] = index[z]
    return out


def hat_reading(minst: MulticolorInstance, prune: bool = True) -> Instance:
    """The multicolouring instance as a colouring instance with a power pattern.

    With ``prune`` the pattern keeps only the colour sets that have positive
    revenue somewhere; the others can never appear in an optimum.
    """
    full = hat(minst.pattern)
    keep = list(range(full.k))
    if prune:
        keep = [c for c in keep if any(row[c + 1] > 0 for row in minst.rev)]
    p = full.restricted(keep)
    rows = tuple(tuple(row[c + 1] for c in keep) for row in minst.rev)
    return Instance(minst.host, p, rows)
