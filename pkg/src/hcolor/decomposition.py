"""Modules, strong modules and the modular decomposition tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, bits, component_masks, from_mask

EDGELESS = "edgeless"
COMPLETE = "complete"
PRIME = "prime"
LEAF = "leaf"


def splitters(g: Graph, mask: int) -> int:
    """Vertices outside ``mask`` that see some but not all of it."""
    out = 0
    for z in bits(g.full & ~mask):
        seen = g.adj[z] & mask
        if seen and seen != mask:
            out |= 1 << z
    return out


def is_module(g: Graph, mask: int) -> bool:
    return not splitters(g, mask)


def module_closure(g: Graph, mask: int) -> int:
    """Smallest module containing ``mask``."""
    while True:
        extra = splitters(g, mask)
        if not extra:
            return mask
        mask |= extra


def is_prime(g: Graph) -> bool:
    """True iff ``g`` has no module ``B`` with ``2 <= |B| < n``."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if module_closure(g, (1 << u) | (1 << v)) != g.full:
                return False
    return True


@dataclass(frozen=True)
class MDNode:
    """Node of the modular decomposition: a strong module and its children.

    ``kind`` is ``leaf`` for singletons, otherwise the kind of the quotient
    graph on ``children`` (edgeless, complete or prime).
    """

    vertices: frozenset[int]
    kind: str
    children: tuple[MDNode, ...] = ()

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    def walk(self) -> Iterator[MDNode]:
        yield self
        for c in self.children:
            yield from c.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def pretty(self, indent: int = 0) -> str:
        label = sorted(self.vertices) if self.kind != LEAF else next(iter(self.vertices))
        lines = [" " * indent + f"{self.kind} {label}"]
        lines += [c.pretty(indent + 2) for c in self.children]
        return "\n".join(lines)


def _maximal_modules_prime_case(g: Graph, mask: int) -> list[int]:
    # quotient is prime: maximal proper strong modules are the maximal proper
    # modules; the one holding v is the union of all proper closures of {v, u}
    sub, old = g.induced(bits(mask))
    parts: list[int] = []
    covered = 0
    for v in range(sub.n):
        if covered >> v & 1:
            continue
        part = 1 << v
        for u in range(sub.n):
            if u != v:
                c = module_closure(sub, (1 << v) | (1 << u))
                if c != sub.full:
                    part |= c
        covered |= part
        parts.append(part)
    return [sum(1 << old[i] for i in bits(p)) for p in parts]


def maximal_strong_modules(g: Graph, mask: int | None = None) -> tuple[str, list[int]]:
    """Quotient kind and the modular partition ``Mod(g[mask])`` as bitmasks."""
    mask = g.full if mask is None else mask
    comps = component_masks(g, mask)
    if len(comps) > 1:
        return EDGELESS, comps
    co = g.complement()
    cocomps = component_masks(co, mask)
    if len(cocomps) > 1:
        return COMPLETE, cocomps
    return PRIME, sorted(_maximal_modules_prime_case(g, mask), key=lambda m: m & -m)


def modular_decomposition(g: Graph) -> MDNode:
    """Modular decomposition tree of ``g`` (``n >= 1``)."""
    if g.n < 1:
        raise ValueError("modular decomposition needs at least one vertex")

    def build(mask: int) -> MDNode:
        if mask & (mask - 1) == 0:
            return MDNode(from_mask(mask), LEAF)
        kind, parts = maximal_strong_modules(g, mask)
        return MDNode(from_mask(mask), kind, tuple(build(p) for p in parts))

    return build(g.full)


def quotient(g: Graph, parts: list[int]) -> Graph:
    """Quotient graph on ``parts`` (assumed to be modules)."""
    reps = [p & -p for p in parts]
    edges = [
        (i, j)
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
        if g.adj[reps[i].bit_length() - 1] & reps[j]
    ]
    return Graph.from_edges(len(parts), edges)
