"""Monitors in connected P6-free graphs.

A set ``M`` is a monitor of a connected graph if every component of
``G - M`` has a vertex of ``M`` complete to it. The bases searched for here
are induced paths ``X`` on at most three vertices with ``N[X]`` a monitor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Graph, bits, component_masks, is_connected, to_mask


class NoMonitorBase(ValueError):
    """No induced path on at most three vertices has a monitor neighbourhood.

    Every connected P6-free graph has one, so this signals a class violation.
    """


def _closed(g: Graph, mask: int) -> int:
    out = mask
    for v in bits(mask):
        out |= g.adj[v]
    return out


def monitor_witnesses(g: Graph, m: int) -> list[tuple[int, int | None]]:
    """For each component of ``g - m``: its mask and a vertex of ``m`` complete to it."""
    out = []
    for comp in component_masks(g, g.full & ~m):
        w = next((w for w in bits(m) if g.adj[w] & comp == comp), None)
        out.append((comp, w))
    return out


def is_monitor(g: Graph, m: Iterable[int] | int) -> bool:
    """Whether ``m`` is a monitor of the connected graph ``g``."""
    if not is_connected(g):
        raise ValueError("monitors are defined for connected graphs only")
    mask = m if isinstance(m, int) else to_mask(m)
    return all(w is not None for _, w in monitor_witnesses(g, mask))


@dataclass(frozen=True)
class MonitorBase:
    """``path`` induces a path in listing order with ``N[path]`` a monitor.

    ``order`` is ``path`` padded (when requested) so that every vertex after
    the first has an earlier neighbour.
    """

    path: tuple[int, ...]
    order: tuple[int, ...]
    anchor: int | None = None

    @property
    def mask(self) -> int:
        return to_mask(self.order)


def induced_paths(g: Graph, start: int, length: int) -> Iterator[tuple[int, ...]]:
    """Induced paths on ``length`` vertices starting at ``start``, lexicographically."""

    def grow(p: tuple[int, ...], used: int) -> Iterator[tuple[int, ...]]:
        if len(p) == length:
            yield p
            return
        earlier = used & ~(1 << p[-1])
        for w in bits(g.adj[p[-1]] & ~used):
            if not g.adj[w] & earlier:
                yield from grow(p + (w,), used | (1 << w))

    yield from grow((start,), 1 << start)


def _pad(g: Graph, path: tuple[int, ...], size: int) -> tuple[int, ...]:
    order = list(path)
    while len(order) < size:
        used = to_mask(order)
        cand = g.adj[order[-1]] & ~used
        if not cand:
            cand = _closed(g, used) & ~used
        if not cand:
            raise NoMonitorBase("graph too small to pad the monitor base")
        order.append((cand & -cand).bit_length() - 1)
    return tuple(order)


def find_monitor_base(g: Graph, anchor: int | None = None, pad: bool = False) -> MonitorBase:
    """Smallest induced path ``X`` (at most 3 vertices) with ``N[X]`` a monitor.

    With an ``anchor`` the path must start there; otherwise start vertices are
    tried in increasing order. With ``pad`` the base is extended to three
    vertices keeping it connected (a superset of a monitor is a monitor).
    """
    if g.n == 0 or not is_connected(g):
        raise ValueError("find_monitor_base needs a non-empty connected graph")
    starts = [anchor] if anchor is not None else list(range(g.n))
    for size in (1, 2, 3):
        for u in starts:
            for p in induced_paths(g, u, size):
                if all(w is not None for _, w in monitor_witnesses(g, _closed(g, to_mask(p)))):
                    order = _pad(g, p, 3) if pad else p
                    return MonitorBase(p, order, anchor)
    raise NoMonitorBase(f"no monitor base found (anchor={anchor}); graph is not P6-free")
