"""List-colouring hardness gadgets from 3-Colouring.

``H0`` has twelve looped vertices ``a1..a3, b1..b3, c1..c3, d1..d3``
(ids 0..11 in that order). A reduced instance lists ``{a1,a2,a3}`` for each
``x_i``, ``{b1,b2,b3}`` for each ``y_i``, ``{c1,c2,c3}`` for each ``w_i`` and
``{d1,d2,d3}`` for each ``z_ij``. A list-homomorphism to ``H0`` exists iff
the source graph is 3-colourable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .model import Instance, Pattern, from_list_instance
from .oracle import oracle_list_hcolor

A, B, C, D = (0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)
H0_NAMES = tuple(f"{letter}{i}" for letter in "abcd" for i in (1, 2, 3))
LISTS = {"x": A, "y": B, "w": C, "z": D}


def build_H0() -> Pattern:
    """The looped pattern ``H0``."""
    edges = set()
    for group in (A + B, C + D):
        for i, u in enumerate(group):
            for v in group[i + 1 :]:
                edges.add((u, v))
    for i in range(3):
        edges.add((A[i], C[i]))
        edges.add((B[i], C[i]))
        edges.add((D[i], A[i]))
        for j in range(3):
            if i != j:
                edges.add((D[i], B[j]))
    g = Graph.from_edges(12, sorted(edges), range(12))
    return Pattern(g, True, H0_NAMES)


@dataclass(frozen=True)
class ListInstance:
    graph: Graph
    pattern: Pattern
    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.lists) != self.graph.n:
            raise ValueError("one list per vertex required")
        for lst in self.lists:
            if any(not 0 <= c < self.pattern.k for c in lst):
                raise ValueError(f"list {lst} names unknown colours")

    def satisfiable(self, cap: int | None = None) -> bool:
        if cap is None:
            return oracle_list_hcolor(self.graph, self.pattern, self.lists)
        return oracle_list_hcolor(self.graph, self.pattern, self.lists, cap)

    def as_revenue_instance(self) -> Instance:
        """Revenue ``1`` on listed colours and ``-1`` elsewhere; satisfiable iff
        the optimum equals the number of vertices."""
        return from_list_instance(self.graph, self.pattern, self.lists)


def _gadget(g: Graph, cobipartite: bool) -> ListInstance:
    n = g.n
    pairs = sorted(g.edges)
    x = list(range(n))
    y = list(range(n, 2 * n))
    w = list(range(2 * n, 3 * n))
    z = list(range(3 * n, 3 * n + len(pairs)))
    edges = []
    clique = x + y
    for i, u in enumerate(clique):
        edges += [(u, v) for v in clique[i + 1 :]]
    for i in range(n):
        edges += [(w[i], x[i]), (w[i], y[i])]
    for zi, (i, j) in zip(z, pairs):
        edges += [(zi, x[i]), (zi, y[j])]
    if cobipartite:
        rest = w + z
        for i, u in enumerate(rest):
            edges += [(u, v) for v in rest[i + 1 :]]
    lists = [A] * n + [B] * n + [C] * n + [D] * len(pairs)
    return ListInstance(Graph.from_edges(3 * n + len(pairs), edges), build_H0(), tuple(lists))


def reduce_3col_to_split(g: Graph) -> ListInstance:
    """Split graph: ``x``/``y`` vertices form a clique, ``w_i ~ x_i, y_i`` and
    ``z_ij ~ x_i, y_j`` for every edge ``ij`` (``i < j``)."""
    if g.loops:
        raise ValueError("source graph must be simple")
    return _gadget(g, False)


def reduce_3col_to_cobipartite(g: Graph) -> ListInstance:
    """As :func:`reduce_3col_to_split` with the ``w``/``z`` vertices made a clique."""
    if g.loops:
        raise ValueError("source graph must be simple")
    return _gadget(g, True)
