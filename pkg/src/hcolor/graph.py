"""Simple undirected graphs over dense integer vertex ids.

Vertex sets are handled as ``frozenset`` at the API boundary and as integer
bitmasks internally (bit ``v`` set means vertex ``v`` is in the set).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Loops are kept apart from the adjacency (``loops``); they only matter for
    pattern graphs. ``edges`` holds pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    loops: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge {(u, v)} for n={self.n}")
        for v in self.loops:
            if not 0 <= v < self.n:
                raise ValueError(f"bad loop {v} for n={self.n}")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Iterable[int]] = (), loops: Iterable[int] = ()
    ) -> Graph:
        norm = set()
        loop_set = set(loops)
        for e in edges:
            u, v = e
            if u == v:
                loop_set.add(u)
            else:
                norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm), frozenset(loop_set))

    @classmethod
    def from_masks(cls, adj: Iterable[int]) -> Graph:
        adj = list(adj)
        edges = [(u, v) for u, m in enumerate(adj) for v in bits(m) if u < v]
        return cls.from_edges(len(adj), edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmasks (loops excluded)."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return u in self.loops
        return bool(self.adj[u] >> v & 1)

    def closed_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        mask = 0
        for v in vertices:
            mask |= self.adj[v] | (1 << v)
        return from_mask(mask)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns new-to-old ids."""
        old = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(old)}
        edges = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        loops = [index[v] for v in self.loops if v in index]
        return Graph.from_edges(len(old), edges, loops), old

    def complement(self) -> Graph:
        edges = [
            (u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.adj[u] >> v & 1
        ]
        return Graph.from_edges(self.n, edges)

    def without_loops(self) -> Graph:
        return Graph(self.n, self.edges)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all((self.adj[v] | (1 << v)) & mask == mask for v in bits(mask))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all(not self.adj[v] & mask for v in bits(mask))

    def __repr__(self) -> str:
        loops = f", loops={sorted(self.loops)}" if self.loops else ""
        return f"Graph(n={self.n}, edges={sorted(self.edges)}{loops})"


def disjoint_union(*graphs: Graph) -> Graph:
    edges, loops, offset = [], [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        loops.extend(v + offset for v in g.loops)
        offset += g.n
    return Graph.from_edges(offset, edges, loops)


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by least vertex."""
    rest = g.full if within is None else within
    comps = []
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def components(g: Graph) -> list[frozenset[int]]:
    """Maximal connected vertex sets of ``g``; ``[]`` for the empty graph."""
    return [from_mask(c) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return len(component_masks(g)) <= 1


def _max_clique_mask(adj: tuple[int, ...], cand: int) -> int:
    best = 0
    best_size = 0

    def expand(current: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        if not cand:
            if size > best_size:
                best, best_size = current, size
            return
        while cand:
            if size + cand.bit_count() <= best_size:
                return
            v = cand.bit_length() - 1
            expand(current | (1 << v), size + 1, cand & adj[v])
            cand &= ~(1 << v)

    expand(0, 0, cand)
    return best


def max_clique(g: Graph, within: int | None = None) -> frozenset[int]:
    return from_mask(_max_clique_mask(g.adj, g.full if within is None else within))


def clique_number(g: Graph) -> int:
    """Exact size of a largest clique (0 for the empty graph)."""
    return len(max_clique(g))


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting)."""
    out: list[frozenset[int]] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(from_mask(r))
            return
        pivot = max(bits(p | x), key=lambda u: (g.adj[u] & p).bit_count())
        for v in bits(p & ~g.adj[pivot]):
            bk(r | (1 << v), p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        bk(0, g.full, 0)
    return out


def _search_order(f: Graph, start: int | None) -> list[int]:
    order: list[int] = []
    seen = 0
    roots = ([start] if start is not None else []) + sorted(
        range(f.n), key=lambda v: -f.degree(v)
    )
    for r in roots:
        if seen >> r & 1:
            continue
        seen |= 1 << r
        queue = [r]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(bits(f.adj[v] & ~seen), key=lambda w: -f.degree(w)):
                seen |= 1 << w
                queue.append(w)
    return order


def find_induced(g: Graph, f: Graph, must_include: int | None = None) -> dict[int, int] | None:
    """Embedding ``f -> g`` whose image induces a copy of ``f``, or ``None``.

    Backtracking over injective maps; candidate sets are intersected with the
    neighbourhoods (or non-neighbourhoods) of already mapped vertices, and
    vertices of too small degree are skipped.
    """
    if f.n > g.n:
        return None
    if f.n == 0:
        return {} if must_include is None else None
    gdeg = [g.degree(v) for v in range(g.n)]
    deg_ok = [to_mask(v for v in range(g.n) if gdeg[v] >= f.degree(w)) for w in range(f.n)]
    starts = [None] if must_include is None else [
        w for w in range(f.n) if gdeg[must_include] >= f.degree(w)
    ]
    for start in starts:
        order = _search_order(f, start)
        pos = {w: i for i, w in enumerate(order)}
        earlier = [[(order[i], bool(f.adj[w] >> order[i] & 1)) for i in range(pos[w])] for w in order]
        image: dict[int, int] = {}

        def extend(j: int, used: int) -> bool:
            if j == len(order):
                return True
            w = order[j]
            if j == 0 and start is not None:
                cand = 1 << must_include
            else:
                cand = deg_ok[w] & ~used
                for p, adjacent in earlier[j]:
                    cand &= g.adj[image[p]] if adjacent else ~g.adj[image[p]]
                if must_include is not None:
                    cand &= ~(1 << must_include)
            for c in bits(cand):
                image[w] = c
                if extend(j + 1, used | (1 << c)):
                    return True
            image.pop(w, None)
            return False

        if extend(0, 0):
            return dict(image)
    return None


def contains_induced(g: Graph, f: Graph, must_include: int | None = None) -> frozenset[int] | None:
    """A vertex set ``A`` with ``g[A]`` isomorphic to ``f``, or ``None``."""
    emb = find_induced(g, f, must_include)
    return None if emb is None else frozenset(emb.values())


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and find_induced(a, b) is not None
