"""Branching around a monitor base.

Given a connected host ``G`` and an ordered base ``X = (x1, x2, x3)`` whose
closed neighbourhood is a monitor, the vertices outside ``X`` split into
``A1..A4`` (``Ai`` are the neighbours of ``xi`` not seen by earlier base
vertices, ``A4`` the rest). A *guess* fixes, per colour ``v``, a set
``R(v)`` of vertices near ``X`` that take colour ``v``; with fewer than
``Ramsey(s, t)`` vertices per part it certifies every edge between parts.
Assignments contradicting a guess get revenue ``-1`` and the edges between
parts are dropped, which leaves independent subinstances.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Mapping, Sequence

from .graph import Graph, bits, from_mask, is_connected, to_mask
from .model import Instance, Pattern, PartialColoring, RevenueTable
from .monitor import MonitorBase, find_monitor_base
from .named import path, star_subdivision, star_subdivision_clique
from .oracle import CapExceeded
from .recognition import ClassViolation


class GuessCapExceeded(CapExceeded):
    """More guesses than the configured cap."""


def ramsey_bound(s: int, t: int) -> int:
    """``binom(s + t - 2, s - 1)``, an upper bound on the Ramsey number R(s, t)."""
    if s < 1 or t < 1:
        raise ValueError("Ramsey parameters must be positive")
    if s + t > 200:
        raise OverflowError("Ramsey parameters too large")
    return comb(s + t - 2, s - 1)


@dataclass(frozen=True)
class StarPartition:
    """Base ``x`` (admissible order) and the masks ``parts = (A1, ..., A4)``.

    With fewer than three base vertices ``parts`` has ``len(x) + 1`` entries;
    the last one is always ``V - N[X]``.
    """

    x: tuple[int, ...]
    parts: tuple[int, ...]

    @property
    def xmask(self) -> int:
        return to_mask(self.x)

    def part(self, i: int) -> frozenset[int]:
        """``A_i`` for ``i`` in ``1..len(parts)``."""
        return from_mask(self.parts[i - 1])

    def later(self, i: int) -> int:
        """Mask of ``A_{>i}``."""
        out = 0
        for p in self.parts[i:]:
            out |= p
        return out


def partition_around(g: Graph, x: Sequence[int]) -> StarPartition:
    """Split ``V(g) - X`` into ``A1..A4`` around the ordered base ``x``."""
    x = tuple(x)
    if not x or len(set(x)) != len(x) or len(x) > 3:
        raise ValueError("base must list one to three distinct vertices")
    for i in range(1, len(x)):
        if not any(g.has_edge(x[i], x[j]) for j in range(i)):
            raise ValueError(f"inadmissible base order {x}: {x[i]} has no earlier neighbour")
    xm = to_mask(x)
    seen = xm
    parts = []
    for xi in x:
        a = g.adj[xi] & ~seen
        parts.append(a)
        seen |= a
    parts.append(g.full & ~seen)
    return StarPartition(x, tuple(parts))


def strip_cross_edges(g: Graph, sp: StarPartition) -> Graph:
    """Keep only the edges with both ends in the same part ``Ai``."""
    owner = {}
    for i, p in enumerate(sp.parts):
        for v in bits(p):
            owner[v] = i
    edges = [(u, v) for u, v in g.edges if u in owner and owner.get(v) == owner[u]]
    return Graph.from_edges(g.n, edges)


def _irredundant(g: Graph, s: int, later: int) -> bool:
    # every member has a neighbour in A_{>i} that sees no other member
    for u in bits(s):
        others = s & ~(1 << u)
        if not any(not g.adj[w] & others for w in bits(g.adj[u] & later)):
            return False
    return True


class _GuessSpace:
    """Enumerates guesses as tuples of per-colour bitmasks."""

    def __init__(
        self,
        g: Graph,
        sp: StarPartition,
        h: Pattern,
        s: int,
        t: int,
        anchor: tuple[int, int] | None,
        rev: RevenueTable | None,
    ) -> None:
        self.g, self.sp, self.k = g, sp, h.k
        self.hadj = h.graph.adj
        self.limit = ramsey_bound(s, t) - 1
        self.anchor = anchor
        self.rev = rev
        if anchor is not None and anchor[0] != sp.x[0]:
            raise ValueError("anchor vertex must be the first base vertex")
        self.pools = [
            [self._pool(i, v) for v in range(self.k)] for i in range(1, len(sp.x) + 1)
        ]

    def _pool(self, i: int, v: int) -> list[int]:
        g, rev = self.g, self.rev
        members = list(bits(self.sp.parts[i - 1]))
        if rev is not None:
            members = [u for u in members if rev[u][v] > 0]
        later = self.sp.later(i)
        pool = []
        for size in range(0, min(self.limit, len(members)) + 1):
            for combo in combinations(members, size):
                m = to_mask(combo)
                if rev is not None and (
                    not g.is_independent(combo) or not _irredundant(g, m, later)
                ):
                    continue
                pool.append(m)
        return pool

    def _x_assignments(self) -> Iterator[list[int]]:
        x, k, rev = self.sp.x, self.k, self.rev

        def options(xv: int) -> list[int | None]:
            if self.anchor is not None and xv == self.anchor[0]:
                return [self.anchor[1]]
            cols = [c for c in range(k) if rev is None or rev[xv][c] > 0]
            return [None] + cols

        def rec(j: int, r: list[int]) -> Iterator[list[int]]:
            if j == len(x):
                yield r
                return
            for c in options(x[j]):
                if c is None:
                    yield from rec(j + 1, r)
                    continue
                if rev is not None and not self._consistent(1 << x[j], c, r):
                    continue
                nr = list(r)
                nr[c] |= 1 << x[j]
                yield from rec(j + 1, nr)

        yield from rec(0, [0] * k)

    def _consistent(self, s: int, v: int, r: Sequence[int]) -> bool:
        # colour v on s clashes with no coloured neighbour
        nbr = 0
        for u in bits(s):
            nbr |= self.g.adj[u]
        for c in range(self.k):
            if r[c] & nbr and not self.hadj[v] >> c & 1:
                return False
        return True

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        nparts = len(self.sp.x)
        prune = self.rev is not None

        def rec(i: int, v: int, used: int, r: list[int]) -> Iterator[tuple[int, ...]]:
            if i == nparts:
                yield tuple(r)
                return
            if v == self.k:
                yield from rec(i + 1, 0, 0, r)
                return
            for s in self.pools[i][v]:
                if s & used:
                    continue
                if prune and s and not self._consistent(s, v, r):
                    continue
                nr = r
                if s:
                    nr = list(r)
                    nr[v] |= s
                yield from rec(i, v + 1, used | s, nr)

        for r in self._x_assignments():
            yield from rec(0, 0, 0, r)


def enumerate_guesses(
    g: Graph,
    sp: StarPartition,
    h: Pattern,
    s: int,
    t: int,
    anchor: tuple[int, int] | None = None,
    rev: RevenueTable | None = None,
) -> Iterator[tuple[frozenset[int], ...]]:
    """Stream guesses ``R`` (one vertex set per colour).

    Without ``rev`` every guess is produced exactly once: pairwise disjoint
    sets inside ``N[X]`` meeting each of ``A1..A3`` in fewer than
    ``Ramsey(s, t)`` vertices, with ``x in R(y)`` for an ``anchor (x, y)``.

    With ``rev`` only guesses that can be compatible with an optimum using
    positive assignments alone are produced: each ``R(v)`` is independent,
    has positive revenue for ``v``, agrees with the pattern edges across
    colours, and each ``R(v) & Ai`` is irredundant (every member has a
    private neighbour in ``A_{>i}``).
    """
    for r in _GuessSpace(g, sp, h, s, t, anchor, rev):
        yield tuple(from_mask(m) for m in r)


def _disallowed_masks(g: Graph, sp: StarPartition, hadj: Sequence[int], r: Sequence[int]) -> tuple[int, ...]:
    k = len(r)
    xm = sp.xmask
    all_r = 0
    nbr_r = []
    for m in r:
        all_r |= m
        nm = 0
        for u in bits(m):
            nm |= g.adj[u]
        nbr_r.append(nm)
    out = []
    for v in range(k):
        d = (xm | all_r) & ~r[v]  # D1, D2
        for c in range(k):  # D3
            if not hadj[v] >> c & 1:
                d |= nbr_r[c]
        for i, ai in enumerate(sp.parts[:-1], start=1):  # D4
            ri = r[v] & ai
            blind = 0
            for w in bits(sp.later(i)):
                if not g.adj[w] & ri:
                    blind |= 1 << w
            if blind:
                for u in bits(ai & ~r[v]):
                    if g.adj[u] & blind:
                        d |= 1 << u
        out.append(d)
    return tuple(out)


def disallowed_pairs(
    g: Graph, sp: StarPartition, h: Pattern, guess: Sequence[frozenset[int]]
) -> frozenset[tuple[int, int]]:
    """Pairs ``(u, v)`` contradicting the guess (conditions D1-D4)."""
    masks = _disallowed_masks(g, sp, h.graph.adj, [to_mask(x) for x in guess])
    return frozenset((u, v) for v, m in enumerate(masks) for u in bits(m))


def derived_revenue(rev: RevenueTable, disallowed) -> RevenueTable:
    """``-1`` on the disallowed pairs, ``rev`` elsewhere."""
    bad = set(disallowed)
    return tuple(
        tuple(-1.0 if (u, v) in bad else x for v, x in enumerate(row)) for u, row in enumerate(rev)
    )


def _apply_masks(rev: RevenueTable, masks: Sequence[int]) -> RevenueTable:
    return tuple(
        tuple(-1.0 if masks[v] >> u & 1 else x for v, x in enumerate(row)) for u, row in enumerate(rev)
    )


def _self_contradicting(r: Sequence[int], masks: Sequence[int]) -> bool:
    return any(rv & mv for rv, mv in zip(r, masks))


def _guess_masks(
    inst: Instance,
    sp: StarPartition,
    s: int,
    t: int,
    anchor: tuple[int, int] | None,
    prune: bool,
    cap: int | None,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # distinct disallowed-mask tuples with one guess producing each
    hadj = inst.pattern.graph.adj
    seen = set()
    count = 0
    for r in _GuessSpace(inst.host, sp, inst.pattern, s, t, anchor, inst.rev if prune else None):
        count += 1
        if cap is not None and count > cap:
            raise GuessCapExceeded(f"more than {cap} guesses")
        masks = _disallowed_masks(inst.host, sp, hadj, r)
        if prune and _self_contradicting(r, masks):
            continue
        if masks in seen:
            continue
        seen.add(masks)
        yield r, masks


def check_branching_class(g: Graph, s: int, t: int) -> None:
    """Raise :class:`ClassViolation` unless ``g`` is ``{P6, L_s, S_t}``-free."""
    from .graph import contains_induced

    for name, f in (("P6", path(6)), (f"L{s}", star_subdivision_clique(s)), (f"S{t}", star_subdivision(t))):
        w = contains_induced(g, f)
        if w is not None:
            raise ClassViolation(f"host contains an induced {name} on {sorted(w)}")


def _require_branchable(inst: Instance) -> None:
    inst.pattern.require_irreflexive()
    if inst.n < 3:
        raise ValueError("branching needs at least three host vertices")
    if not is_connected(inst.host):
        raise ValueError("branching needs a connected host")


# --- simplified branching --------------------------------------------------


@dataclass(frozen=True)
class SimplifiedSetup:
    base: MonitorBase
    partition: StarPartition
    graph: Graph


def simplified_setup(inst: Instance) -> SimplifiedSetup:
    _require_branchable(inst)
    base = find_monitor_base(inst.host, pad=True)
    sp = partition_around(inst.host, base.order)
    return SimplifiedSetup(base, sp, strip_cross_edges(inst.host, sp))


def simplified_revenues(
    inst: Instance, setup: SimplifiedSetup, s: int, t: int, prune: bool = True, cap: int | None = None
) -> Iterator[RevenueTable]:
    for _, masks in _guess_masks(inst, setup.partition, s, t, None, prune, cap):
        yield _apply_masks(inst.rev, masks)


def branch_simplified(
    inst: Instance,
    s: int,
    t: int,
    prune: bool = True,
    cap: int | None = None,
    check_class: bool = False,
) -> tuple[Graph, Iterator[RevenueTable]]:
    """Subgraph ``G'`` (same vertices, only intra-part edges) and a stream of
    revenue tables whose best optimum on ``G'`` is the optimum of ``inst``."""
    if check_class:
        check_branching_class(inst.host, s, t)
    setup = simplified_setup(inst)
    return setup.graph, simplified_revenues(inst, setup, s, t, prune, cap)


# --- full branching ----------------------------------------------------------


@dataclass(frozen=True)
class BranchPair:
    """Two independent subinstances produced for one anchor and guess.

    ``inst1`` lives on ``A1`` with pattern ``H - y``; ``inst2`` lives on the
    remaining vertices with pattern ``H``. ``vertices*`` map subinstance
    vertices back to the host, ``colors1`` maps colours of ``inst1`` back.
    """

    inst1: Instance
    vertices1: tuple[int, ...]
    colors1: tuple[int, ...]
    inst2: Instance
    vertices2: tuple[int, ...]
    anchor: tuple[int, int]
    guess: tuple[frozenset[int], ...]

    def lift(self, phi1: Mapping[int, int], phi2: Mapping[int, int]) -> PartialColoring:
        phi = {self.vertices1[u]: self.colors1[c] for u, c in phi1.items()}
        phi.update({self.vertices2[u]: c for u, c in phi2.items()})
        return phi


@dataclass(frozen=True)
class AnchorSetup:
    anchor: tuple[int, int]
    base: MonitorBase
    partition: StarPartition
    graph1: Graph
    vertices1: tuple[int, ...]
    graph2: Graph
    vertices2: tuple[int, ...]
    pattern1: Pattern
    colors1: tuple[int, ...]


def anchor_setups(inst: Instance) -> Iterator[AnchorSetup]:
    """Per positive pair ``(x, y)`` in ascending order: base, partition and split hosts."""
    g = inst.host
    for x in range(inst.n):
        for y in range(inst.k):
            if inst.rev[x][y] <= 0:
                continue
            base = find_monitor_base(g, anchor=x, pad=True)
            sp = partition_around(g, base.order)
            stripped = strip_cross_edges(g, sp)
            g1, v1 = stripped.induced(bits(sp.parts[0]))
            g2, v2 = stripped.induced(bits(g.full & ~sp.parts[0]))
            p1, c1 = inst.pattern.without(y)
            yield AnchorSetup((x, y), base, sp, g1, v1, g2, v2, p1, c1)


def branch_full(
    inst: Instance,
    s: int,
    t: int,
    prune: bool = True,
    cap: int | None = None,
    check_class: bool = False,
) -> Iterator[BranchPair]:
    """Stream the pairs of subinstances; the best sum of their optima is the
    optimum of ``inst``, and lifting optimum pairs gives an optimum."""
    _require_branchable(inst)
    if not inst.has_positive():
        raise ValueError("full branching needs at least one positive revenue")
    if check_class:
        check_branching_class(inst.host, s, t)
    for st in anchor_setups(inst):
        for r, masks in _guess_masks(inst, st.partition, s, t, st.anchor, prune, cap):
            derived = _apply_masks(inst.rev, masks)
            rev1 = tuple(tuple(derived[u][c] for c in st.colors1) for u in st.vertices1)
            rev2 = tuple(derived[u] for u in st.vertices2)
            yield BranchPair(
                Instance(st.graph1, st.pattern1, rev1),
                st.vertices1,
                st.colors1,
                Instance(st.graph2, inst.pattern, rev2),
                st.vertices2,
                st.anchor,
                tuple(from_mask(m) for m in r),
            )
