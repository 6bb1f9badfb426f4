"""Independent reference implementations used only by the tests.

They enumerate everything with itertools or lean on networkx, sharing no
code with the package beyond the data types.
"""

from __future__ import annotations

import sys
from itertools import combinations, product

import networkx as nx
import pytest

from hcolor.graph import Graph
from hcolor.model import Instance, MulticolorInstance


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def brute_opt(inst: Instance) -> float:
    """Maximum over all ``(k + 1) ** n`` partial maps."""
    best = 0.0
    edges = list(inst.host.edges)
    for choice in product([None] + list(range(inst.k)), repeat=inst.n):
        ok = all(
            choice[u] is None or choice[v] is None or inst.pattern.adjacent(choice[u], choice[v])
            for u, v in edges
        )
        if ok:
            best = max(best, sum(inst.rev[u][c] for u, c in enumerate(choice) if c is not None))
    return best


def brute_lex_optimum(inst: Instance) -> tuple[float, dict[int, int]]:
    """Optimum and the optimum with lexicographically smallest sorted
    (vertex, colour) sequence, over all partial maps."""
    best, best_seq = None, None
    edges = list(inst.host.edges)
    for choice in product([None] + list(range(inst.k)), repeat=inst.n):
        if not all(
            choice[u] is None or choice[v] is None or inst.pattern.adjacent(choice[u], choice[v])
            for u, v in edges
        ):
            continue
        val = sum(inst.rev[u][c] for u, c in enumerate(choice) if c is not None)
        seq = tuple((u, c) for u, c in enumerate(choice) if c is not None)
        if best is None or val > best or (val == best and seq < best_seq):
            best, best_seq = val, seq
    return best, dict(best_seq)


def brute_multicolor_opt(minst: MulticolorInstance) -> float:
    k = minst.k
    hadj = minst.pattern.graph.adj

    def compatible(a: int, b: int) -> bool:
        return not a & b and all(hadj[c] & b == b for c in range(k) if a >> c & 1)

    best = 0.0
    for choice in product(range(1 << k), repeat=minst.n):
        if all(not choice[u] or not choice[v] or compatible(choice[u], choice[v]) for u, v in minst.host.edges):
            best = max(best, sum(minst.rev[u][z] for u, z in enumerate(choice) if z))
    return best


def brute_modules(g: Graph) -> list[frozenset[int]]:
    """All modules with at least two vertices, by checking every subset."""
    out = []
    for size in range(2, g.n + 1):
        for sub in combinations(range(g.n), size):
            s = set(sub)
            if all(
                len({g.has_edge(x, v) for v in s}) == 1 for x in range(g.n) if x not in s
            ):
                out.append(frozenset(s))
    return out


def brute_strong_modules(g: Graph) -> set[frozenset[int]]:
    mods = brute_modules(g) + [frozenset([v]) for v in range(g.n)]
    strong = set()
    for m in mods:
        if all(m <= o or o <= m or not (m & o) for o in mods):
            strong.add(m)
    return strong


@pytest.fixture
def rng():
    import random

    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
