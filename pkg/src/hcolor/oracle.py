"""Brute-force ground truth used to validate every other solver.

The search is plain depth-first enumeration of partial maps. Two facts keep
it small without changing the optimum: assignments with non-positive
revenue never improve a solution (dropping them keeps the map valid), and the
running total plus the best remaining positive revenue per vertex bounds
every completion. A second greedy pass, vertex by vertex, then picks the
lexicographically smallest optimum so that ties are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .graph import Graph, bits
from .model import (
    Instance,
    MulticolorInstance,
    Pattern,
    PartialColoring,
    complete_to,
)

DEFAULT_CAP = 12
MULTICOLOR_CAP = (10, 3)
LIST_CAP = 64


class CapExceeded(ValueError):
    """Instance is larger than the configured brute-force cap."""


def _best_extension(
    start: int,
    choices: Sequence[Sequence[tuple[float, int]]],
    compatible,
    current: dict[int, int],
) -> float:
    # best revenue added by vertices start.. given the fixed assignments in current;
    # choices[u] lists (revenue, label) pairs with revenue > 0, best first
    n = len(choices)
    suffix = [0.0] * (n + 1)
    for u in range(n - 1, start - 1, -1):
        suffix[u] = suffix[u + 1] + (choices[u][0][0] if choices[u] else 0.0)
    best_val = 0.0

    def dfs(u: int, total: float) -> None:
        nonlocal best_val
        if total + suffix[u] <= best_val:
            return
        if u == n:
            best_val = total
            return
        for value, label in choices[u]:
            if compatible(u, label, current):
                current[u] = label
                dfs(u + 1, total + value)
                del current[u]
        dfs(u + 1, total)

    dfs(start, 0.0)
    return best_val


def _lex_smallest_optimum(
    rows: Sequence[Sequence[tuple[float, int]]],
    compatible,
) -> tuple[float, dict[int, int]]:
    """Optimum value and the optimum whose sorted (vertex, label) sequence is
    lexicographically smallest.

    ``rows[u]`` lists every (revenue, label) pair with revenue >= 0. Vertices
    are fixed in increasing order: stop as soon as the optimum is reached (the
    shorter sequence is smaller), otherwise give ``u`` the smallest label that
    still extends to the optimum.
    """
    positive = [sorted((x for x in row if x[0] > 0), key=lambda x: (-x[0], x[1])) for row in rows]
    opt = _best_extension(0, positive, compatible, {})
    slack = 1e-9 * max(1.0, abs(opt))
    current: dict[int, int] = {}
    total = 0.0
    for u in range(len(rows)):
        if total >= opt - slack:
            break
        for value, label in sorted(rows[u], key=lambda x: x[1]):
            if not compatible(u, label, current):
                continue
            current[u] = label
            if total + value + _best_extension(u + 1, positive, compatible, current) >= opt - slack:
                total += value
                break
            del current[u]
    return opt, current


def oracle_solve(inst: Instance, cap: int = DEFAULT_CAP) -> tuple[float, PartialColoring]:
    """Exact optimum and, among optimum partial colourings, the one whose
    sorted (vertex, colour) sequence is lexicographically smallest."""
    if inst.n > cap:
        raise CapExceeded(f"oracle cap {cap} exceeded by n={inst.n}")
    adj = inst.host.adj
    p = inst.pattern
    rows = [[(row[c], c) for c in range(inst.k) if row[c] >= 0] for row in inst.rev]

    def compatible(u: int, c: int, current: dict[int, int]) -> bool:
        return all(p.adjacent(c, current[w]) for w in bits(adj[u]) if w in current)

    return _lex_smallest_optimum(rows, compatible)


def oracle_solve_multicolor(
    minst: MulticolorInstance, cap: tuple[int, int] = MULTICOLOR_CAP
) -> tuple[float, dict[int, int]]:
    """Exact optimum over partial maps into non-empty colour sets; ties go to
    the lexicographically smallest (vertex, colour set) sequence."""
    if minst.n > cap[0] or minst.k > cap[1]:
        raise CapExceeded(f"multicolour oracle cap {cap} exceeded by n={minst.n}, k={minst.k}")
    adj = minst.host.adj
    p = minst.pattern
    rows = [[(row[z], z) for z in range(1, minst.full_colors + 1) if row[z] >= 0] for row in minst.rev]

    def compatible(u: int, z: int, current: dict[int, int]) -> bool:
        return all(complete_to(p, z, current[w]) for w in bits(adj[u]) if w in current)

    return _lex_smallest_optimum(rows, compatible)


def oracle_list_hcolor(
    g: Graph, h: Pattern, lists: Sequence[Iterable[int]], cap: int = LIST_CAP
) -> bool:
    """Whether ``g`` has a total homomorphism to ``h`` respecting the lists.

    Loops in ``h`` are honoured. Backtracking with forward checking and
    smallest-domain-first vertex choice.
    """
    if g.n > cap:
        raise CapExceeded(f"list oracle cap {cap} exceeded by n={g.n}")
    hadj = [h.graph.adj[c] | ((1 << c) if c in h.graph.loops else 0) for c in range(h.k)]
    domains = [sum(1 << c for c in set(lst)) for lst in lists]
    if len(domains) != g.n:
        raise ValueError("one list per host vertex required")

    def solve(domains: list[int], todo: int) -> bool:
        if not todo:
            return True
        u = min(bits(todo), key=lambda v: domains[v].bit_count())
        for c in bits(domains[u]):
            new = list(domains)
            new[u] = 1 << c
            ok = True
            for w in bits(g.adj[u] & todo):
                new[w] &= hadj[c]
                if not new[w]:
                    ok = False
                    break
            if ok and solve(new, todo & ~(1 << u)):
                return True
        return False

    if any(d == 0 for d in domains):
        return False
    return solve(domains, g.full)


def oracle_3coloring(g: Graph, cap: int = LIST_CAP) -> bool:
    """Proper 3-colourability by plain backtracking in vertex order."""
    if g.n > cap:
        raise CapExceeded(f"3-colouring oracle cap {cap} exceeded by n={g.n}")
    colour = [-1] * g.n

    def place(u: int) -> bool:
        if u == g.n:
            return True
        for c in range(3):
            if all(colour[w] != c for w in bits(g.adj[u])):
                colour[u] = c
                if place(u + 1):
                    return True
        colour[u] = -1
        return False

    return place(0)
