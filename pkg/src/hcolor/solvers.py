"""Exact solvers built on the branching step.

All solvers return a :class:`SolveReport`. Among optimum solutions the first
one met in the (deterministic) search order is kept; only strict
improvements replace the incumbent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .branching import (
    branch_full,
    check_branching_class,
    simplified_revenues,
    simplified_setup,
)
from .graph import Graph, bits, clique_number, component_masks, contains_induced, max_clique
from .model import Instance, PartialColoring, Pattern, complete_to, is_valid, revenue, solve_edgeless
from .named import ante, half_graph, path
from .oracle import oracle_solve
from .recognition import ClassViolation, StructureViolation


class NotCograph(ClassViolation):
    """Host contains an induced P4."""


@dataclass(frozen=True)
class SolverConfig:
    s: int = 3
    t: int = 2
    fallback: int = 4
    guess_cap: int | None = None
    pattern_cap: int = 64
    check_class: bool = False
    audit: bool = False
    threads: int = 1
    prune: bool = True

    def __post_init__(self) -> None:
        if min(self.s, self.t, self.pattern_cap, self.threads) < 1 or self.fallback < 1:
            raise ValueError("solver parameters must be positive")
        if self.guess_cap is not None and self.guess_cap < 1:
            raise ValueError("guess cap must be positive")


@dataclass
class SolveReport:
    opt: float
    solution: PartialColoring
    stats: dict = field(default_factory=dict)

    def check(self, inst: Instance) -> bool:
        return is_valid(inst, self.solution) and revenue(inst, self.solution) == self.opt


Solution = tuple[float, PartialColoring]


def _positive_part(inst: Instance) -> tuple[Instance, tuple[int, ...]] | None:
    # vertices without a positive revenue never appear in an optimum
    keep = [u for u, row in enumerate(inst.rev) if any(x > 0 for x in row)]
    if not keep:
        return None
    if len(keep) == inst.n:
        return inst, tuple(range(inst.n))
    return inst.restrict(keep)


def _lift(phi: PartialColoring, old: tuple[int, ...]) -> PartialColoring:
    return {old[u]: c for u, c in phi.items()}


def _key(inst: Instance) -> tuple:
    return inst.host.adj, inst.rev


def _by_components(inst: Instance, solve: Callable[[Instance], Solution]) -> Solution | None:
    """Solve component-wise when the host is disconnected, else ``None``."""
    comps = component_masks(inst.host)
    if len(comps) < 2:
        return None
    total, phi = 0.0, {}
    for comp in comps:
        sub, old = inst.restrict(bits(comp))
        val, sol = solve(sub)
        total += val
        phi.update(_lift(sol, old))
    return total, phi


# --- recursive solver ------------------------------------------------------


def solve_recursive(inst: Instance, cfg: SolverConfig | None = None) -> SolveReport:
    """Optimum on ``{P6, L_s, S_t}``-free hosts by repeated simplified branching.

    Every branch lowers the clique number, so the recursion depth is at most
    ``2 * omega(G)``. Stats: ``max_depth``, ``branch_nodes``,
    ``oracle_fallbacks`` and, with ``cfg.audit``, ``omega_violations``.
    """
    cfg = cfg or SolverConfig()
    inst.pattern.require_irreflexive()
    if cfg.check_class:
        check_branching_class(inst.host, cfg.s, cfg.t)
    stats = {"max_depth": 0, "branch_nodes": 0, "oracle_fallbacks": 0, "omega_violations": 0}
    memo: dict[tuple, Solution] = {}

    def rec(cur: Instance, depth: int) -> Solution:
        stats["max_depth"] = max(stats["max_depth"], depth)
        reduced = _positive_part(cur)
        if reduced is None:
            return 0.0, {}
        sub, old = reduced
        key = _key(sub)
        if key not in memo:
            memo[key] = solve_connected_or_split(sub, depth)
        val, phi = memo[key]
        return val, _lift(phi, old)

    def solve_connected_or_split(cur: Instance, depth: int) -> Solution:
        split = _by_components(cur, lambda sub: rec(sub, depth + 1))
        if split is not None:
            return split
        if cur.n == 1:
            return solve_edgeless(cur)
        if cur.n <= cfg.fallback:
            stats["oracle_fallbacks"] += 1
            return oracle_solve(cur, cap=max(cur.n, 1))
        stats["branch_nodes"] += 1
        setup = simplified_setup(cur)
        if cfg.audit and clique_number(setup.graph) >= clique_number(cur.host):
            stats["omega_violations"] += 1
        best: Solution = (-1.0, {})
        for rev2 in simplified_revenues(cur, setup, cfg.s, cfg.t, cfg.prune, cfg.guess_cap):
            val, phi = rec(Instance(setup.graph, cur.pattern, rev2), depth + 1)
            if val > best[0]:
                best = (val, phi)
        return best

    val, phi = rec(inst, 0)
    return SolveReport(val, phi, stats)


# --- subexponential wrapper ------------------------------------------------


def integer_root(n: int, d: int) -> int:
    """Largest ``r`` with ``r ** d <= n``."""
    if n < 0 or d < 1:
        raise ValueError("integer_root needs n >= 0 and d >= 1")
    r = int(round(n ** (1.0 / d)))
    while r**d > n:
        r -= 1
    while (r + 1) ** d <= n:
        r += 1
    return r


def subexp_threshold(n: int, alpha: int) -> int:
    """``floor(n ** (1 / (alpha + 1)))``."""
    return integer_root(n, alpha + 1)


def solve_subexponential(
    inst: Instance,
    cfg: SolverConfig | None = None,
    alpha: int = 1,
    inner: Callable[[Instance, SolverConfig], SolveReport] | None = None,
) -> SolveReport:
    """Branch on large cliques before handing over to the inner solver.

    With ``tau = floor(n ** (1/(alpha+1)))``: if some clique ``K`` has ``tau``
    vertices, an optimum colours at most ``|H|`` of them, so recurse on
    ``G - (K - A)`` for every ``A`` in ``K`` with ``|A| <= |H|``. Once the
    clique number is below ``tau`` (or ``tau <= |H|``) the inner solver runs.
    """
    cfg = cfg or SolverConfig()
    inner = inner or solve_recursive
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")
    inst.pattern.require_irreflexive()
    tau = subexp_threshold(inst.n, alpha)
    stats = {"tau": tau, "inner_calls": 0, "clique_branches": 0}

    def run_inner(cur: Instance) -> Solution:
        stats["inner_calls"] += 1
        rep = inner(cur, cfg)
        return rep.opt, rep.solution

    def rec(cur: Instance) -> Solution:
        if tau <= cur.k:
            return run_inner(cur)
        clique = max_clique(cur.host)
        if len(clique) < tau:
            return run_inner(cur)
        k_set = sorted(clique)[:tau]
        best: Solution = (-1.0, {})
        for a in _small_subsets(k_set, cur.k):
            stats["clique_branches"] += 1
            drop = set(k_set) - set(a)
            sub, old = cur.restrict(v for v in range(cur.n) if v not in drop)
            val, phi = rec(sub)
            if val > best[0]:
                best = (val, _lift(phi, old))
        return best

    val, phi = rec(inst)
    return SolveReport(val, phi, stats)


def _small_subsets(items: list[int], k: int):
    from itertools import combinations

    for size in range(0, min(k, len(items)) + 1):
        yield from combinations(items, size)


# --- threshold-exclusion solver ----------------------------------------------


def level_graph(base: str, level: int) -> Graph:
    """Forbidden graph at a level: ``Q_level`` for the edgeless base,
    ``ante^level(P4)`` for the cograph base."""
    if base == "edgeless":
        if level < 1:
            raise ValueError("edgeless base starts at level 1")
        return half_graph(level)
    if base == "cograph":
        if level < 0:
            raise ValueError("cograph base starts at level 0")
        f = path(4)
        for _ in range(level):
            f = ante(f)
        return f
    raise ValueError(f"unknown base {base!r}")


def solve_threshold_excluded(
    inst: Instance, cfg: SolverConfig | None = None, k: int = 2, base: str = "edgeless"
) -> SolveReport:
    """Optimum on ``{P6, L_s, S_t, F_k}``-free hosts by nested induction.

    ``F_k`` is ``Q_k`` (base level 1: edgeless hosts) or ``ante^k(P4)``
    (base level 0: cographs). Full branching splits each instance into one on
    ``A1`` with one colour fewer at the same level and one on the rest that is
    ``F_{k-1}``-free.
    """
    cfg = cfg or SolverConfig()
    inst.pattern.require_irreflexive()
    bottom = 1 if base == "edgeless" else 0
    level_graph(base, k)
    if k < bottom:
        raise ValueError(f"level {k} below the base level {bottom}")
    if cfg.check_class:
        check_branching_class(inst.host, cfg.s, cfg.t)
        w = contains_induced(inst.host, level_graph(base, k))
        if w is not None:
            raise ClassViolation(f"host contains the level-{k} forbidden graph on {sorted(w)}")
    stats = {"branch_pairs": 0, "oracle_fallbacks": 0, "base_solves": 0}
    memo: dict[tuple, Solution] = {}

    def rec(cur: Instance, level: int) -> Solution:
        reduced = _positive_part(cur)
        if reduced is None:
            return 0.0, {}
        sub, old = reduced
        key = (sub.pattern, _key(sub), level)
        if key not in memo:
            memo[key] = solve(sub, level)
        val, phi = memo[key]
        return val, _lift(phi, old)

    def solve(cur: Instance, level: int) -> Solution:
        split = _by_components(cur, lambda sub: rec(sub, level))
        if split is not None:
            return split
        if cur.n == 1 or level == bottom:
            stats["base_solves"] += 1
            if base == "edgeless" or cur.n == 1:
                if cur.host.edges:
                    raise StructureViolation(f"base level reached with edge {min(cur.host.edges)}")
                return solve_edgeless(cur)
            rep = solve_cograph(cur)
            return rep.opt, rep.solution
        if cur.n <= cfg.fallback:
            stats["oracle_fallbacks"] += 1
            return oracle_solve(cur, cap=cur.n)
        best: Solution = (-1.0, {})
        for pair in branch_full(cur, cfg.s, cfg.t, cfg.prune, cfg.guess_cap):
            stats["branch_pairs"] += 1
            if cfg.check_class and level - 1 >= bottom:
                w = contains_induced(pair.inst2.host, level_graph(base, level - 1))
                if w is not None:
                    raise StructureViolation(f"second subinstance not level-{level - 1} free: {sorted(w)}")
            v1, phi1 = rec(pair.inst1, level)
            v2, phi2 = rec(pair.inst2, level - 1)
            if v1 + v2 > best[0]:
                best = (v1 + v2, pair.lift(phi1, phi2))
        return best

    val, phi = rec(inst, k)
    return SolveReport(val, phi, stats)


# --- cographs ----------------------------------------------------------------


@dataclass(frozen=True)
class Cotree:
    kind: str  # "leaf", "union" or "join"
    vertex: int | None = None
    children: tuple[Cotree, ...] = ()


def cotree(g: Graph) -> Cotree:
    """Cotree of a cograph; raises :class:`NotCograph` with a P4 witness otherwise."""
    comp = g.complement()

    def build(mask: int) -> Cotree:
        if mask & (mask - 1) == 0:
            return Cotree("leaf", mask.bit_length() - 1)
        parts = component_masks(g, mask)
        if len(parts) > 1:
            return Cotree("union", None, tuple(build(p) for p in parts))
        parts = component_masks(comp, mask)
        if len(parts) > 1:
            return Cotree("join", None, tuple(build(p) for p in parts))
        sub, old = g.induced(bits(mask))
        w = contains_induced(sub, path(4))
        raise NotCograph(f"induced P4 on {sorted(old[v] for v in w)}" if w else "not a cograph")

    if g.n == 0:
        return Cotree("union")
    return build(g.full)


def solve_cograph(inst: Instance) -> SolveReport:
    """Cotree dynamic programme over colour subsets ``W``.

    ``h(node, W)`` is the best revenue inside the node using colours from
    ``W`` only. Unions add children; joins split ``W`` into disjoint parts
    that are complete to each other in the pattern, folding children left to
    right.
    """
    inst.pattern.require_irreflexive()
    tree = cotree(inst.host)
    k = inst.k
    size = 1 << k
    compat = [[complete_to(inst.pattern, a, b) for b in range(size)] for a in range(size)]
    splits = [[(a, w & ~a) for a in _submasks(w)] for w in range(size)]
    stats = {"join_folds": 0}

    def table(node: Cotree):
        # returns (values, rebuild) where rebuild(W) -> PartialColoring
        if node.kind == "leaf":
            row = inst.rev[node.vertex]
            vals, picks = [], []
            for w in range(size):
                best, pick = 0.0, None
                for c in bits(w):
                    if row[c] > best:
                        best, pick = row[c], c
                vals.append(best)
                picks.append(pick)
            u = node.vertex
            return vals, lambda w: {} if picks[w] is None else {u: picks[w]}
        subs = [table(ch) for ch in node.children]
        if node.kind == "union":
            vals = [sum(s[0][w] for s in subs) for w in range(size)]

            def rebuild_union(w: int) -> PartialColoring:
                out: PartialColoring = {}
                for s in subs:
                    out.update(s[1](w))
                return out

            return vals, rebuild_union
        acc = subs[0]
        for nxt in subs[1:]:
            acc = fold(acc, nxt)
        return acc

    def fold(left, right):
        stats["join_folds"] += 1
        vals, choice = _join(left[0], right[0], compat, splits)

        def rebuild(w: int) -> PartialColoring:
            a, b = choice[w]
            out = left[1](a)
            out.update(right[1](b))
            return out

        return vals, rebuild

    if inst.n == 0:
        return SolveReport(0.0, {}, stats)
    vals, rebuild = table(tree)
    phi = rebuild(size - 1)
    return SolveReport(vals[size - 1], phi, stats)


def _join(lv, rv, compat, splits) -> tuple[list[float], list[tuple[int, int]]]:
    vals, choice = [], []
    for w in range(len(lv)):
        best, arg = -1.0, None
        for a, rest in splits[w]:
            for b in _submasks(rest):
                if compat[a][b] and lv[a] + rv[b] > best:
                    best, arg = lv[a] + rv[b], (a, b)
        vals.append(best)
        choice.append(arg)
    return vals, choice


def join_table(h: Pattern, left: Sequence[float], right: Sequence[float]) -> list[float]:
    """Value table of the join of two modules, given their tables indexed by
    colour subset ``W`` (monotone in ``W``, zero at the empty set)."""
    size = 1 << h.k
    if len(left) != size or len(right) != size:
        raise ValueError("tables must have one entry per colour subset")
    compat = [[complete_to(h, a, b) for b in range(size)] for a in range(size)]
    splits = [[(a, w & ~a) for a in _submasks(w)] for w in range(size)]
    return _join(left, right, compat, splits)[0]


def _submasks(w: int):
    """All submasks of ``w`` in increasing order."""
    return sorted(_iter_submasks(w))


def _iter_submasks(w: int):
    s = w
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & w
