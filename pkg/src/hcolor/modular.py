"""Multicolouring over modular decompositions and the bull-free pipelines.

Everything here works with multicolouring instances over a fixed base
pattern ``H``. For a module ``B`` and a colour set ``W``, ``OPT(B, W)`` is
the optimum inside ``B`` using only colour sets contained in ``W``. A node
of the decomposition tree combines its children according to the kind of
its quotient: edgeless (sum), complete (children get pairwise complete colour
sets) or prime (a multicolouring instance on the quotient, handed to a
supplied solver).
"""

from __future__ import annotations

import math
from typing import Callable

from .branching import branch_full, check_branching_class
from .decomposition import COMPLETE, EDGELESS, LEAF, MDNode, maximal_strong_modules, modular_decomposition, quotient
from .graph import bits, contains_induced
from .model import (
    Instance,
    MulticolorInstance,
    Multicoloring,
    as_multicolor,
    hat_reading,
    multicoloring_to_coloring,
    to_multicolor,
)
from .named import bull, cycle, path
from .oracle import CapExceeded, oracle_solve, oracle_solve_multicolor
from .recognition import StructureViolation
from .solvers import SolveReport, SolverConfig, solve_cograph

__all__ = [
    "StructureViolation",
    "PatternCapExceeded",
    "restrict_revenue",
    "combine_modules",
    "solve_multicolor_dp",
    "solve_via_prime_reduction",
    "solve_bullfree",
    "solve_bullfree_c5free_prime",
    "hat_solver",
]

MultiSolution = tuple[float, Multicoloring]
PrimeSolver = Callable[[MulticolorInstance], MultiSolution]


class PatternCapExceeded(CapExceeded):
    """Power pattern larger than the configured cap."""


def restrict_revenue(minst: MulticolorInstance, b, w: int) -> MulticolorInstance:
    """Instance on ``G[B]`` where colour sets outside ``W`` get ``-1``."""
    if w == 0:
        raise ValueError("W must be non-empty")
    sub, old = minst.host.induced(b if not isinstance(b, int) else bits(b))
    rows = tuple(
        tuple(x if z & ~w == 0 else -1.0 for z, x in enumerate(minst.rev[u])) for u in old
    )
    return MulticolorInstance(sub, minst.pattern, rows)


def _leaf(minst: MulticolorInstance, u: int, w: int) -> MultiSolution:
    row = minst.rev[u]
    best, pick = 0.0, None
    for z in range(1, w + 1):
        if z & ~w == 0 and row[z] > best:
            best, pick = row[z], z
    return (best, {u: pick}) if pick is not None else (0.0, {})


def _complete_dp(
    minst: MulticolorInstance, children: list[int], w: int, child_opt: Callable[[int, int], MultiSolution]
) -> MultiSolution:
    # used-colour-set DP: states U -> (value, chosen sets per child)
    adj = minst.pattern.graph.adj
    states: dict[int, tuple[float, tuple[int, ...]]] = {0: (0.0, ())}
    for i, child in enumerate(children):
        nxt: dict[int, tuple[float, tuple[int, ...]]] = {}

        def offer(u: int, val: float, picks: tuple[int, ...]) -> None:
            if u not in nxt or val > nxt[u][0]:
                nxt[u] = (val, picks)

        for u, (val, picks) in sorted(states.items()):
            offer(u, val, picks + (0,))
            free = w & ~u
            # colours complete to everything used so far
            for c in bits(u):
                free &= adj[c]
            z = free
            while z:
                cv, _ = child_opt(child, z)
                if cv > 0:
                    offer(u | z, val + cv, picks + (z,))
                z = (z - 1) & free
        states = nxt
    best_u = max(states, key=lambda u: (states[u][0], -u))
    val, picks = states[best_u]
    phi: Multicoloring = {}
    for child, z in zip(children, picks):
        if z:
            phi.update(child_opt(child, z)[1])
    return val, phi


def _combine(
    minst: MulticolorInstance,
    kind: str,
    parts: list[int],
    w: int,
    child_opt: Callable[[int, int], MultiSolution],
    prime_solver: PrimeSolver,
    counter: dict,
) -> MultiSolution:
    if kind == EDGELESS:
        total, phi = 0.0, {}
        for p in parts:
            val, sol = child_opt(p, w)
            total += val
            phi.update(sol)
        return total, phi
    if kind == COMPLETE:
        return _complete_dp(minst, parts, w, child_opt)
    q = quotient(minst.host, parts)
    width = 1 << minst.k
    rows = []
    for p in parts:
        row = [-1.0] * width
        for z in range(1, width):
            if z & ~w == 0:
                row[z] = child_opt(p, z)[0]
        rows.append(tuple(row))
    counter["prime_calls"] = counter.get("prime_calls", 0) + 1
    val, psi = prime_solver(MulticolorInstance(q, minst.pattern, tuple(rows)))
    phi: Multicoloring = {}
    total = 0.0
    for i, z in psi.items():
        sub_val, sol = child_opt(parts[i], z)
        total += sub_val
        phi.update(sol)
    if not math.isclose(total, val, rel_tol=1e-9, abs_tol=1e-9):
        raise AssertionError("prime solver reported a value its colouring does not reach")
    return total, phi


def combine_modules(
    minst: MulticolorInstance,
    prime_solver: PrimeSolver,
    module_solver: Callable[[MulticolorInstance], MultiSolution] | None = None,
) -> MultiSolution:
    """One decomposition level: solve each maximal strong module for every
    colour set (by ``module_solver``, default the multicolour oracle) and
    combine through the quotient."""
    module_solver = module_solver or oracle_solve_multicolor
    if minst.n == 0:
        return 0.0, {}
    kind, parts = maximal_strong_modules(minst.host)
    if len(parts) == 1:
        return module_solver(minst)
    cache: dict[tuple[int, int], MultiSolution] = {}

    def child_opt(b: int, z: int) -> MultiSolution:
        if (b, z) not in cache:
            sub = restrict_revenue(minst, b, z)
            _, old = minst.host.induced(bits(b))
            val, sol = module_solver(sub)
            cache[b, z] = (val, {old[u]: c for u, c in sol.items()})
        return cache[b, z]

    return _combine(minst, kind, parts, minst.full_colors, child_opt, prime_solver, {})


def solve_multicolor_dp(
    minst: MulticolorInstance, prime_solver: PrimeSolver, counter: dict | None = None
) -> MultiSolution:
    """Optimum over the whole decomposition tree, memoised per (node, W)."""
    counter = counter if counter is not None else {}
    counter.setdefault("prime_calls", 0)
    if minst.n == 0:
        return 0.0, {}
    tree = modular_decomposition(minst.host)
    nodes: dict[int, MDNode] = {node.mask: node for node in tree.walk()}
    memo: dict[tuple[int, int], MultiSolution] = {}

    def opt(mask: int, w: int) -> MultiSolution:
        key = (mask, w)
        if key not in memo:
            node = nodes[mask]
            if node.kind == LEAF:
                memo[key] = _leaf(minst, next(iter(node.vertices)), w)
            else:
                parts = [ch.mask for ch in node.children]
                memo[key] = _combine(minst, node.kind, parts, w, opt, prime_solver, counter)
        return memo[key]

    return opt(tree.mask, minst.full_colors)


def hat_solver(coloring_solver: Callable[[Instance], tuple[float, dict]]) -> PrimeSolver:
    """Multicolour solver that reads the instance as a power-pattern colouring."""

    def solve(minst: MulticolorInstance) -> MultiSolution:
        inst = hat_reading(minst)
        if inst.k == 0:
            return 0.0, {}
        val, phi = coloring_solver(inst)
        return val, {u: inst.pattern.subsets[c] for u, c in phi.items()}

    return solve


def _check_pattern_cap(k: int, cap: int) -> None:
    if (1 << k) - 1 > cap:
        raise PatternCapExceeded(f"power pattern has {(1 << k) - 1} colours, cap is {cap}")


def solve_via_prime_reduction(
    inst: Instance,
    prime_coloring_solver: Callable[[Instance], tuple[float, dict]] | None = None,
    cfg: SolverConfig | None = None,
) -> SolveReport:
    """Optimum through the decomposition tree, prime quotients solved as
    power-pattern colourings by ``prime_coloring_solver`` (default: oracle)."""
    cfg = cfg or SolverConfig()
    inst.pattern.require_irreflexive()
    _check_pattern_cap(inst.k, cfg.pattern_cap)
    solver = prime_coloring_solver or (lambda sub: oracle_solve(sub, cap=max(sub.n, 1)))
    counter: dict = {}
    val, phi = solve_multicolor_dp(to_multicolor(inst), hat_solver(solver), counter)
    return SolveReport(val, multicoloring_to_coloring(inst, phi), counter)


# --- bull-free pipelines -------------------------------------------------------


class _BullfreePipeline:
    """Prime nodes are solved by full branching (``s = 3``) on the power-pattern
    reading. The first subinstance recurses through the general pipeline; the
    second must be C5-free (general pipeline) or P4-free (C5-free pipeline)."""

    def __init__(self, cfg: SolverConfig) -> None:
        self.cfg = cfg
        self.stats = {"prime_calls": 0, "branch_pairs": 0, "oracle_fallbacks": 0, "structure_checks": 0}
        self.memo: dict[tuple, MultiSolution] = {}

    def multicolor(self, minst: MulticolorInstance, c5free: bool) -> MultiSolution:
        key = (minst.host.adj, minst.rev, c5free)
        if key not in self.memo:
            prime = lambda q: self.prime(q, c5free)  # noqa: E731
            self.memo[key] = solve_multicolor_dp(minst, prime, {})
        return self.memo[key]

    def prime(self, q: MulticolorInstance, c5free: bool) -> MultiSolution:
        self.stats["prime_calls"] += 1
        inst = hat_reading(q)
        if inst.k > self.cfg.pattern_cap:
            raise PatternCapExceeded(f"power pattern has {inst.k} colours, cap is {self.cfg.pattern_cap}")
        if inst.k == 0:
            return 0.0, {}
        subsets = inst.pattern.subsets
        if inst.n <= self.cfg.fallback:
            self.stats["oracle_fallbacks"] += 1
            val, phi = oracle_solve(inst, cap=inst.n)
            return val, {u: subsets[c] for u, c in phi.items()}
        best: MultiSolution = (-1.0, {})
        for pair in branch_full(inst, 3, self.cfg.t, self.cfg.prune, self.cfg.guess_cap):
            self.stats["branch_pairs"] += 1
            v1, phi1 = self.multicolor(as_multicolor(pair.inst1), False)
            v2, phi2 = self.second(pair.inst2, pair.vertices2, c5free)
            if v1 + v2 > best[0]:
                phi = {pair.vertices1[u]: z for u, z in phi1.items()}
                phi.update({pair.vertices2[u]: z for u, z in phi2.items()})
                best = (v1 + v2, phi)
        return best

    def second(self, inst2: Instance, old: tuple[int, ...], c5free: bool) -> MultiSolution:
        self.stats["structure_checks"] += 1
        f, name = (path(4), "P4") if c5free else (cycle(5), "C5")
        w = contains_induced(inst2.host, f)
        if w is not None:
            raise StructureViolation(
                f"second branch subinstance contains an induced {name} on host vertices {sorted(old[v] for v in w)}"
            )
        if c5free:
            rep = solve_cograph(inst2)
            return rep.opt, {u: inst2.pattern.subsets[c] for u, c in rep.solution.items()}
        return self.multicolor(as_multicolor(inst2), True)


def _bullfree_entry(inst: Instance, cfg: SolverConfig | None, c5free: bool) -> SolveReport:
    cfg = cfg or SolverConfig()
    inst.pattern.require_irreflexive()
    _check_pattern_cap(inst.k, cfg.pattern_cap)
    if cfg.check_class:
        check_branching_class(inst.host, 3, cfg.t)
        w = contains_induced(inst.host, bull())
        if w is not None:
            raise StructureViolation(f"host contains an induced bull on {sorted(w)}")
    pipe = _BullfreePipeline(cfg)
    val, phi = pipe.multicolor(to_multicolor(inst), c5free)
    return SolveReport(val, multicoloring_to_coloring(inst, phi), pipe.stats)


def solve_bullfree_c5free_prime(inst: Instance, cfg: SolverConfig | None = None) -> SolveReport:
    """Optimum on ``{P6, C5, S_t, bull}``-free hosts (prime ones in particular)."""
    return _bullfree_entry(inst, cfg, True)


def solve_bullfree(inst: Instance, cfg: SolverConfig | None = None) -> SolveReport:
    """Optimum on ``{P6, S_t, bull}``-free hosts; ``t = 2`` covers ``{P5, bull}``-free."""
    return _bullfree_entry(inst, cfg, False)
