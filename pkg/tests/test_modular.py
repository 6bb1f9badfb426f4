import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_multicolor_opt, brute_strong_modules
from hcolor.decomposition import (
    COMPLETE,
    EDGELESS,
    LEAF,
    PRIME,
    is_module,
    is_prime,
    modular_decomposition,
    quotient,
)
from hcolor.graph import Graph
from hcolor.model import Instance, MulticolorInstance, Pattern, hat, to_multicolor
from hcolor.modular import (
    _BullfreePipeline,
    PatternCapExceeded,
    combine_modules,
    hat_solver,
    restrict_revenue,
    solve_bullfree,
    solve_bullfree_c5free_prime,
    solve_via_prime_reduction,
)
from hcolor.named import bull, complete, cycle, edgeless, path
from hcolor.oracle import oracle_solve, oracle_solve_multicolor
from hcolor.recognition import StructureViolation, recognize
from hcolor.sampling import random_instance
from hcolor.solvers import SolverConfig, solve_cograph


def unit(g, h):
    return Instance(g, Pattern(h), [[1] * h.n for _ in range(g.n)])


def test_decomposition_examples():
    t = modular_decomposition(path(4))
    assert t.kind == PRIME and len(t.children) == 4
    assert all(c.kind == LEAF for c in t.children)
    assert modular_decomposition(complete(3)).kind == COMPLETE
    t = modular_decomposition(cycle(4))
    assert t.kind == COMPLETE
    assert {c.vertices for c in t.children} == {frozenset({0, 2}), frozenset({1, 3})}
    assert all(c.kind == EDGELESS for c in t.children)
    assert modular_decomposition(Graph.from_edges(1, [])).kind == LEAF
    with pytest.raises(ValueError):
        modular_decomposition(Graph.from_edges(0, []))


def test_module_predicates():
    assert is_prime(path(4)) and is_prime(bull()) and not is_prime(cycle(4))
    assert is_module(cycle(4), 0b0101) and not is_module(path(4), 0b0011)


def _check_tree(g):
    tree = modular_decomposition(g)
    nodes = list(tree.walk())
    assert len(nodes) <= 2 * g.n - 1
    assert {n.vertices for n in nodes} == brute_strong_modules(g)
    for node in nodes:
        if node.kind == LEAF:
            assert len(node.vertices) == 1
            continue
        q = quotient(g, [c.mask for c in node.children])
        assert len(node.children) >= 2
        if node.kind == EDGELESS:
            assert not q.edges
        elif node.kind == COMPLETE:
            assert q.m == q.n * (q.n - 1) // 2
        else:
            assert node.kind == PRIME and q.n >= 4 and is_prime(q)


@given(st.integers(0, 10_000), st.integers(1, 8), st.floats(0.1, 0.9))
@settings(max_examples=100, deadline=None)
def test_decomposition_matches_bruteforce(seed, n, density):
    rng = random.Random(seed)
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density])
    _check_tree(g)


def test_restrict_revenue():
    m = to_multicolor(Instance(path(3), Pattern(complete(2)), [[1, 2], [3, 4], [5, 6]]))
    sub = restrict_revenue(m, 0b101, 0b01)
    assert sub.n == 2
    assert sub.rev[0][1] == 1 and sub.rev[0][2] == -1 and sub.rev[1][3] == -1
    assert restrict_revenue(m, [0, 1], 0b11).rev == m.restrict([0, 1])[0].rev
    with pytest.raises(ValueError):
        restrict_revenue(m, [0], 0)


@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_combine_modules_matches_oracle(seed, n, k):
    rng = random.Random(seed)
    inst = random_instance("arbitrary", n, k, rng)
    rows = [[0.0] + [float(rng.randint(-2, 3)) for _ in range((1 << k) - 1)] for _ in range(n)]
    m = MulticolorInstance(inst.host, inst.pattern, rows)
    val, _ = combine_modules(m, oracle_solve_multicolor)
    assert val == oracle_solve_multicolor(m)[0] == brute_multicolor_opt(m)


def test_prime_calls():
    rep = solve_via_prime_reduction(unit(path(4), complete(2)))
    assert rep.stats["prime_calls"] == 1 and rep.opt == 4
    rep = solve_via_prime_reduction(unit(complete(5), complete(2)))
    assert rep.stats["prime_calls"] == 0 and rep.opt == 2
    with pytest.raises(PatternCapExceeded):
        solve_via_prime_reduction(unit(path(4), complete(3)), cfg=SolverConfig(pattern_cap=4))


@given(st.integers(0, 10_000), st.integers(1, 7), st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_prime_reduction_matches_oracle(seed, n, k):
    inst = random_instance("arbitrary", n, k, seed)
    rep = solve_via_prime_reduction(inst)
    assert rep.opt == oracle_solve(inst)[0] and rep.check(inst)


def test_hat_solver_on_empty_pattern_reading():
    m = to_multicolor(Instance(path(2), Pattern(complete(2)), [[-1, -1], [-1, -1]]))
    assert hat_solver(oracle_solve)(m) == (0.0, {})


def test_bullfree_examples():
    assert solve_bullfree(unit(cycle(5), complete(2))).opt == 4
    assert solve_bullfree(unit(path(4), complete(1))).opt == 2
    with pytest.raises(StructureViolation):
        solve_bullfree(unit(bull(), complete(2)), SolverConfig(check_class=True))


@pytest.mark.parametrize("cls", ["cobipartite", "cograph", "P5-free&bull-free"])
def test_bullfree_matches_oracle(cls):
    for seed in range(12):
        inst = random_instance(cls, 7, 2, seed, 0.5)
        if not recognize(inst.host, "P5,bull-free"):
            continue
        rep = solve_bullfree(inst)
        assert rep.opt == oracle_solve(inst)[0] and rep.check(inst)
        if cls == "cograph":
            assert rep.opt == solve_cograph(inst).opt


def test_c5free_prime_pipeline():
    for seed in range(10):
        inst = random_instance("P5,bull,C5-free", 7, 2, seed, 0.5)
        rep = solve_bullfree_c5free_prime(inst)
        assert rep.opt == oracle_solve(inst)[0] and rep.check(inst)


def test_structure_checks_name_host_witness():
    pipe = _BullfreePipeline(SolverConfig())
    h = hat(Pattern(complete(2)))
    sub = Instance(path(4), h, [[1] * h.k] * 4)
    with pytest.raises(StructureViolation, match=r"P4 on host vertices \[10, 11, 12, 13\]"):
        pipe.second(sub, (10, 11, 12, 13), True)
    sub = Instance(cycle(5), h, [[1] * h.k] * 5)
    with pytest.raises(StructureViolation, match="C5"):
        pipe.second(sub, tuple(range(5)), False)
    sub = Instance(edgeless(2), h, [[1] * h.k] * 2)
    assert pipe.second(sub, (0, 1), True)[0] == 2
