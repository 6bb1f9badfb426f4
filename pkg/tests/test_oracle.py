import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_lex_optimum, brute_opt
from hcolor.graph import Graph
from hcolor.model import Instance, Pattern, is_valid, revenue, to_multicolor
from hcolor.named import complete, cycle, edgeless, path, petersen
from hcolor.oracle import (
    CapExceeded,
    oracle_3coloring,
    oracle_list_hcolor,
    oracle_solve,
    oracle_solve_multicolor,
)
from hcolor.sampling import random_instance


def unit(g, h):
    return Instance(g, Pattern(h), [[1] * h.n for _ in range(g.n)])


def test_oracle_examples():
    assert oracle_solve(unit(complete(2), complete(1)))[0] == 1
    assert oracle_solve(unit(cycle(5), complete(2)))[0] == 4
    assert oracle_solve(unit(complete(5), complete(3)))[0] == 3


def test_oracle_cap():
    with pytest.raises(CapExceeded):
        oracle_solve(unit(edgeless(13), complete(1)))
    assert oracle_solve(unit(edgeless(13), complete(1)), cap=13)[0] == 13
    with pytest.raises(CapExceeded):
        oracle_solve_multicolor(to_multicolor(unit(edgeless(3), complete(4))))


def test_multicolor_edgeless():
    inst = Instance(edgeless(2), Pattern(complete(2)), [[1, 2], [3, -1]])
    m = to_multicolor(inst)
    rows = [list(r) for r in m.rev]
    rows[0][3] = 5
    from hcolor.model import MulticolorInstance

    m2 = MulticolorInstance(m.host, m.pattern, rows)
    assert oracle_solve_multicolor(m2)[0] == 5 + 3


def test_list_oracle_examples():
    looped = Pattern(Graph.from_edges(1, [], [0]), reflexive=True)
    assert oracle_list_hcolor(petersen(), looped, [[0]] * 10)
    assert not oracle_list_hcolor(complete(3), Pattern(complete(2)), [[0, 1]] * 3)
    assert oracle_list_hcolor(path(3), Pattern(complete(2)), [[0, 1]] * 3)
    assert not oracle_list_hcolor(path(2), Pattern(complete(2)), [[0], [0]])


def test_3coloring_examples():
    assert oracle_3coloring(cycle(5))
    assert not oracle_3coloring(complete(4))
    assert oracle_3coloring(petersen())


@given(st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_3coloring_matches_exhaustive_search(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
    # independent check by exhaustive enumeration of all 3-colourings
    expected = any(all(c[u] != c[v] for u, v in g.edges) for c in product(range(3), repeat=n))
    assert oracle_3coloring(g) == expected
    lists = [[0, 1, 2]] * n
    assert oracle_list_hcolor(g, Pattern(complete(3)), lists) == expected


@given(st.integers(0, 10_000), st.integers(1, 7), st.integers(1, 3))
@settings(max_examples=100, deadline=None)
def test_oracle_matches_bruteforce(seed, n, k):
    inst = random_instance("arbitrary", n, k, seed)
    val, phi = oracle_solve(inst)
    assert val == brute_opt(inst)
    assert is_valid(inst, phi) and revenue(inst, phi) == val
    assert all(inst.rev[u][c] >= 0 for u, c in phi.items())
    assert oracle_solve_multicolor(to_multicolor(inst))[0] == val


@given(st.integers(0, 10_000), st.integers(1, 7), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_opt_monotone_under_nonnegative_vertex(seed, n, k):
    rng = random.Random(seed)
    inst = random_instance("arbitrary", n, k, rng)
    adj = [v for v in range(n) if rng.random() < 0.5]
    g = Graph.from_edges(n + 1, list(inst.host.edges) + [(v, n) for v in adj])
    bigger = Instance(g, inst.pattern, inst.rev + (tuple(float(rng.randint(0, 3)) for _ in range(k)),))
    assert oracle_solve(bigger)[0] >= oracle_solve(inst)[0]


@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 3))
@settings(max_examples=100, deadline=None)
def test_ties_break_to_lexicographically_smallest(seed, n, k):
    # small revenue range so that ties and zero-revenue colours are common
    inst = random_instance("arbitrary", n, k, seed, 0.5, low=-1, high=1)
    assert oracle_solve(inst) == brute_lex_optimum(inst)


def test_tie_break_examples():
    # P3 with one colour: {0, 2} beats {1}; a zero-revenue colour is used when it sorts first
    inst = Instance(path(3), Pattern(complete(1)), [[1], [2], [1]])
    assert oracle_solve(inst) == (2.0, {0: 0, 2: 0})
    inst = Instance(edgeless(2), Pattern(complete(2)), [[0, -1], [2, 2]])
    assert oracle_solve(inst) == (2.0, {0: 0, 1: 0})
    inst = Instance(edgeless(2), Pattern(complete(2)), [[-1, -1], [0, 0]])
    assert oracle_solve(inst) == (0.0, {})
