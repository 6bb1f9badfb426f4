import random
from itertools import chain, combinations

import pytest

from hcolor.branching import (
    GuessCapExceeded,
    branch_full,
    branch_simplified,
    derived_revenue,
    disallowed_pairs,
    enumerate_guesses,
    partition_around,
    ramsey_bound,
    strip_cross_edges,
)
from hcolor.graph import Graph, clique_number, contains_induced
from hcolor.model import Instance, Pattern, is_valid, revenue
from hcolor.named import ante, complete, cycle, edgeless, path, univ
from hcolor.oracle import oracle_solve
from hcolor.recognition import ClassViolation
from hcolor.sampling import random_instance, sample_in_class


def subsets(items, max_size):
    items = sorted(items)
    return chain.from_iterable(combinations(items, r) for r in range(min(max_size, len(items)) + 1))


def corpus(count, seed, k_max=2, n_range=(5, 9), low=-2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n, k = rng.randint(*n_range), rng.randint(1, k_max)
        out.append(random_instance("P5-free", n, k, rng, rng.uniform(0.3, 0.7), True, low, 3))
    return out


def test_ramsey_bound():
    assert ramsey_bound(3, 2) == 3
    assert ramsey_bound(2, 2) == 2
    assert ramsey_bound(3, 3) == 6
    with pytest.raises(ValueError):
        ramsey_bound(0, 2)
    with pytest.raises(OverflowError):
        ramsey_bound(150, 150)


def test_partition_examples():
    sp = partition_around(complete(4), (0, 1, 2))
    assert [sp.part(i) for i in range(1, 5)] == [{3}, set(), set(), set()]
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    sp = partition_around(star, (0, 1, 2))
    assert sp.part(1) == {3, 4, 5}
    sp = partition_around(cycle(6), (0, 1, 2))
    assert [sp.part(i) for i in range(1, 5)] == [{5}, set(), {3}, {4}]
    with pytest.raises(ValueError):
        partition_around(cycle(6), (0, 2, 1))
    with pytest.raises(ValueError):
        partition_around(cycle(6), (0, 0, 1))


@pytest.mark.parametrize("seed", range(15))
def test_partition_invariants(seed):
    g = sample_in_class("P5-free", 9, 0.4, seed, connected=True)
    x = (0,) + tuple(sorted(g.neighbors(0)))[:1]
    if len(x) < 2:
        return
    nxt = sorted(g.closed_neighborhood(x) - set(x))
    if not nxt:
        return
    x = x + (nxt[0],)
    sp = partition_around(g, x)
    parts = [sp.part(i) for i in range(1, 5)]
    assert set().union(*parts, x) == set(range(g.n))
    assert sum(map(len, parts)) + 3 == g.n
    for i, xi in enumerate(x):
        assert all(g.has_edge(xi, u) for u in parts[i])
        assert not any(g.has_edge(xi, u) for p in parts[i + 1 :] for u in p)


def test_strip_cross_edges():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 3), (3, 4), (3, 5), (1, 5)])
    sp = partition_around(g, (0, 1, 2))
    # A1 = {3}, A2 = {5}, A3 = {}, A4 = {4}
    stripped = strip_cross_edges(g, sp)
    assert stripped.n == g.n and stripped.edges == frozenset()
    g2 = Graph.from_edges(5, [(0, 1), (1, 2), (0, 3), (0, 4), (3, 4)])
    stripped = strip_cross_edges(g2, partition_around(g2, (0, 1, 2)))
    assert stripped.edges == frozenset({(3, 4)})


def test_guess_count_matches_enumeration():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 3), (0, 4), (1, 5), (3, 4)])
    sp = partition_around(g, (0, 1, 2))
    h = Pattern(complete(1))
    limit = ramsey_bound(3, 2) - 1
    closed = set(g.closed_neighborhood((0, 1, 2)))
    parts = [sp.part(i) for i in (1, 2, 3)]
    expected = [
        frozenset(r) for r in subsets(closed, len(closed))
        if all(len(set(r) & p) <= limit for p in parts)
    ]
    produced = [r[0] for r in enumerate_guesses(g, sp, h, 3, 2)]
    assert len(produced) == len(set(produced))
    assert sorted(map(sorted, produced)) == sorted(map(sorted, expected))


def test_guess_stream_properties():
    g = sample_in_class("P5-free", 9, 0.6, 4, connected=True)
    sp = partition_around(g, (0,) + _extend(g, (0,)))
    h = Pattern(complete(2))
    count = 0
    for r in enumerate_guesses(g, sp, h, 3, 2, anchor=(0, 1)):
        count += 1
        assert 0 in r[1]
        assert not r[0] & r[1]
        for p in (sp.part(1), sp.part(2), sp.part(3)):
            assert all(len(rv & p) < 3 for rv in r)
        assert all(rv <= set(g.closed_neighborhood(sp.x)) for rv in r)
    assert count > 0
    empty = next(enumerate_guesses(g, sp, h, 3, 2))
    assert empty == (frozenset(), frozenset())


def _extend(g, x):
    x = list(x)
    while len(x) < 3:
        cand = sorted(g.closed_neighborhood(x) - set(x))
        x.append(cand[0])
    return tuple(x[1:])


def test_disallowed_d4_fixture():
    # path 0-1-2 is X; A1 = {3}; vertex 4 in A4 sees only 3
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    sp = partition_around(g, (0, 1, 2))
    h = Pattern(complete(1))
    assert disallowed_pairs(g, sp, h, (frozenset(),)) == {(0, 0), (1, 0), (2, 0), (3, 0)}
    assert disallowed_pairs(g, sp, h, (frozenset({3}),)) == {(0, 0), (1, 0), (2, 0), (4, 0)}


def test_disallowed_d2_and_anchor():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 3), (0, 4), (3, 5)])
    sp = partition_around(g, (0, 1, 2))
    h = Pattern(complete(2))
    b = disallowed_pairs(g, sp, h, (frozenset(), frozenset({0, 3})))
    assert (3, 0) in b and (0, 0) in b
    for r in enumerate_guesses(g, sp, h, 3, 2, anchor=(0, 1)):
        b = disallowed_pairs(g, sp, h, r)
        assert all((u, 1) in b for u in sp.part(1))


def test_derived_revenue():
    rev = ((1.0, 2.0), (3.0, 4.0))
    assert derived_revenue(rev, set()) == rev
    assert derived_revenue(rev, {(0, 1), (1, 0)}) == ((1.0, -1.0), (-1.0, 4.0))
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    sp = partition_around(g, (0, 1, 2))
    b = disallowed_pairs(g, sp, Pattern(complete(2)), (frozenset(), frozenset()))
    out = derived_revenue(((5.0, 5.0),) * 4, b)
    assert all(out[x] == (-1.0, -1.0) for x in (0, 1, 2))


def test_branch_preconditions():
    inst = Instance(edgeless(5), Pattern(complete(1)), [[1]] * 5)
    with pytest.raises(ValueError):
        branch_simplified(inst, 3, 2)
    zero = Instance(path(5), Pattern(complete(1)), [[0]] * 5)
    with pytest.raises(ValueError):
        list(branch_full(zero, 3, 2))
    p7 = Instance(path(7), Pattern(complete(2)), [[1, 1]] * 7)
    with pytest.raises(ClassViolation):
        branch_simplified(p7, 3, 2, check_class=True)
    with pytest.raises(GuessCapExceeded):
        _, stream = branch_simplified(Instance(cycle(5), Pattern(complete(2)), [[1, 1]] * 5), 3, 2, prune=False, cap=3)
        list(stream)


@pytest.mark.parametrize("prune", [True, False])
def test_branch_simplified_completeness_and_soundness(prune):
    for inst in corpus(12 if prune else 6, 7, n_range=(5, 7) if not prune else (5, 9)):
        opt = oracle_solve(inst)[0]
        g2, stream = branch_simplified(inst, 3, 2, prune=prune)
        x = [v for v in range(inst.n) if not g2.neighbors(v)]
        best = -1.0
        for rev2 in stream:
            sub = Instance(g2, inst.pattern, rev2)
            val, phi = oracle_solve(sub)
            best = max(best, val)
            assert is_valid(inst, phi) and revenue(inst, phi) == val
        assert best == opt
        assert len(x) >= 3
        if inst.host.m:
            assert clique_number(g2) < clique_number(inst.host)


@pytest.mark.parametrize("prune", [True, False])
def test_branch_full_sum_identity(prune):
    for inst in corpus(10 if prune else 4, 11, n_range=(5, 8) if prune else (5, 6)):
        if not inst.has_positive():
            continue
        opt = oracle_solve(inst)[0]
        best = -1.0
        for pair in branch_full(inst, 3, 2, prune=prune):
            assert pair.inst1.k == inst.k - 1
            assert set(pair.vertices1).isdisjoint(pair.vertices2)
            assert set(pair.vertices1) | set(pair.vertices2) == set(range(inst.n))
            v1, phi1 = oracle_solve(pair.inst1)
            v2, phi2 = oracle_solve(pair.inst2)
            phi = pair.lift(phi1, phi2)
            assert is_valid(inst, phi) and revenue(inst, phi) == v1 + v2
            best = max(best, v1 + v2)
        assert best == opt


def test_branch_full_univ_ante_property():
    # holds for connected F; the isolated base vertices of G2 break it for e.g. 2K1
    fs = [path(3), complete(2), path(4), complete(3), cycle(4)]
    for inst in corpus(15, 3, n_range=(6, 9), low=1):
        g = inst.host
        big = {id(f): (contains_induced(g, univ(f)) is not None, contains_induced(g, ante(f)) is not None) for f in fs}
        for pair in branch_full(inst, 3, 2):
            for f in fs:
                if contains_induced(pair.inst1.host, f) is not None:
                    assert big[id(f)][0]
                if contains_induced(pair.inst2.host, f) is not None:
                    assert big[id(f)][1]
            break
