"""Seeded random graphs, patterns and instances for test corpora.

All randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with one integer, so a seed fixes the output.
"""

from __future__ import annotations

import random

from .graph import Graph, is_connected
from .model import Instance, Pattern
from .recognition import find_forbidden, recognize


class SamplingError(RuntimeError):
    """Sampling budget exhausted."""


def _rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _permuted(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def _random_cograph(n: int, rng: random.Random) -> Graph:
    edges: list[tuple[int, int]] = []

    def build(vs: list[int], join: bool) -> None:
        if len(vs) == 1:
            return
        cut = sorted(rng.sample(range(1, len(vs)), rng.randint(1, min(3, len(vs) - 1))))
        groups = [vs[a:b] for a, b in zip([0] + cut, cut + [len(vs)])]
        if join:
            for i, g1 in enumerate(groups):
                for g2 in groups[i + 1 :]:
                    edges.extend((u, v) for u in g1 for v in g2)
        for grp in groups:
            build(grp, not join)

    build(list(range(n)), rng.random() < 0.5)
    return Graph.from_edges(n, edges)


def _random_split(n: int, density: float, rng: random.Random) -> Graph:
    k = rng.randint(0, n)
    clique, indep = range(k), range(k, n)
    edges = [(u, v) for u in clique for v in clique if u < v]
    edges += [(u, v) for u in clique for v in indep if rng.random() < density]
    return Graph.from_edges(n, edges)


def _random_cobipartite(n: int, density: float, rng: random.Random) -> Graph:
    k = rng.randint(0, n)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if (u < k) == (v < k)]
    edges += [(u, v) for u in range(k) for v in range(k, n) if rng.random() < density]
    return Graph.from_edges(n, edges)


def _random_threshold(n: int, density: float, rng: random.Random) -> Graph:
    edges = []
    for v in range(1, n):
        if rng.random() < density:
            edges += [(u, v) for u in range(v)]
    return Graph.from_edges(n, edges)


def _random_gnp(n: int, density: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density])


def _incremental(n: int, cls: str, density: float, connected: bool, rng: random.Random, budget: int) -> Graph:
    # add vertices one by one, rejecting neighbourhoods that create a forbidden subgraph
    adj = [0] * n
    for v in range(n):
        for attempt in range(budget):
            p = density * (1 - attempt / budget)
            nbrs = [u for u in range(v) if rng.random() < p]
            if connected and v and not nbrs:
                nbrs = [rng.randrange(v)]
            trial = adj[:v] + [0]
            for u in nbrs:
                trial[u] |= 1 << v
                trial[v] |= 1 << u
            g = Graph.from_masks(trial)
            if find_forbidden(g, cls, must_include=v) is None:
                adj[: v + 1] = trial
                break
        else:
            raise SamplingError(f"could not extend a {cls} graph past {v} vertices")
    return Graph.from_masks(adj)


def sample_in_class(
    cls: str,
    n: int,
    density: float = 0.5,
    seed: int | random.Random = 0,
    connected: bool = False,
    budget: int = 200,
) -> Graph:
    """A random ``n``-vertex graph of the named class.

    Cographs come from random cotrees, split, cobipartite and threshold graphs
    from random partitions; forbidden-subgraph classes grow vertex by vertex
    with rejection. Conjunctions (``&``) of forbidden-subgraph classes are
    merged; any other conjunction falls back to whole-graph rejection.
    """
    rng = _rng(seed)
    if n < 0 or not 0 <= density <= 1:
        raise ValueError("need n >= 0 and density in [0, 1]")
    if n == 0:
        return Graph.from_edges(0, [])
    parts = cls.split("&")
    if all(p.endswith("-free") for p in parts):
        merged = ",".join(p[: -len("-free")] for p in parts) + "-free"
        return _permuted(_incremental(n, merged, density, connected, rng, budget), rng)
    for _ in range(budget):
        g = _direct(parts[0], n, density, rng)
        if (not connected or is_connected(g)) and recognize(g, cls):
            return _permuted(g, rng)
    raise SamplingError(f"no {'connected ' if connected else ''}{cls} graph on {n} vertices within budget")


def _direct(cls: str, n: int, density: float, rng: random.Random) -> Graph:
    if cls == "cograph":
        return _random_cograph(n, rng)
    if cls == "split":
        return _random_split(n, density, rng)
    if cls == "cobipartite":
        return _random_cobipartite(n, density, rng)
    if cls == "threshold":
        return _random_threshold(n, density, rng)
    return _random_gnp(n, density, rng)


def random_pattern(k: int, seed: int | random.Random = 0, density: float = 0.6) -> Pattern:
    """Random irreflexive pattern on ``k`` colours."""
    rng = _rng(seed)
    return Pattern(_random_gnp(k, density, rng))


def random_revenue(n: int, k: int, seed: int | random.Random = 0, low: int = -2, high: int = 3):
    rng = _rng(seed)
    return tuple(tuple(float(rng.randint(low, high)) for _ in range(k)) for _ in range(n))


def random_instance(
    cls: str,
    n: int,
    k: int,
    seed: int | random.Random = 0,
    density: float = 0.5,
    connected: bool = False,
    low: int = -2,
    high: int = 3,
) -> Instance:
    """Host from :func:`sample_in_class`, random pattern and integer revenues."""
    rng = _rng(seed)
    g = sample_in_class(cls, n, density, rng, connected)
    return Instance(g, random_pattern(k, rng), random_revenue(n, k, rng, low, high))
