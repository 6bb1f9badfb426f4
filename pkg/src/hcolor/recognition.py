"""Membership tests for the hereditary graph classes used by the solvers.

A class is named by a string. ``"<F1>,<F2>,...-free"`` lists forbidden
induced subgraphs by short name (``P5``, ``C5``, ``bull``, ``2K2``, ``Q3``,
...); the remaining names are ``threshold``, ``split``, ``cograph``,
``cobipartite``, ``prime`` and ``arbitrary``. Class names may be joined with
``&``, e.g. ``"prime&P5,bull-free"``.
"""

from __future__ import annotations

from functools import lru_cache

from .decomposition import is_prime
from .graph import Graph, bits, contains_induced
from .named import parse_named


class ClassViolation(ValueError):
    """Input graph is outside the class a solver requires."""


class StructureViolation(ClassViolation):
    """A subinstance lacks the structure guaranteed for the promised class."""


@lru_cache(maxsize=None)
def forbidden_list(cls: str) -> tuple[Graph, ...] | None:
    """Forbidden induced subgraphs for a ``...-free`` class name, else ``None``."""
    if cls == "threshold":
        return tuple(parse_named(x) for x in ("2K2", "C4", "P4"))
    if cls == "cograph":
        return (parse_named("P4"),)
    if cls.endswith("-free"):
        return tuple(parse_named(x) for x in cls[: -len("-free")].split(","))
    return None


def find_forbidden(g: Graph, cls: str, must_include: int | None = None) -> tuple[Graph, frozenset[int]] | None:
    """A forbidden subgraph of ``cls`` present in ``g`` and its witness set."""
    for f in forbidden_list(cls) or ():
        w = contains_induced(g, f, must_include)
        if w is not None:
            return f, w
    return None


def split_partition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Partition of ``V(g)`` into a clique and an independent set, if one exists.

    The candidate clique is the ``m`` highest-degree vertices with ``m`` the
    largest index such that ``d_m >= m - 1`` (Hammer and Simeone); if that
    candidate fails, no split partition exists.
    """
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    m = 0
    for i, v in enumerate(order, start=1):
        if g.degree(v) >= i - 1:
            m = i
    clique, rest = frozenset(order[:m]), frozenset(order[m:])
    if g.is_clique(clique) and g.is_independent(rest):
        return clique, rest
    return None


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-colouring of ``g`` or ``None`` if it has an odd cycle."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in bits(g.adj[u]):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return (
        frozenset(v for v in range(g.n) if side[v] == 0),
        frozenset(v for v in range(g.n) if side[v] == 1),
    )


def recognize(g: Graph, cls: str) -> bool:
    """Whether ``g`` belongs to the named class (see the module docstring)."""
    if "&" in cls:
        return all(recognize(g, part) for part in cls.split("&"))
    if cls == "arbitrary":
        return True
    if cls == "split":
        return split_partition(g) is not None
    if cls == "cobipartite":
        return bipartition(g.complement()) is not None
    if cls == "prime":
        return is_prime(g)
    if forbidden_list(cls) is None:
        raise ValueError(f"unknown graph class {cls!r}")
    return find_forbidden(g, cls) is None
