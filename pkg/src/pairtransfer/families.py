"""Graph families used in the constructions.

Labeling: in ``complete_bipartite(m, n)`` the first part is ``0..m-1`` and
the second ``m..m+n-1``. For ``K_{2,4n}`` the two hubs ``a, b`` are ``0, 1``
and the leaves ``1..4n`` are ``2..4n+1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import GraphError
from .graph import Graph, PairState, Perturbation, perturb

FAMILY_TAGS = ("complete", "complete-bipartite", "cycle", "path", "circulant", "kn-minus-matching")


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise GraphError(f"complete bipartite graph needs m, n >= 1, got ({m}, {n})")
    return Graph.from_edges(m + n, ((u, m + v) for u in range(m) for v in range(n)))


def circulant(n: int, connection_set) -> Graph:
    """Cayley graph of ``Z_n``: ``u ~ u + s (mod n)`` for ``s`` in the set."""
    S = {int(s) % n for s in connection_set} if n else set()
    if n < 1:
        raise GraphError(f"circulant needs n >= 1, got {n}")
    if 0 in S:
        raise GraphError("connection set must not contain 0")
    if any((n - s) % n not in S for s in S):
        raise GraphError(f"connection set {sorted(S)} is not closed under negation mod {n}")
    edges = {tuple(sorted((u, (u + s) % n))) for u in range(n) for s in S}
    return Graph.from_edges(n, sorted(edges))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return circulant(n, {1, n - 1})


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def kn_minus_matching(n: int, matching) -> Graph:
    g = complete_graph(n)
    used: set[int] = set()
    for a, b in matching:
        if {a, b} & used:
            raise GraphError("matching edges must be pairwise disjoint")
        used |= {a, b}
        g = perturb(g, Perturbation(PairState(a, b), -1.0))
    return g


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    parameters: tuple[int, ...] = ()
    connection_set: frozenset[int] = field(default_factory=frozenset)
    matching: tuple[tuple[int, int], ...] = ()

    def build(self) -> Graph:
        tag, p = self.tag, self.parameters
        arity = {"complete": 1, "complete-bipartite": 2, "cycle": 1, "path": 1, "circulant": 1,
                 "kn-minus-matching": 1}
        if tag not in arity:
            raise GraphError(f"unknown family {tag!r}; choose from {', '.join(FAMILY_TAGS)}")
        if len(p) != arity[tag]:
            raise GraphError(f"family {tag!r} takes {arity[tag]} integer parameter(s), got {len(p)}")
        if tag == "complete":
            return complete_graph(*p)
        if tag == "complete-bipartite":
            return complete_bipartite(*p)
        if tag == "cycle":
            return cycle(*p)
        if tag == "path":
            return path(*p)
        if tag == "circulant":
            return circulant(p[0], self.connection_set)
        return kn_minus_matching(p[0], self.matching)
