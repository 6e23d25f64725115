"""Weighted undirected graphs, Laplacians, twin vertices and edge perturbations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .errors import GraphError, PreconditionError


class Graph:
    """Immutable weighted simple graph on vertices ``0..n-1``.

    Edge weights are stored per unordered pair ``(u, v)`` with ``u < v``.
    A weight of exactly zero means the edge is absent, so it is never stored.
    """

    __slots__ = ("_n", "_weights")

    def __init__(self, n: int, weights: Mapping[tuple[int, int], float] | None = None):
        if int(n) != n or n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {n!r}")
        n = int(n)
        canon: dict[tuple[int, int], float] = {}
        for (u, v), w in (weights or {}).items():
            key = _edge_key(n, u, v)
            if key in canon:
                raise GraphError(f"duplicate edge {key}")
            w = float(w)
            if not np.isfinite(w):
                raise GraphError(f"non-finite weight on edge {key}")
            if w != 0.0:
                canon[key] = w
        self._n = n
        self._weights = canon

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` items; ``w`` defaults to 1."""
        weights: dict[tuple[int, int], float] = {}
        for item in edges:
            if len(item) == 2:
                u, v = item
                w = 1.0
            elif len(item) == 3:
                u, v, w = item
            else:
                raise GraphError(f"edge must be [u, v] or [u, v, w], got {item!r}")
            key = _edge_key(n, u, v)
            if key in weights:
                raise GraphError(f"duplicate edge {key}")
            weights[key] = w
        return cls(n, weights)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        """Sorted ``(u, v, w)`` triples with ``u < v``."""
        return [(u, v, w) for (u, v), w in sorted(self._weights.items())]

    def weight(self, u: int, v: int) -> float:
        if u == v:
            return 0.0
        return self._weights.get(_edge_key(self._n, u, v), 0.0)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._weights == other._weights

    def __hash__(self):
        return hash((self._n, tuple(sorted(self._weights.items()))))

    def __repr__(self):
        return f"Graph(n={self._n}, edges={len(self._weights)})"


def _edge_key(n: int, u, v) -> tuple[int, int]:
    if int(u) != u or int(v) != v:
        raise GraphError(f"vertex labels must be integers, got ({u!r}, {v!r})")
    u, v = int(u), int(v)
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class PairState:
    """The vector ``e_a - e_b``.

    Equality and hashing ignore orientation; the stored orientation only
    matters for the sign of a reported phase.
    """

    a: int
    b: int

    def __post_init__(self):
        if int(self.a) != self.a or int(self.b) != self.b:
            raise PreconditionError(f"pair vertices must be integers: ({self.a!r}, {self.b!r})")
        if self.a == self.b:
            raise PreconditionError(f"pair state needs two distinct vertices, got ({self.a}, {self.b})")
        if self.a < 0 or self.b < 0:
            raise PreconditionError(f"negative vertex in pair ({self.a}, {self.b})")

    def canonical(self) -> "PairState":
        return self if self.a < self.b else PairState(self.b, self.a)

    def key(self) -> tuple[int, int]:
        return (min(self.a, self.b), max(self.a, self.b))

    def vertices(self) -> frozenset[int]:
        return frozenset((self.a, self.b))

    def vector(self, n: int) -> np.ndarray:
        check_pair(self, n)
        x = np.zeros(n)
        x[self.a] = 1.0
        x[self.b] = -1.0
        return x

    def __eq__(self, other):
        if not isinstance(other, PairState):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __iter__(self):
        yield self.a
        yield self.b


def check_pair(pair: PairState, n: int) -> None:
    if pair.a >= n or pair.b >= n:
        raise PreconditionError(f"pair ({pair.a}, {pair.b}) out of range for n={n}")


@dataclass(frozen=True)
class Perturbation:
    """Add ``alpha`` to the weight of the edge ``pair``."""

    pair: PairState
    alpha: float

    @property
    def a(self) -> int:
        return self.pair.a

    @property
    def b(self) -> int:
        return self.pair.b

    def rank_one(self, n: int) -> np.ndarray:
        """Dense ``M = (e_a - e_b)(e_a - e_b)^T``; only needed for checks."""
        x = self.pair.vector(n)
        return np.outer(x, x)


def laplacian(g: Graph) -> np.ndarray:
    L = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        L[u, v] -= w
        L[v, u] -= w
        L[u, u] += w
        L[v, v] += w
    return L


def neighbors(g: Graph, v: int) -> dict[int, float]:
    if int(v) != v or not 0 <= v < g.n:
        raise GraphError(f"vertex {v!r} out of range for n={g.n}")
    out = {}
    for x, y, w in g.edges:
        if x == v:
            out[y] = w
        elif y == v:
            out[x] = w
    return out


def degree(g: Graph, v: int) -> float:
    return sum(neighbors(g, v).values())


def are_twins(g: Graph, a: int, b: int) -> bool:
    """True when ``a`` and ``b`` see every other vertex with identical weight.

    The weight of the edge between ``a`` and ``b`` themselves is ignored.
    Comparison is exact: generated weights are small binary fractions.
    """
    if a == b:
        raise PreconditionError(f"twin test needs two distinct vertices, got {a}")
    na, nb = neighbors(g, a), neighbors(g, b)
    na.pop(b, None)
    nb.pop(a, None)
    return na == nb


def all_twin_pairs(g: Graph) -> list[PairState]:
    return [PairState(a, b) for a, b in combinations(range(g.n), 2) if are_twins(g, a, b)]


def perturb(g: Graph, p: Perturbation) -> Graph:
    """Return ``G + alpha{a, b}``; a resulting zero weight deletes the edge."""
    check_pair(p.pair, g.n)
    weights = {(u, v): w for u, v, w in g.edges}
    key = p.pair.key()
    weights[key] = weights.get(key, 0.0) + float(p.alpha)
    return Graph(g.n, weights)
