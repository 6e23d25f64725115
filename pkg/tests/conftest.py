import math

import mpmath
import numpy as np
import pytest

from pairtransfer import Graph, PairState, Perturbation, laplacian
from pairtransfer import families

HALF_PI = math.pi / 2

# figure labels for K_{2,4}: hubs a, b -> 0, 1; leaves 1..4 -> 2..5
A, B = 0, 1


def leaf(i: int) -> int:
    return i + 1


def taylor_expm(L: np.ndarray, t: float, tol: float = 1e-10) -> np.ndarray:
    """exp(-i t L) by a truncated power series in extended precision.

    The number of terms is chosen so that ||tL||^(K+1)/(K+1)! < tol, using
    the max-row-sum norm (an upper bound on the spectral norm here).
    """
    n = L.shape[0]
    norm = abs(t) * float(np.max(np.sum(np.abs(L), axis=1))) if n else 0.0
    K = 0
    bound = norm
    while bound >= tol:
        K += 1
        bound = bound * norm / (K + 1)
    with mpmath.workdps(30 + int(norm / 2.3) + 10):
        X = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                X[i, j] = mpmath.mpc(0, -t) * mpmath.mpf(float(L[i, j]))
        term = mpmath.eye(n)
        total = mpmath.eye(n)
        for k in range(1, K + 1):
            term = term * X / k
            total = total + term
        return np.array([[complex(total[i, j]) for j in range(n)] for i in range(n)])


def twins_brute(g: Graph, a: int, b: int) -> bool:
    W = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        W[u, v] = W[v, u] = w
    keep = [v for v in range(g.n) if v not in (a, b)]
    return bool(np.array_equal(W[a, keep], W[b, keep]))


def random_graph(rng: np.random.Generator, n: int, density: float = 0.5) -> Graph:
    weights = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                # dyadic weights keep arithmetic exact
                weights[(u, v)] = float(rng.integers(1, 9)) / 4
    return Graph(n, weights)


def random_twin_graph(rng: np.random.Generator, n: int) -> tuple[Graph, int, int]:
    """A random weighted graph in which two random vertices are twins."""
    g = random_graph(rng, n)
    a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
    weights = {(u, v): w for u, v, w in g.edges if b not in (u, v)}
    for v in range(n):
        if v in (a, b):
            continue
        w = g.weight(a, v)
        if w:
            weights[(min(b, v), max(b, v))] = w
    if rng.random() < 0.5:
        weights[(min(a, b), max(a, b))] = float(rng.integers(1, 9)) / 4
    return Graph(n, weights), a, b


@pytest.fixture
def rng():
    return np.random.default_rng(20221)


@pytest.fixture
def k24():
    return families.complete_bipartite(2, 4)


@pytest.fixture
def cay8():
    return families.circulant(8, {1, 3, 4, 5, 7})


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
