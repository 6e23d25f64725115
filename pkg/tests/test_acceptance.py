"""Acceptance criteria, one test per criterion.

Each criterion prints a PASS/FAIL line; the lines are also collected into the
pytest terminal summary. Run standalone with ``python tests/test_acceptance.py``.
"""

import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from pairtransfer import (  # noqa: E402
    PairState,
    Perturbation,
    SearchConfig,
    apply_lpst_preservation,
    apply_pgst_preservation,
    check_no_lpst_twin_pair,
    check_pair_lpst,
    construct_kn_minus_edge,
    construct_kn_minus_matching,
    decompose_graph,
    evolve,
    laplacian,
    pair_fidelity,
    perturb,
    search_pgst,
    verify_lemma1,
)
from pairtransfer import families  # noqa: E402
from pairtransfer.spectral import lemma1_residual, transition_matrix  # noqa: E402

import conftest  # noqa: E402
from conftest import A, B, HALF_PI, leaf, random_graph, random_twin_graph, taylor_expm  # noqa: E402

SEED = 7321


def k24():
    return families.complete_bipartite(2, 4)


def cay8():
    return families.circulant(8, {1, 3, 4, 5, 7})


def criterion_1():
    g = k24()
    details = []
    ok = True
    for i in range(1, 5):
        cert = check_pair_lpst(g, PairState(A, leaf(i)), PairState(B, leaf(i)), HALF_PI)
        phase_ok = cert.phase is not None and abs(cert.phase + 1) <= 1e-9
        ok &= cert.fidelity >= 1 - 1e-9 and phase_ok
        details.append(f"i={i} f={cert.fidelity:.15f}")
    return ok, "; ".join(details)


def criterion_2():
    g = k24()
    ok = True
    for i in range(1, 5):
        known = check_pair_lpst(g, PairState(A, leaf(i)), PairState(B, leaf(i)), HALF_PI)
        _, cert = apply_lpst_preservation(g, Perturbation(PairState(A, B), 2.0), known)
        ok &= cert.fidelity >= 1 - 1e-9
    h = perturb(g, Perturbation(PairState(A, B), 1.0))
    drop = check_pair_lpst(h, PairState(A, leaf(1)), PairState(B, leaf(1)), HALF_PI).fidelity
    ok &= drop < 1 - 1e-3
    return ok, f"alpha=2 preserved 4 transfers; alpha=1 control fidelity={drop:.6f}"


def criterion_3():
    h = perturb(k24(), Perturbation(PairState(leaf(1), leaf(2)), 1.0))
    fids = [
        check_pair_lpst(h, PairState(A, leaf(i)), PairState(B, leaf(i)), HALF_PI).fidelity
        for i in (3, 4)
    ]
    return all(f >= 1 - 1e-9 for f in fids), f"fidelities {fids}"


def criterion_4():
    worst = 1.0
    for n in range(3, 11):
        g = perturb(families.complete_graph(n), Perturbation(PairState(0, 1), -1.0))
        for q in range(2, n):
            worst = min(worst, check_pair_lpst(g, PairState(0, q), PairState(1, q), HALF_PI).fidelity)
        _, certs = construct_kn_minus_edge(n, 0, 1)
        worst = min(worst, *(c.fidelity for c in certs))
    return worst >= 1 - 1e-9, f"min fidelity over n=3..10: {worst:.15f}"


def criterion_5():
    matching = [PairState(0, 1), PairState(2, 3), PairState(4, 5), PairState(6, 7)]
    _, certs = construct_kn_minus_matching(8, matching, PairState(0, 1))
    fids = [c.fidelity for c in certs]
    ok = len(certs) == 6 and all(f >= 1 - 1e-9 for f in fids)
    return ok, "fidelities " + ", ".join(f"{f:.6f}" for f in fids)


def criterion_6():
    cfg = SearchConfig(horizon=10, epsilon=0.01)
    src, dst = PairState(0, 1), PairState(4, 5)
    g = cay8()
    certs = [search_pgst(g, src, dst, cfg)]
    for pair in (PairState(2, 6), PairState(3, 7)):
        g, cert = apply_pgst_preservation(g, Perturbation(pair, -1.0), src, dst, cfg)
        certs.append(cert)
    ok = all(c.verdict and abs(c.time - HALF_PI) <= 1e-3 and c.fidelity >= 1 - 1e-6 for c in certs)
    return ok, "; ".join(f"t*={c.time:.9f} f={c.fidelity:.12f}" for c in certs)


def criterion_7():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 11))
        g, a, b = random_twin_graph(rng, n)
        alpha = float(rng.uniform(-3, 3))
        t = float(rng.uniform(0, 10))
        residual, _ = verify_lemma1(g, Perturbation(PairState(a, b), alpha), t)
        worst = max(worst, residual)
    control = lemma1_residual(k24(), Perturbation(PairState(A, leaf(1)), 1.5), 2.0)
    return worst <= 1e-9 and control > 1e-3, f"max twin residual {worst:.3e}; non-twin residual {control:.3f}"


def criterion_8():
    rng = np.random.default_rng(SEED)
    n, a, b, q, r = 8, 2, 5, 0, 7
    M = Perturbation(PairState(a, b), 1.0).rank_one(n)
    e = np.eye(n)
    ab = e[a] - e[b]
    exact = (
        np.array_equal(M @ ab, 2 * ab)
        and np.array_equal(M @ (e[a] - e[q]), ab)
        and np.array_equal(M @ (e[b] - e[q]), -ab)
        and np.array_equal(M @ (e[q] - e[r]), np.zeros(n))
    )
    worst = 0.0
    for _ in range(30):
        m = int(rng.integers(3, 10))
        g, x, y = random_twin_graph(rng, m)
        alpha = float(rng.uniform(-3, 3))
        t = float(rng.uniform(0, 10))
        p = Perturbation(PairState(x, y), alpha)
        v = p.pair.vector(m)
        lhs = evolve(decompose_graph(perturb(g, p)), t, v)
        rhs = np.exp(-2j * alpha * t) * evolve(decompose_graph(g), t, v)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return exact and worst <= 1e-9, f"rank-one identities exact={exact}; max phase-factor gap {worst:.3e}"


def criterion_9():
    rng = np.random.default_rng(SEED)
    small = [
        families.complete_graph(2),
        families.complete_graph(3),
        families.complete_graph(4),
        families.complete_graph(5),
        families.complete_graph(6),
        families.complete_bipartite(2, 4),
        perturb(families.complete_bipartite(2, 4), Perturbation(PairState(A, B), 2.0)),
        perturb(families.complete_bipartite(2, 4), Perturbation(PairState(A, B), 1.0)),
        perturb(families.complete_bipartite(2, 4), Perturbation(PairState(leaf(1), leaf(2)), 1.0)),
        perturb(families.complete_graph(6), Perturbation(PairState(0, 1), -1.0)),
    ]
    worst = {"unitarity": 0.0, "group": 0.0, "symmetry": 0.0, "taylor": 0.0}
    in_range = True
    for g in small + [random_graph(rng, int(rng.integers(2, 9))) for _ in range(10)]:
        n = g.n
        d = decompose_graph(g)
        for _ in range(5):
            s, t = rng.uniform(0, 20, size=2)
            x = rng.normal(size=n) + 1j * rng.normal(size=n)
            y = evolve(d, t, x)
            worst["unitarity"] = max(worst["unitarity"], abs(np.linalg.norm(y) - np.linalg.norm(x)) / np.linalg.norm(x))
            worst["group"] = max(worst["group"], float(np.max(np.abs(evolve(d, s, y) - evolve(d, s + t, x)))))
            p, q = (PairState(*map(int, rng.choice(n, 2, replace=False))) for _ in range(2))
            f1, _ = pair_fidelity(d, t, p, q)
            f2, _ = pair_fidelity(d, t, q, p)
            in_range &= 0 <= f1 <= 1
            worst["symmetry"] = max(worst["symmetry"], abs(f1 - f2))
    for g in small:
        for t in (0.4, HALF_PI, 3.0):
            U = transition_matrix(decompose_graph(g), t)
            worst["taylor"] = max(worst["taylor"], float(np.max(np.abs(U - taylor_expm(laplacian(g), t)))))
    ok = (
        worst["unitarity"] <= 1e-9
        and worst["group"] <= 1e-9
        and worst["symmetry"] <= 1e-12
        and worst["taylor"] <= 1e-8
        and in_range
    )
    return ok, ", ".join(f"{k}={v:.2e}" for k, v in worst.items())


def criterion_10():
    best, ok = check_no_lpst_twin_pair(k24(), Perturbation(PairState(A, B), 2.0), HALF_PI, margin=1e-6)
    return ok and best <= 1 - 1e-6, f"max fidelity from twin pair {best:.6f}"


def criterion_11():
    rng = np.random.default_rng(SEED)
    d = decompose_graph(families.complete_graph(5))
    worst = max(abs(1 - pair_fidelity(d, t, PairState(0, 1), PairState(0, 1))[0]) for t in rng.uniform(0, 20, 10))
    return worst <= 1e-9, f"max deviation {worst:.2e}"


CRITERIA = [
    (1, "K_{2,4} transfer {a,i}->{b,i} at pi/2, phase -1", criterion_1),
    (2, "K_{2,4}+2{a,b} preserves transfer; alpha=1 control drops", criterion_2),
    (3, "K_{2,4}+{1,2} transfer for i=3,4", criterion_3),
    (4, "K_n-{0,1} transfer for n=3..10", criterion_4),
    (5, "K_8 minus perfect matching, 6 certificates", criterion_5),
    (6, "Cay(Z_8) pretty good transfer chain", criterion_6),
    (7, "twin factorization residuals and negative control", criterion_7),
    (8, "rank-one identities and phase factor", criterion_8),
    (9, "numerical core: unitarity, group law, range, symmetry, Taylor oracle", criterion_9),
    (10, "no transfer from the twin pair in K_{2,4}+2{a,b}", criterion_10),
    (11, "K_5 edge state periodic at random times", criterion_11),
]


def _run(number, title, func):
    ok, detail = func()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    print(line)
    return ok, line


@pytest.mark.parametrize("number,title,func", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, func):
    ok, line = _run(number, title, func)
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [_run(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
