"""Shared oracles and strategies.

Oracles here are independent of the package's own solvers: LAPACK via
numpy.linalg for spectra, brute force for max-cut and isomorphism.
"""

from itertools import permutations

import numpy as np
import pytest
from hypothesis import strategies as st

from qlap.graph import Graph, make_graph


def lapack_spectrum(g: Graph, kind: str) -> np.ndarray:
    a = g.adjacency_matrix().astype(float)
    d = np.diag(a.sum(axis=1))
    m = {"A": a, "L": d - a, "Q": d + a}[kind]
    return np.sort(np.linalg.eigvalsh(m))[::-1]


def lapack_qmin(g: Graph) -> float:
    return float(lapack_spectrum(g, "Q")[-1]) if g.n else 0.0


def brute_max_cut(g: Graph) -> int:
    edges = g.edges()
    best = 0
    for mask in range(1 << g.n):
        best = max(best, sum(((mask >> u) ^ (mask >> v)) & 1 for u, v in edges))
    return best


def isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism for small graphs."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    assert g.n <= 10
    target = set(h.edges())
    for perm in permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in g.edges()):
            return True
    return False


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> Graph:
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return make_graph(n, [p for p, b in zip(pairs, bits) if b])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# -- acceptance reporting ----------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
