"""Vectorised enumeration of all labeled graphs on a few vertices.

A graph on ``n`` vertices is coded as an integer whose bit ``k`` is the
``k``-th pair of ``itertools.combinations(range(n), 2)``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import SizeError
from .graph import Graph

MAX_ENUM_N = 7


@lru_cache(maxsize=None)
def edge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


def graph_from_code(n: int, code: int) -> Graph:
    adj = [0] * n
    for k, (u, v) in enumerate(edge_pairs(n)):
        if code >> k & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def code_of(g: Graph) -> int:
    return sum(1 << k for k, (u, v) in enumerate(edge_pairs(g.n)) if g.has_edge(u, v))


def all_codes(n: int) -> np.ndarray:
    if n > MAX_ENUM_N:
        raise SizeError(f"labeled enumeration is limited to n <= {MAX_ENUM_N}")
    return np.arange(1 << len(edge_pairs(n)), dtype=np.int64)


def _subset_mask(n: int, vertices: tuple[int, ...]) -> int:
    index = {p: k for k, p in enumerate(edge_pairs(n))}
    return sum(1 << index[p] for p in combinations(vertices, 2))


def k_free_mask(codes: np.ndarray, n: int, k: int) -> np.ndarray:
    """Boolean mask of codes whose graph contains no ``K_k``."""
    keep = np.ones(codes.shape, dtype=bool)
    if k > n:
        return keep
    for vs in combinations(range(n), k):
        m = _subset_mask(n, vs)
        keep &= (codes & m) != m
    return keep


def degree_matrix(codes: np.ndarray, n: int) -> np.ndarray:
    """Degrees, shape ``(len(codes), n)``."""
    out = np.zeros((codes.shape[0], n), dtype=np.int64)
    for v in range(n):
        m = sum(1 << k for k, p in enumerate(edge_pairs(n)) if v in p)
        out[:, v] = np.bitwise_count(codes & m)
    return out


def adjacency_stack(codes: np.ndarray, n: int) -> np.ndarray:
    adj = np.zeros((codes.shape[0], n, n), dtype=np.int64)
    for k, (u, v) in enumerate(edge_pairs(n)):
        bit = (codes >> k) & 1
        adj[:, u, v] = bit
        adj[:, v, u] = bit
    return adj


def edge_counts(codes: np.ndarray) -> np.ndarray:
    return np.bitwise_count(codes).astype(np.int64)


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    for code in range(1 << len(edge_pairs(n))):
        yield graph_from_code(n, code)
