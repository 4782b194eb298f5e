"""Undirected simple graphs stored as per-vertex bitsets, plus constructions.

Vertices are the integers ``0..n-1``; ``adj[u]`` is a Python int whose bit
``v`` is set iff ``u ~ v``.  Graphs are immutable and hashable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import ConstructionError, ParameterError, SizeError

HARD_MAX_ORDER = 1000


def max_order() -> int:
    """Largest graph order accepted by constructions.

    ``QLAP_MAX_N`` in the environment may lower the cap, never raise it.
    """
    raw = os.environ.get("QLAP_MAX_N")
    if raw is None:
        return HARD_MAX_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"QLAP_MAX_N must be an integer, got {raw!r}") from None
    return max(1, min(HARD_MAX_ORDER, value))


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ConstructionError("graph order must be positive", "n")
        if self.n > max_order():
            raise SizeError(f"order {self.n} exceeds the cap of {max_order()} vertices")
        if len(self.adj) != self.n:
            raise ConstructionError("adjacency length differs from order", "adj")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ConstructionError(f"vertex {u} has a neighbour outside [0, {self.n})", u)
            if row >> u & 1:
                raise ConstructionError(f"loop at vertex {u}", u)
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise ConstructionError(f"asymmetric pair ({u}, {v})", u)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    def is_regular(self) -> bool:
        return len(set(self.degrees)) == 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.adj[u]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            out.extend((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, row in enumerate(self.adj):
            a[u, list(iter_bits(row))] = 1
        return a

    def toggle(self, u: int, v: int) -> Graph:
        """Return a copy with the pair ``{u, v}`` flipped between edge and non-edge."""
        if u == v:
            raise ConstructionError("cannot toggle a loop", u)
        adj = list(self.adj)
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        return Graph(self.n, tuple(adj))


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices; duplicate edges collapse."""
    if n < 1:
        raise ConstructionError("graph order must be positive", "n")
    adj = [0] * n
    for k, (u, v) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise ConstructionError(f"edge ({u}, {v}) has an endpoint outside [0, {n})", f"edge {k}")
        if u == v:
            raise ConstructionError(f"loop ({u}, {v})", f"edge {k}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def _positive(name: str, value: int, minimum: int = 1) -> None:
    if value < minimum:
        raise ParameterError(f"{name} must be >= {minimum}, got {value}")


def complete_graph(n: int) -> Graph:
    _positive("n", n)
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << u) for u in range(n)))


def empty_graph(n: int) -> Graph:
    _positive("n", n)
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    _positive("n", n)
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    _positive("n", n, 3)
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return make_graph(10, outer + inner + spokes)


def turan_part_sizes(n: int, r: int) -> list[int]:
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


def turan_graph(n: int, r: int) -> Graph:
    """Complete ``r``-partite graph on ``n`` vertices with balanced parts.

    Parts occupy contiguous vertex ranges, larger parts first.
    """
    if not 1 <= r <= n:
        raise ParameterError(f"turan_graph needs 1 <= r <= n, got n={n}, r={r}")
    full = (1 << n) - 1
    adj = []
    start = 0
    for size in turan_part_sizes(n, r):
        part = ((1 << size) - 1) << start
        adj.extend([full ^ part] * size)
        start += size
    return Graph(n, tuple(adj))


def blowup(g: Graph, t: int) -> Graph:
    """Replace each vertex by ``t`` independent copies; copy ``i`` of ``u`` is ``u + i*n``."""
    if t < 1:
        raise ParameterError(f"blowup multiplicity must be >= 1, got {t}")
    n = g.n
    if n * t > max_order():
        raise SizeError(f"blowup order {n * t} exceeds the cap of {max_order()} vertices")
    rows = []
    for row in g.adj:
        rep = 0
        for i in range(t):
            rep |= row << (i * n)
        rows.append(rep)
    return Graph(n * t, tuple(rows) * t)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << u) for u, row in enumerate(g.adj)))


def add_isolated(g: Graph, k: int) -> Graph:
    if k < 0:
        raise ParameterError(f"cannot add {k} isolated vertices")
    return Graph(g.n + k, g.adj + (0,) * k)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    vs = sorted(set(vertices))
    index = {v: i for i, v in enumerate(vs)}
    adj = []
    for v in vs:
        adj.append(sum(1 << index[w] for w in iter_bits(g.adj[v]) if w in index))
    return Graph(len(vs), tuple(adj))


# -- cliques ---------------------------------------------------------------


def _clique_search(adj: tuple[int, ...], candidates: int, stop_at: int | None) -> int:
    """Branch and bound over bitsets with Tomita-style pivoting.

    Returns the largest clique size inside ``candidates``; returns as soon as
    a clique of size ``stop_at`` is seen.
    """
    best = 0

    def expand(size: int, p: int) -> bool:
        nonlocal best
        if not p:
            if size > best:
                best = size
            return stop_at is not None and best >= stop_at
        if size + p.bit_count() <= best:
            return False
        pivot = max(iter_bits(p), key=lambda u: (p & adj[u]).bit_count())
        for v in iter_bits(p & ~adj[pivot]):
            if expand(size + 1, p & adj[v]):
                return True
            p &= ~(1 << v)
            if size + p.bit_count() <= best:
                return False
        return False

    expand(0, candidates)
    return best


def clique_number(g: Graph) -> int:
    """Order of the largest complete subgraph (at least 1)."""
    return _clique_search(g.adj, (1 << g.n) - 1, None)


def is_k_free(g: Graph, k: int) -> bool:
    """True iff ``g`` has no complete subgraph on ``k`` vertices."""
    if k <= 1:
        return False
    if k == 2:
        return g.m == 0
    return _clique_search(g.adj, (1 << g.n) - 1, k) < k


def creates_clique(g: Graph, u: int, v: int, k: int) -> bool:
    """Would adding the non-edge ``{u, v}`` create a ``K_k``?

    That happens iff the common neighbourhood of ``u`` and ``v`` holds a ``K_{k-2}``.
    """
    need = k - 2
    if need <= 0:
        return True
    common = g.adj[u] & g.adj[v]
    if common.bit_count() < need:
        return False
    return _clique_search(g.adj, common, need) >= need


# -- colourings and components ---------------------------------------------


def components(g: Graph) -> list[list[int]]:
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(iter_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def two_coloring(g: Graph, vertices: Iterable[int] | None = None) -> dict[int, int] | None:
    """Breadth-first 2-colouring of the given vertices (default: all).

    Returns ``None`` when an odd cycle is met.
    """
    todo = range(g.n) if vertices is None else vertices
    color: dict[int, int] = {}
    for s in todo:
        if s in color:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            u = queue.pop()
            for v in iter_bits(g.adj[u]):
                if v not in color:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def has_bipartite_component(g: Graph) -> bool:
    return any(two_coloring(g, comp) is not None for comp in components(g))


def is_colorable(g: Graph, k: int) -> bool:
    """Exact ``k``-colourability by backtracking (small graphs only)."""
    if k < 1:
        return False
    order = sorted(range(g.n), key=lambda u: -g.degrees[u])
    color = [-1] * g.n

    def place(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        used = {color[v] for v in iter_bits(g.adj[u]) if color[v] >= 0}
        # new colours are interchangeable: only try one unused colour
        top = max(color) + 1
        for c in range(min(k, top + 1)):
            if c in used:
                continue
            color[u] = c
            if place(i + 1):
                return True
            color[u] = -1
        return False

    return place(0)


def is_turan_graph(g: Graph, r: int) -> bool:
    """Is ``g`` isomorphic to ``T_r(n)``?

    Equivalent to: the complement is a disjoint union of cliques whose sizes
    are the balanced part sizes.
    """
    if not 1 <= r <= g.n:
        return False
    h = complement(g)
    sizes = []
    for comp in components(h):
        k = len(comp)
        if any(h.degrees[u] != k - 1 for u in comp):
            return False
        sizes.append(k)
    return sorted(sizes, reverse=True) == turan_part_sizes(g.n, r)


# -- named graphs ----------------------------------------------------------


@dataclass(frozen=True)
class GraphLabel:
    """A named or parameterised graph family member."""

    kind: str
    n: int | None = None
    r: int | None = None

    KINDS = ("complete", "cycle", "path", "empty", "petersen", "turan", "higman_sims")

    def build(self) -> Graph:
        if self.kind not in self.KINDS:
            raise ParameterError(f"unknown graph kind {self.kind!r}; choose from {', '.join(self.KINDS)}")
        if self.kind == "petersen":
            return petersen_graph()
        if self.kind == "higman_sims":
            from .steiner import higman_sims

            return higman_sims()
        if self.kind == "complete":
            # complete(r) per the label table; accept n as an alias
            size = self.r if self.r is not None else self.n
            if size is None:
                raise ParameterError("complete graph needs r (or n)")
            return complete_graph(size)
        if self.n is None:
            raise ParameterError(f"{self.kind} graph needs n")
        if self.kind == "cycle":
            return cycle_graph(self.n)
        if self.kind == "path":
            return path_graph(self.n)
        if self.kind == "empty":
            return empty_graph(self.n)
        if self.r is None:
            raise ParameterError("turan graph needs r")
        return turan_graph(self.n, self.r)


def count_triangles(g: Graph) -> int:
    total = 0
    for u, v in g.edges():
        total += (g.adj[u] & g.adj[v]).bit_count()
    return total // 3


def srg_parameters(g: Graph) -> tuple[int, int, int, int] | None:
    """``(v, k, lambda, mu)`` if ``g`` is strongly regular, else ``None``."""
    if not g.is_regular():
        return None
    lam: set[int] = set()
    mu: set[int] = set()
    for u, v in combinations(range(g.n), 2):
        common = (g.adj[u] & g.adj[v]).bit_count()
        (lam if g.has_edge(u, v) else mu).add(common)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return (g.n, g.degrees[0], lam.pop() if lam else 0, mu.pop() if mu else 0)
