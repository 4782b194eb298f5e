"""Max-cut and the cost of making a graph bipartite.

``e(G) - maxcut(G)`` edges must go to make ``G`` bipartite; this is compared
with ``q_min(G) * n / 4``, which never exceeds it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import SizeError
from .graph import Graph, iter_bits
from .graphio import to_graph6
from .spectral import format_value, q_min

LEFT, RIGHT = 0, 1
EXACT_MAX_N = 26
RATIO_QMIN_FLOOR = 1e-9


@dataclass(frozen=True)
class Bipartition:
    side_of: tuple[int, ...]
    cut_value: int

    @classmethod
    def from_mask(cls, g: Graph, right: int) -> "Bipartition":
        side = tuple(right >> v & 1 for v in range(g.n))
        return cls(side, cut_size(g, right))

    @property
    def right_mask(self) -> int:
        return sum(1 << v for v, s in enumerate(self.side_of) if s == RIGHT)

    @property
    def left(self) -> list[int]:
        return [v for v, s in enumerate(self.side_of) if s == LEFT]

    @property
    def right(self) -> list[int]:
        return [v for v, s in enumerate(self.side_of) if s == RIGHT]

    def recompute_cut(self, g: Graph) -> int:
        return cut_size(g, self.right_mask)


def cut_size(g: Graph, right: int) -> int:
    """Number of edges with one end in ``right`` and the other outside it."""
    total = 0
    for v in iter_bits(right):
        total += (g.adj[v] & ~right).bit_count()
    return total


def _lex_key(right: int, n: int) -> int:
    # side_of tuples compare lexicographically; vertex 0 is the most significant digit
    return sum(1 << (n - 1 - v) for v in iter_bits(right))


def max_cut_exact(g: Graph) -> Bipartition:
    """Maximum cut by Gray-code enumeration of the ``2^(n-1)`` bipartitions.

    Vertex 0 stays on the left.  Among maximum cuts the lexicographically
    smallest ``side_of`` wins.
    """
    n = g.n
    if n > EXACT_MAX_N:
        raise SizeError(f"exact max-cut is limited to n <= {EXACT_MAX_N}; use max_cut_heuristic for n={n}")
    adj = g.adj
    deg = g.degrees
    right = 0
    rev = 0
    cut = 0
    best_cut, best_rev, best_right = 0, 0, 0
    for k in range(1, 1 << (n - 1)):
        v = (k & -k).bit_length()  # flips vertex 1 + trailing zeros of k
        same = (adj[v] & right).bit_count() if right >> v & 1 else deg[v] - (adj[v] & right).bit_count()
        cut += 2 * same - deg[v]
        right ^= 1 << v
        rev ^= 1 << (n - 1 - v)
        if cut > best_cut or (cut == best_cut and rev < best_rev):
            best_cut, best_rev, best_right = cut, rev, right
    return Bipartition.from_mask(g, best_right)


def _local_max_cut(g: Graph, right: int) -> int:
    """Flip single vertices round-robin while some flip raises the cut."""
    adj = g.adj
    deg = g.degrees
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            inside = right >> v & 1
            same = (adj[v] & right).bit_count() if inside else deg[v] - (adj[v] & right).bit_count()
            if 2 * same > deg[v]:
                right ^= 1 << v
                improved = True
    return right


def max_cut_heuristic(g: Graph, seed: int = 0, restarts: int = 16) -> Bipartition:
    """Best of ``restarts`` single-flip local optima from random bipartitions.

    Restart ``i`` draws from ``numpy.random.default_rng([seed, i])``, so each
    restart is reproducible on its own.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = g.n
    full = (1 << n) - 1
    best: tuple[int, int, int] | None = None
    for i in range(restarts):
        rng = np.random.default_rng([seed, i])
        bits = rng.integers(0, 2, size=n)
        right = sum(1 << v for v in range(n) if bits[v])
        right = _local_max_cut(g, right)
        if right & 1:
            right ^= full  # normalise: vertex 0 on the left
        cut = cut_size(g, right)
        key = (-cut, _lex_key(right, n), right)
        if best is None or key < best:
            best = key
    return Bipartition.from_mask(g, best[2])


@dataclass(frozen=True)
class MtReport:
    n: int
    edges: int
    max_cut: int
    bipartization_cost: int
    qmin: float
    bound: float
    gap: float
    ratio: float | None
    method: str
    seed: int | None = None

    HEADER = ("n", "m", "maxcut", "cost", "qmin", "bound", "gap", "ratio", "method", "seed")

    @property
    def holds(self) -> bool:
        return self.gap >= -1e-9

    def tsv_row(self) -> str:
        fields = [
            str(self.n), str(self.edges), str(self.max_cut), str(self.bipartization_cost),
            format_value(self.qmin), format_value(self.bound), format_value(self.gap),
            "" if self.ratio is None else format_value(self.ratio),
            self.method, "" if self.seed is None else str(self.seed),
        ]
        return "\t".join(fields)

    def as_dict(self) -> dict:
        return {name: getattr(self, attr) for name, attr in zip(self.HEADER, (
            "n", "edges", "max_cut", "bipartization_cost", "qmin", "bound", "gap", "ratio", "method", "seed"))}


def mt_report(g: Graph, exact: bool = True, seed: int = 0, restarts: int = 16, qmin: float | None = None) -> MtReport:
    """Compare the bipartization cost with ``q_min * n / 4``.

    With ``exact=False`` the cut is heuristic, so the cost is an upper bound on
    the true cost; a negative gap would still refute the inequality.
    """
    part = max_cut_exact(g) if exact else max_cut_heuristic(g, seed, restarts)
    q = q_min(g) if qmin is None else qmin
    cost = g.m - part.cut_value
    bound = q * g.n / 4
    ratio = cost / (q * g.n) if q > RATIO_QMIN_FLOOR else None
    return MtReport(
        n=g.n, edges=g.m, max_cut=part.cut_value, bipartization_cost=cost, qmin=q,
        bound=bound, gap=cost - bound, ratio=ratio,
        method="exact" if exact else "heuristic", seed=None if exact else seed,
    )


@dataclass
class RatioScan:
    """Running supremum of cost / (q_min * n) over a corpus."""

    count: int = 0
    supremum: float | None = None
    witness: Graph | None = None
    min_gap: float | None = None
    min_gap_witness: Graph | None = None

    def add(self, g: Graph, report: MtReport) -> None:
        self.count += 1
        if report.ratio is not None and (self.supremum is None or report.ratio > self.supremum):
            self.supremum, self.witness = report.ratio, g
        if self.min_gap is None or report.gap < self.min_gap:
            self.min_gap, self.min_gap_witness = report.gap, g

    def as_dict(self) -> dict:
        return {
            "graphs": self.count,
            "ratio_supremum": self.supremum,
            "witness": None if self.witness is None else to_graph6(self.witness),
            "min_gap": self.min_gap,
            "min_gap_witness": None if self.min_gap_witness is None else to_graph6(self.min_gap_witness),
        }


def ratio_scan(graphs: Iterable[Graph], exact: bool = True, seed: int = 0) -> RatioScan:
    scan = RatioScan()
    for g in graphs:
        scan.add(g, mt_report(g, exact=exact, seed=seed))
    return scan
