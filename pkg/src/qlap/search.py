"""Lower estimates for the largest q_min of a K_{r+1}-free graph on n vertices.

Three routes: exhaustive enumeration for n <= 7, seeded hill climbing or
annealing over single-edge toggles, and blowups of a fixed graph padded with
isolated vertices.
"""

from __future__ import annotations

import json
import math
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from . import corpus
from .bounds import qmin_bounds
from .errors import BoundViolation, ParameterError, SizeError
from .graph import (
    Graph, add_isolated, blowup, creates_clique, empty_graph, is_k_free, is_turan_graph,
    turan_graph,
)
from .graphio import to_graph6
from .spectral import q_min, q_min_batch, q_min_certified

TIE_TOL = 1e-9
LOCAL_MAX_N = 60

StartSpec = Union[str, Graph]


@dataclass(frozen=True)
class SearchConfig:
    n: int
    r: int
    seed: int = 0
    restarts: int = 8
    steps_per_restart: int = 400
    anneal: bool = True
    initial_temperature: float = 0.5
    cooling: float = 0.995
    start: StartSpec = "random"
    regular: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.n > self.r >= 2:
            raise ParameterError(f"search needs n > r >= 2, got n={self.n}, r={self.r}")
        if self.restarts < 1 or self.steps_per_restart < 1 or self.workers < 1:
            raise ParameterError("restarts, steps_per_restart and workers must be positive")
        if not 0 < self.cooling < 1:
            raise ParameterError(f"cooling factor must lie in (0, 1), got {self.cooling}")
        if self.initial_temperature <= 0:
            raise ParameterError("initial temperature must be positive")
        if isinstance(self.start, Graph):
            if self.start.n != self.n:
                raise ParameterError(f"start graph has order {self.start.n}, expected {self.n}")
        elif self.start not in ("turan", "random"):
            raise ParameterError(f"start must be 'turan', 'random' or a Graph, got {self.start!r}")

    @property
    def method(self) -> str:
        return "anneal" if self.anneal else "hillclimb"


def upper_bound_for(n: int, r: int) -> tuple[float, str]:
    """Tightest unconditional upper bound on q_min for K_{r+1}-free graphs of order n."""
    if n > r >= 2:
        best = qmin_bounds(n, r).min_upper
        return best.value, best.source
    return float(max(n - 2, 0)), "order_minus_two"


@dataclass(frozen=True)
class SearchResult:
    n: int
    r: int
    best_graph: Graph
    best_qmin: float
    evaluations: int
    upper_bound_used: tuple[float, str]
    method: str
    conjecture2_flag: str
    seed: int | None = None
    restarts: int | None = None
    steps_per_restart: int | None = None
    schedule: tuple[float, float] | None = None

    @property
    def graph6(self) -> str:
        return to_graph6(self.best_graph)

    @property
    def gap_to_upper(self) -> float:
        return self.upper_bound_used[0] - self.best_qmin

    @property
    def exceeds_upper(self) -> bool:
        return self.best_qmin > self.upper_bound_used[0] + TIE_TOL

    def record(self, timestamp: bool = True) -> dict:
        rec = {
            "n": self.n,
            "r": self.r,
            "method": self.method,
            "seed": self.seed,
            "restarts": self.restarts,
            "steps": self.steps_per_restart,
            "evaluations": self.evaluations,
            "best_qmin": self.best_qmin,
            "graph6": self.graph6,
            "upper_bound": self.upper_bound_used[0],
            "source": self.upper_bound_used[1],
            "gap_to_upper": self.gap_to_upper,
            "conjecture2": self.conjecture2_flag,
        }
        if self.schedule is not None:
            rec["initial_temperature"], rec["cooling"] = self.schedule
        if timestamp:
            rec["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        return rec

    def to_jsonl(self, timestamp: bool = True) -> str:
        return json.dumps(self.record(timestamp))


def _turan_comparison(n: int, r: int, g: Graph, q: float) -> str:
    if r < 3 or n <= r:
        return "not_applicable"
    qt = q_min(turan_graph(n, r))
    if q > qt + TIE_TOL:
        return "exceeds_turan"
    if q >= qt - TIE_TOL:
        return "ties_turan" if is_turan_graph(g, r) else "ties_non_turan"
    return "below_turan"


def _emit(n: int, r: int, g: Graph, q: float, **kw) -> SearchResult:
    """Re-verify a witness and package it; inconsistent witnesses are errors."""
    if not is_k_free(g, r + 1):
        raise BoundViolation(f"witness {to_graph6(g)} contains K_{r + 1}")
    recomputed = q_min(g)
    if abs(recomputed - q) > 1e-8:
        raise BoundViolation(f"witness q_min {recomputed} differs from reported {q}")
    return SearchResult(
        n=n, r=r, best_graph=g, best_qmin=q, upper_bound_used=upper_bound_for(n, r),
        conjecture2_flag=_turan_comparison(n, r, g, q), **kw,
    )


# -- exhaustive ------------------------------------------------------------


@lru_cache(maxsize=16)
def exhaustive_table(n: int, r: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Codes of all K_{r+1}-free labeled graphs on ``n`` vertices, their q_min, and the eigensolve count.

    Graphs with an isolated vertex get q_min = 0 without an eigensolve.
    """
    if n > corpus.MAX_ENUM_N:
        raise SizeError(f"exhaustive search is limited to n <= {corpus.MAX_ENUM_N}; use local_search")
    if n < 1 or r < 1:
        raise ParameterError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    codes = corpus.all_codes(n)
    codes = codes[corpus.k_free_mask(codes, n, r + 1)]
    q = np.zeros(codes.shape[0])
    idx = np.zeros(0, dtype=np.int64)
    if n >= 2:
        idx = np.flatnonzero(corpus.degree_matrix(codes, n).min(axis=1) > 0)
        for lo in range(0, idx.size, 50000):
            part = idx[lo:lo + 50000]
            q[part] = q_min_batch(corpus.adjacency_stack(codes[part], n))
    codes.setflags(write=False)
    q.setflags(write=False)
    return codes, q, int(idx.size)


def _lex_smallest(n: int, codes: np.ndarray) -> int:
    pairs = corpus.edge_pairs(n)

    def key(code: int) -> tuple:
        return tuple(pairs[k] for k in range(len(pairs)) if code >> k & 1)

    return min((int(c) for c in codes), key=key)


def exhaustive_search(n: int, r: int) -> SearchResult:
    """Exact maximum of q_min over all K_{r+1}-free labeled graphs of order ``n <= 7``.

    The witness is the maximiser with the lexicographically smallest sorted edge list.
    """
    codes, q, solved = exhaustive_table(n, r)
    best = float(q.max())
    if best <= TIE_TOL:
        witness_code = 0
    else:
        witness_code = _lex_smallest(n, codes[q >= best - TIE_TOL])
    g = corpus.graph_from_code(n, witness_code)
    q_w = float(q[np.searchsorted(codes, witness_code)])
    return _emit(n, r, g, q_w, evaluations=solved, method="exhaustive")


# -- local search ----------------------------------------------------------


def _random_k_free(n: int, r: int, rng: np.random.Generator) -> Graph:
    """Visit pairs in random order, adding each with probability 1/2 when no K_{r+1} appears."""
    pairs = list(corpus.edge_pairs(n)) if n <= corpus.MAX_ENUM_N else [(u, v) for u in range(n) for v in range(u + 1, n)]
    g = empty_graph(n)
    for k in rng.permutation(len(pairs)):
        u, v = pairs[k]
        if rng.random() < 0.5 and not creates_clique(g, u, v, r + 1):
            g = g.toggle(u, v)
    return g


def _start_graph(cfg: SearchConfig, rng: np.random.Generator) -> Graph:
    if isinstance(cfg.start, Graph):
        if not is_k_free(cfg.start, cfg.r + 1):
            raise ParameterError(f"start graph contains K_{cfg.r + 1}")
        return cfg.start
    if cfg.start == "turan":
        return turan_graph(cfg.n, cfg.r)
    return _random_k_free(cfg.n, cfg.r, rng)


def _two_switch(g: Graph, rng: np.random.Generator, k: int) -> Graph | None:
    """Degree-preserving move: ab, cd -> ac, bd.  ``None`` if the draw is unusable."""
    edges = g.edges()
    if len(edges) < 2:
        return None
    i, j = rng.choice(len(edges), size=2, replace=False)
    a, b = edges[i]
    c, d = edges[j]
    if rng.random() < 0.5:
        c, d = d, c
    if len({a, b, c, d}) < 4 or g.has_edge(a, c) or g.has_edge(b, d):
        return None
    h = g.toggle(a, b).toggle(c, d).toggle(a, c).toggle(b, d)
    return h if is_k_free(h, k) else None


@dataclass
class _RestartOutcome:
    qmin: float
    graph: Graph
    evaluations: int
    graph6: str = field(init=False)

    def __post_init__(self):
        self.graph6 = to_graph6(self.graph)


def _run_restart(cfg: SearchConfig, restart: int) -> _RestartOutcome:
    rng = np.random.default_rng([cfg.seed, restart])
    n, k = cfg.n, cfg.r + 1
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    cache: dict[Graph, float] = {}

    def evaluate(g: Graph) -> float:
        if g not in cache:
            cache[g] = q_min(g) if g.min_degree > 0 else 0.0
        return cache[g]

    current = _start_graph(cfg, rng)
    cur_q = evaluate(current)
    best, best_q = current, cur_q
    regular_moves = cfg.regular and current.is_regular()
    tabu: deque = deque(maxlen=2 * n)
    plateau = 0
    temperature = cfg.initial_temperature

    for _ in range(cfg.steps_per_restart):
        if regular_moves:
            cand = _two_switch(current, rng, k)
            move = None if cand is None else frozenset(cand.edges()) ^ frozenset(current.edges())
        else:
            u, v = pairs[rng.integers(len(pairs))]
            move = (u, v)
            if not current.has_edge(u, v) and creates_clique(current, u, v, k):
                cand = None
            else:
                cand = current.toggle(u, v)
        if cand is not None:
            cq = evaluate(cand)
            delta = cq - cur_q
            if delta > TIE_TOL:
                accept, plateau = True, 0
            elif delta >= -TIE_TOL:
                accept = plateau < 2 * n and move not in tabu
                plateau += accept
            else:
                accept = cfg.anneal and rng.random() < math.exp(delta / temperature)
                if accept:
                    plateau = 0
            if accept:
                tabu.append(move)
                current, cur_q = cand, cq
                if cq > best_q + TIE_TOL:
                    best, best_q = cand, cq
        if cfg.anneal:
            temperature *= cfg.cooling
    return _RestartOutcome(best_q, best, len(cache))


def _merge(outcomes: list[_RestartOutcome]) -> _RestartOutcome:
    """Largest q_min; values within TIE_TOL tie and fall back to the smallest graph6."""
    top = max(o.qmin for o in outcomes)
    return min((o for o in outcomes if o.qmin >= top - TIE_TOL), key=lambda o: o.graph6)


def local_search(cfg: SearchConfig) -> SearchResult:
    """Hill climbing (or annealing) over single-edge toggles that keep the graph K_{r+1}-free.

    Equal moves are accepted for at most ``2n`` consecutive steps and the last
    ``2n`` toggles are tabu for them.  Reproducible from ``cfg.seed``; with
    ``workers > 1`` restarts run in separate processes and merge identically.
    """
    if cfg.n > LOCAL_MAX_N:
        raise SizeError(f"local search is limited to n <= {LOCAL_MAX_N}")
    restarts = range(cfg.restarts)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_run_restart, [cfg] * cfg.restarts, restarts))
    else:
        outcomes = [_run_restart(cfg, i) for i in restarts]
    best = _merge(outcomes)
    return _emit(
        cfg.n, cfg.r, best.graph, best.qmin,
        evaluations=sum(o.evaluations for o in outcomes), method=cfg.method,
        seed=cfg.seed, restarts=cfg.restarts, steps_per_restart=cfg.steps_per_restart,
        schedule=(cfg.initial_temperature, cfg.cooling) if cfg.anneal else None,
    )


# -- blowup padding ----------------------------------------------------------


def blowup_padding_bound(h: Graph, n: int) -> tuple[float, Graph]:
    """Lower bound t * q_min(H) on f_r(n), t = floor(n / v(H)), with its padded witness.

    The witness is the t-blowup of ``h`` plus ``n - t v(H)`` isolated vertices;
    its own q_min is 0 whenever padding is added, so the value reported is
    that of the unpadded blowup.  Integral q_min(H) is certified exactly.
    """
    if n < h.n:
        raise ParameterError(f"target order {n} is below v(H) = {h.n}")
    t = n // h.n
    value = t * q_min_certified(h)
    return value, add_isolated(blowup(h, t), n - t * h.n)


# -- conjecture probe --------------------------------------------------------


@dataclass(frozen=True)
class Conjecture2Report:
    n: int
    r: int
    method: str
    turan_qmin: float
    best_qmin: float
    best_graph6: str
    best_is_turan: bool
    non_turan_best: float | None
    non_turan_meets_or_exceeds: bool
    ratio: float
    conjectured_c: float
    proven_c_upper: float
    search: SearchResult

    def record(self, timestamp: bool = True) -> dict:
        out = {k: getattr(self, k) for k in (
            "n", "r", "method", "turan_qmin", "best_qmin", "best_graph6", "best_is_turan",
            "non_turan_best", "non_turan_meets_or_exceeds", "ratio", "conjectured_c", "proven_c_upper")}
        out["search"] = self.search.record(timestamp)
        return out


def conjecture2_probe(n: int, r: int, budget: SearchConfig | None = None, exhaustive: bool | None = None) -> Conjecture2Report:
    """Compare the best K_{r+1}-free graph found with the Turan graph T_r(n).

    Evidence only: nothing here asserts or refutes the conjecture.
    """
    if r < 3 or n <= r:
        raise ParameterError(f"probe needs r >= 3 and n > r, got n={n}, r={r}")
    if exhaustive is None:
        exhaustive = n <= corpus.MAX_ENUM_N and budget is None
    qt = q_min(turan_graph(n, r))
    if exhaustive:
        result = exhaustive_search(n, r)
        codes, q, _ = exhaustive_table(n, r)
        e_t = turan_graph(n, r).m
        turan_codes = [
            c for c in codes[corpus.edge_counts(codes) == e_t]
            if is_turan_graph(corpus.graph_from_code(n, int(c)), r)
        ]
        others = ~np.isin(codes, np.asarray(turan_codes, dtype=codes.dtype))
        non_turan_best = float(q[others].max()) if others.any() else None
    else:
        cfg = budget or SearchConfig(n, r)
        if (cfg.n, cfg.r) != (n, r):
            raise ParameterError("budget config is for a different (n, r)")
        result = local_search(cfg)
        non_turan_best = None if is_turan_graph(result.best_graph, r) else result.best_qmin
    best_is_turan = is_turan_graph(result.best_graph, r)
    meets = non_turan_best is not None and non_turan_best >= qt - TIE_TOL
    return Conjecture2Report(
        n=n, r=r, method=result.method, turan_qmin=qt, best_qmin=result.best_qmin,
        best_graph6=result.graph6, best_is_turan=best_is_turan, non_turan_best=non_turan_best,
        non_turan_meets_or_exceeds=meets, ratio=result.best_qmin / n, conjectured_c=1 - 2 / r,
        proven_c_upper=4 / 9 if r == 3 else 1 - 3 / (3 * r - 1), search=result,
    )
