"""Closed-form bounds on q_min of K_{r+1}-free graphs.

Every entry carries a source tag naming the result it comes from:

========================  ===================================================
``turan_blowup_lower``    q_min of the Turan graph: (r-2) floor(n/r), r >= 3
``higman_sims_lower``     blowups of Higman-Sims: 14 floor(n/100), r = 2
``aes_upper``             via Andrasfai-Erdos-Sos: (1 - 3/(3r-1)) n, r >= 3
``efps_upper``            via Erdos-Faudree-Pach-Spencer: 2n/9, r = 2
``sudakov_upper``         via Sudakov's K4 result: 4n/9, r = 3
``erdos_conjecture``      conditional on Erdos' n^2/25 conjecture: 0.16 n
``brandt_regular``        regular graphs: (5 - 4/r (sqrt(r^2-r) + 1)) n
``brandt_regular_tf``     regular triangle-free graphs: (3 - 2 sqrt 2) n
``min_degree``            q_min <= delta, strict for connected graphs
``rpartite_upper``        r-partite graphs: (r-2)/(r-1) * 2m/n
========================  ===================================================
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

from .errors import BoundViolation, ParameterError, PreconditionError
from .graph import Graph, clique_number, is_colorable, is_connected, turan_graph
from .spectral import format_value, mu_2, q_min

TOL = 1e-9


@dataclass(frozen=True)
class BoundEntry:
    value: float
    source: str
    conditional: bool = False
    regular_only: bool = False
    strict: bool = False


@dataclass
class BoundReport:
    n: int
    r: int
    lower_bounds: list[BoundEntry] = field(default_factory=list)
    upper_bounds: list[BoundEntry] = field(default_factory=list)
    regular_only_uppers: list[BoundEntry] = field(default_factory=list)
    # (low, high, low_inclusive, high_inclusive)
    c_r_interval: tuple[float, float, bool, bool] = (0.0, 1.0, False, True)

    @property
    def max_lower(self) -> BoundEntry:
        return max(self.lower_bounds, key=lambda e: e.value)

    @property
    def min_upper(self) -> BoundEntry:
        return min((e for e in self.upper_bounds if not e.conditional), key=lambda e: e.value)

    def check_consistency(self) -> None:
        entries = self.lower_bounds + self.upper_bounds + self.regular_only_uppers
        if any(not math.isfinite(e.value) or e.value < 0 for e in entries):
            raise BoundViolation(f"non-finite or negative bound in report for n={self.n}, r={self.r}")
        if self.max_lower.value > self.min_upper.value + TOL:
            raise BoundViolation(
                f"lower bound {self.max_lower} exceeds upper bound {self.min_upper} (n={self.n}, r={self.r})"
            )

    def rows(self) -> list[tuple[str, BoundEntry]]:
        return (
            [("lower", e) for e in self.lower_bounds]
            + [("upper", e) for e in self.upper_bounds]
            + [("upper", e) for e in self.regular_only_uppers]
        )

    def to_tsv(self) -> str:
        lines = ["bound\tvalue\tsource\tconditional\tregular_only"]
        for side, e in self.rows():
            lines.append(f"{side}\t{format_value(e.value)}\t{e.source}\t{int(e.conditional)}\t{int(e.regular_only)}")
        lo, hi, lo_in, hi_in = self.c_r_interval
        lines.append(f"c_r\t{'[' if lo_in else '('}{format_value(lo)}, {format_value(hi)}{']' if hi_in else ')'}\t\t\t")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = asdict(self)
        payload["max_lower"] = asdict(self.max_lower)
        payload["min_upper"] = asdict(self.min_upper)
        return json.dumps(payload)


def aes_coefficient(r: int) -> float:
    return 1 - 3 / (3 * r - 1)


def brandt_coefficient(r: int) -> float:
    if r == 2:
        return 3 - 2 * math.sqrt(2)
    return 5 - 4 / r * (math.sqrt(r * r - r) + 1)


def qmin_bounds(n: int, r: int) -> BoundReport:
    """All bounds on q_min(G) for K_{r+1}-free ``G`` of order ``n``."""
    if r < 2:
        raise ParameterError(f"r must be >= 2, got {r}")
    if n <= r:
        raise ParameterError(f"bounds need n > r, got n={n}, r={r}")
    rep = BoundReport(n, r)
    if r == 2:
        rep.lower_bounds.append(BoundEntry(14 * (n // 100), "higman_sims_lower"))
        rep.upper_bounds.append(BoundEntry(2 * n / 9, "efps_upper", strict=True))
        rep.upper_bounds.append(BoundEntry(0.16 * n, "erdos_conjecture", conditional=True))
        rep.regular_only_uppers.append(BoundEntry(brandt_coefficient(2) * n, "brandt_regular_tf", regular_only=True))
        rep.c_r_interval = (0.14, 2 / 9, True, False)
    else:
        rep.lower_bounds.append(BoundEntry((r - 2) * (n // r), "turan_blowup_lower"))
        rep.upper_bounds.append(BoundEntry(aes_coefficient(r) * n, "aes_upper", strict=True))
        if r == 3:
            rep.upper_bounds.append(BoundEntry(4 * n / 9, "sudakov_upper"))
        rep.regular_only_uppers.append(BoundEntry(brandt_coefficient(r) * n, "brandt_regular", regular_only=True))
        high = 4 / 9 if r == 3 else aes_coefficient(r)
        rep.c_r_interval = (1 - 2 / r, high, False, True)
    rep.check_consistency()
    return rep


def rpartite_qmin_upper(g: Graph, r: int) -> float:
    """(r-2)/(r-1) * 2m/n for an ``r``-partite graph; colourability is checked when r <= 3."""
    if r < 2:
        raise ParameterError(f"r must be >= 2, got {r}")
    if r <= 3 and not is_colorable(g, r):
        raise PreconditionError(f"graph is not {r}-colourable")
    return (r - 2) / (r - 1) * 2 * g.m / g.n


@dataclass(frozen=True)
class Violation:
    source: str
    qmin: float
    bound: float
    strict: bool

    def __str__(self) -> str:
        rel = "<" if self.strict else "<="
        return f"{self.source}: expected q_min {rel} {self.bound!r}, got {self.qmin!r}"


def check_graph_against_bounds(g: Graph, r: int, qmin: float | None = None, tol: float = TOL) -> list[Violation]:
    """Every bound that applies to ``g`` as a K_{r+1}-free graph; returns the violated ones.

    A non-empty result on valid input means a bug or a counterexample.
    """
    if r < 2:
        raise ParameterError(f"r must be >= 2, got {r}")
    if clique_number(g) > r:
        raise PreconditionError(f"graph contains K_{r + 1}")
    q = q_min(g) if qmin is None else qmin
    n = g.n
    checks: list[tuple[str, float, bool]] = []
    connected = n >= 2 and is_connected(g)
    checks.append(("min_degree", float(g.min_degree), connected))
    if r == 2:
        checks.append(("efps_upper", 2 * n / 9, True))
    else:
        checks.append(("aes_upper", aes_coefficient(r) * n, True))
        if r == 3:
            checks.append(("sudakov_upper", 4 * n / 9, False))
    if g.is_regular():
        checks.append(("brandt_regular_tf" if r == 2 else "brandt_regular", brandt_coefficient(r) * n, False))

    out = []
    for source, bound, strict in checks:
        # the minimum-degree bound is tested strictly as stated; the rest allow tol
        ok = q < bound if (strict and source == "min_degree") else q <= bound + tol
        if not ok:
            out.append(Violation(source, q, bound, strict))
    return out


class TuranCheck(NamedTuple):
    n: int
    r: int
    lower: int
    qmin: float
    upper: float
    mu2: float
    mu2_formula: int

    @property
    def lower_tight(self) -> bool:
        return abs(self.qmin - self.lower) <= TOL

    def failures(self) -> list[str]:
        out = []
        if self.qmin < self.lower - TOL:
            out.append(f"q_min(T_{self.r}({self.n})) = {self.qmin!r} is below the lower bound {self.lower}")
        if self.qmin > self.upper + TOL:
            out.append(f"q_min(T_{self.r}({self.n})) = {self.qmin!r} exceeds the upper bound {self.upper!r}")
        if abs(self.mu2 - self.mu2_formula) > 1e-7:
            out.append(f"mu_2(T_{self.r}({self.n})) = {self.mu2!r}, expected {self.mu2_formula}")
        return out


def turan_qmin_report(n: int, r: int) -> TuranCheck:
    """q_min and mu_2 of T_r(n) next to (r-2) floor(n/r), (1-2/r) n and n - ceil(n/r)."""
    if not 3 <= r <= n:
        raise ParameterError(f"turan check needs 3 <= r <= n, got n={n}, r={r}")
    t = turan_graph(n, r)
    return TuranCheck(n, r, (r - 2) * (n // r), q_min(t), (1 - 2 / r) * n, mu_2(t), n - -(-n // r))


def turan_qmin_check(n: int, r: int) -> TuranCheck:
    """Check (r-2) floor(n/r) <= q_min(T_r(n)) <= (1-2/r) n and mu_2(T_r(n)) = n - ceil(n/r).

    The lower inequality is tested non-strictly since it is attained when r
    divides n.  It fails outright when n = 1 (mod r), e.g. q_min(T_3(7)) ~ 1.725.
    Raises ``BoundViolation`` listing every failed part.
    """
    chk = turan_qmin_report(n, r)
    problems = chk.failures()
    if problems:
        raise BoundViolation("; ".join(problems))
    return chk
