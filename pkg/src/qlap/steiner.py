"""Higman-Sims graph via the Steiner system S(3,6,22).

S(3,6,22) is built from the projective plane of order 4: its 21 points and
21 lines, one extra point at infinity appended to every line, and one of the
three even-intersection classes of hyperovals (56 six-point arcs).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

from .errors import ConstructionError
from .graph import Graph, make_graph, srg_parameters

# GF(4) = {0, 1, w, w^2} encoded as 0, 1, 2, 3; addition is XOR
_EXP = (1, 2, 3)
_LOG = {1: 0, 2: 1, 3: 2}


def gf4_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP[(_LOG[a] + _LOG[b]) % 3]


def _dot(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    s = 0
    for a, b in zip(x, y):
        s ^= gf4_mul(a, b)
    return s


def _normalized(v: tuple[int, ...]) -> bool:
    for a in v:
        if a:
            return a == 1
    return False


@lru_cache(maxsize=1)
def projective_plane() -> tuple[tuple[tuple[int, ...], ...], tuple[frozenset[int], ...]]:
    """Points of PG(2,4) as normalized vectors, and lines as point-index sets."""
    points = tuple(v for v in product(range(4), repeat=3) if _normalized(v))
    lines = tuple(
        frozenset(i for i, p in enumerate(points) if _dot(p, dual) == 0) for dual in points
    )
    if len(points) != 21 or any(len(line) != 5 for line in lines):
        raise ConstructionError("PG(2,4) has the wrong shape", "projective plane")
    return points, lines


def hyperovals() -> list[tuple[int, ...]]:
    """All 6-point sets of PG(2,4) with no three points collinear, lexicographically sorted."""
    _, lines = projective_plane()
    line_mask = [sum(1 << p for p in line) for line in lines]
    through = {}
    for a, b in combinations(range(21), 2):
        through[a, b] = next(m for m in line_mask if m >> a & 1 and m >> b & 1)

    found: list[tuple[int, ...]] = []

    def extend(chosen: list[int], blocked: int) -> None:
        if len(chosen) == 6:
            found.append(tuple(chosen))
            return
        for p in range(chosen[-1] + 1 if chosen else 0, 21):
            if blocked >> p & 1:
                continue
            extra = 0
            for q in chosen:
                extra |= through[q, p]
            chosen.append(p)
            extend(chosen, blocked | extra | 1 << p)
            chosen.pop()

    extend([], 0)
    return found


@lru_cache(maxsize=1)
def steiner_system_3_6_22() -> tuple[tuple[int, ...], ...]:
    """The 77 blocks of S(3,6,22) on points ``0..21`` (21 is the point at infinity).

    Raises ``ConstructionError`` unless every 3-subset lies in exactly one block.
    """
    _, lines = projective_plane()
    ovals = hyperovals()
    if len(ovals) != 168:
        raise ConstructionError(f"expected 168 hyperovals, found {len(ovals)}", "hyperovals")
    first = set(ovals[0])
    chosen = [h for h in ovals if len(first.intersection(h)) % 2 == 0]
    if len(chosen) != 56:
        raise ConstructionError(f"hyperoval class has {len(chosen)} members, expected 56", "hyperovals")

    blocks = [tuple(sorted(line)) + (21,) for line in lines] + chosen
    cover: dict[tuple[int, ...], int] = {}
    for block in blocks:
        for triple in combinations(block, 3):
            cover[triple] = cover.get(triple, 0) + 1
    for triple in combinations(range(22), 3):
        if cover.get(triple, 0) != 1:
            raise ConstructionError(
                f"triple {triple} lies in {cover.get(triple, 0)} blocks", "Steiner check"
            )
    return tuple(blocks)


@lru_cache(maxsize=1)
def higman_sims() -> Graph:
    """The Higman-Sims graph, SRG(100, 22, 0, 6).

    Vertex 0 is the extra vertex, 1..22 are the Steiner points, 23..99 the
    blocks.  The SRG parameters are re-checked before returning.
    """
    blocks = steiner_system_3_6_22()
    edges = [(0, 1 + p) for p in range(22)]
    for b, block in enumerate(blocks):
        edges.extend((1 + p, 23 + b) for p in block)
    for (i, a), (j, b) in combinations(enumerate(blocks), 2):
        if not set(a).intersection(b):
            edges.append((23 + i, 23 + j))
    g = make_graph(100, edges)
    params = srg_parameters(g)
    if params != (100, 22, 0, 6):
        raise ConstructionError(f"SRG parameter check failed: {params}", "Higman-Sims")
    return g
