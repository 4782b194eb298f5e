"""graph6 and edge-list serialization.

graph6 follows the published format (Brendan McKay): an order prefix N(n)
followed by the upper triangle, column by column, packed six bits per
printable byte with 63 added.
"""

from __future__ import annotations

import os
from pathlib import Path

from .errors import ConstructionError, GraphParseError
from .graph import Graph

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        body.append(chr(63 + value))
    return _encode_order(g.n) + "".join(body)


def from_graph6(text: str) -> Graph:
    """Parse one graph6 string; errors carry the 0-based character offset."""
    s = text.strip()
    offset = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        offset = len(HEADER)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"invalid graph6 character {ch!r}", f"character {offset + i}")
    if not s:
        raise GraphParseError("empty graph6 string", f"character {offset}")

    def group(pos: int, count: int) -> int:
        if pos + count > len(s):
            raise GraphParseError("truncated order prefix", f"character {offset + len(s)}")
        value = 0
        for ch in s[pos:pos + count]:
            value = value << 6 | (ord(ch) - 63)
        return value

    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) > 1 and s[1] == "~":
        n, pos = group(2, 6), 8
    else:
        n, pos = group(1, 3), 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != need:
        where = offset + pos + min(len(body), need)
        raise GraphParseError(
            f"graph6 body has {len(body)} bytes, order {n} needs {need}", f"character {where}"
        )
    if n == 0:
        raise GraphParseError("graph6 order 0 is not a valid graph here", f"character {offset}")

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def to_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; errors name the 1-based line."""
    rows = [(i + 1, line.split()) for i, line in enumerate(text.splitlines())]
    rows = [(i, parts) for i, parts in rows if parts and not parts[0].startswith("#")]
    if not rows:
        raise GraphParseError("empty edge list", "line 1")

    def ints(lineno: int, parts: list[str]) -> tuple[int, int]:
        if len(parts) != 2:
            raise GraphParseError(f"expected two integers, got {len(parts)} fields", f"line {lineno}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("non-integer field", f"line {lineno}") from None

    n, m = ints(*rows[0])
    if len(rows) - 1 != m:
        raise GraphParseError(f"header promises {m} edges, found {len(rows) - 1}", f"line {rows[0][0]}")
    if n < 1:
        raise GraphParseError("order must be positive", f"line {rows[0][0]}")
    adj = [0] * n
    for lineno, parts in rows[1:]:
        u, v = ints(lineno, parts)
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphParseError(f"bad edge ({u}, {v})", f"line {lineno}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    try:
        return Graph(n, tuple(adj))
    except ConstructionError as exc:
        raise GraphParseError(exc.reason, f"line {rows[0][0]}") from exc


def read_graph_arg(arg: str) -> Graph:
    """Interpret a CLI ``--graph`` value: an existing file path or a graph6 string.

    Files are read as edge lists unless their first non-blank line parses as graph6.
    """
    if os.path.isfile(arg):
        text = Path(arg).read_text()
        first = next((line.strip() for line in text.splitlines() if line.strip()), "")
        if len(first.split()) == 1 and not first.lstrip("-").isdigit():
            return from_graph6(first)
        return from_edge_list(text)
    return from_graph6(arg)


def read_graph6_file(path: str | os.PathLike) -> list[Graph]:
    graphs = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            graphs.append(from_graph6(line))
        except GraphParseError as exc:
            raise GraphParseError(exc.reason, f"line {lineno}, {exc.position}") from exc
    return graphs
