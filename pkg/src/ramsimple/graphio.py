"""Graph file formats.

Edge-list text: first line ``n m``, then m lines ``u v`` with 0 <= u < v < n,
whitespace separated.  Coloured edge-list: header ``n m q`` and lines
``u v c`` with 1 <= c <= q.  graph6-encoded lines are accepted on input
everywhere a plain graph is expected; output is always edge-list.
"""

from __future__ import annotations

from ramsimple.errors import GraphFormatError
from ramsimple.graph import ColouredGraph, Graph


def write_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header says {m} edges, file has {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edge line {ln!r} violates 0 <= u < v < n")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise GraphFormatError("duplicate edge")
    return Graph.from_edges(n, edges)


def write_coloured(cg: ColouredGraph) -> str:
    lines = [f"{cg.graph.n} {cg.graph.m} {cg.q}"]
    lines.extend(f"{u} {v} {cg.colour[(u, v)]}" for u, v in cg.graph.edges())
    return "\n".join(lines) + "\n"


def parse_coloured(text: str) -> ColouredGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty colouring file")
    head = lines[0].split()
    if len(head) != 3:
        raise GraphFormatError(f"expected header 'n m q', got {lines[0]!r}")
    try:
        n, m, q = (int(x) for x in head)
    except ValueError as exc:
        raise GraphFormatError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header says {m} edges, file has {len(lines) - 1}")
    edges = []
    colour = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise GraphFormatError(f"bad coloured edge line {ln!r}")
        u, v, c = (int(x) for x in parts)
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edge line {ln!r} violates 0 <= u < v < n")
        if not 1 <= c <= q:
            raise GraphFormatError(f"colour {c} outside 1..{q} in line {ln!r}")
        edges.append((u, v))
        colour[(u, v)] = c
    if len(set(edges)) != len(edges):
        raise GraphFormatError("duplicate edge")
    try:
        return ColouredGraph(Graph.from_edges(n, edges), q, colour)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


# -- graph6 -------------------------------------------------------------------


def graph6_encode(G: Graph) -> str:
    n = G.n
    if n > 258047:
        raise GraphFormatError("graph6 encoder supports n <= 258047")
    if n <= 62:
        head = chr(n + 63)
    else:
        head = chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    bits = []
    for v in range(1, n):
        col = G.adj[v]
        for u in range(v):
            bits.append((col >> u) & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return head + "".join(chars)


def graph6_decode(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphFormatError("empty graph6 line")
    data = [ord(c) - 63 for c in s]
    if any(x < 0 or x > 63 for x in data):
        raise GraphFormatError("invalid graph6 byte")
    if data[0] == 63:  # '~' escape
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) < need:
        raise GraphFormatError("truncated graph6 body")
    bits = []
    for x in body:
        for sft in range(5, -1, -1):
            bits.append((x >> sft) & 1)
    rows = [0] * n
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            i += 1
    return Graph(n, tuple(rows), _checked=True)


def parse_graph(text: str) -> Graph:
    """Parse a graph from edge-list text or a graph6 line (auto-detected)."""
    stripped = text.strip()
    first = stripped.splitlines()[0] if stripped else ""
    parts = first.split()
    if len(parts) == 2:
        try:
            int(parts[0]), int(parts[1])
            return parse_edge_list(text)
        except ValueError:
            pass
    return graph6_decode(first)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph(fh.read())


def load_coloured(path: str) -> ColouredGraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_coloured(fh.read())
