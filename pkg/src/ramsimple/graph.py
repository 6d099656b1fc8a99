"""Bit-set graphs and the structural queries shared by every other module.

Vertices are the integers 0..n-1.  Adjacency is stored as one Python int per
vertex (bit v of row u set iff uv is an edge), which makes intersections,
codegrees and BFS word-parallel.  Graphs are immutable after construction and
safe to share across workers; every "mutating" operation returns a new graph.
"""

from __future__ import annotations

import itertools
from collections import deque

from ramsimple import rng
from ramsimple import _kernels as kern

SUBGRAPH_SEARCH_MAX_VERTICES = 10


def _bits(x: int):
    while x:
        lb = x & -x
        x ^= lb
        yield lb.bit_length() - 1


class Graph:
    """Simple undirected graph with bit-set adjacency rows."""

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: tuple[int, ...], _checked: bool = False):
        if n < 0 or len(adj) != n:
            raise ValueError("adjacency length must equal vertex count")
        if not _checked:
            full = (1 << n) - 1
            for u in range(n):
                row = adj[u]
                if row & ~full:
                    raise ValueError(f"row {u} has bits outside 0..{n - 1}")
                if row >> u & 1:
                    raise ValueError(f"loop at vertex {u}")
                for v in _bits(row):
                    if not adj[v] >> u & 1:
                        raise ValueError(f"adjacency not symmetric at {u},{v}")
        self.n = n
        self.adj = tuple(adj)
        self.m = sum(r.bit_count() for r in adj) // 2

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), _checked=True)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple([0] * n), _checked=True)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)), _checked=True)

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def matching(cls, k: int) -> "Graph":
        return cls.from_edges(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    # -- basic queries -----------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int):
        return _bits(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    out.append((u, v))
                row >>= 1
                v += 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ----------------------------------------------------

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"no edge ({u},{v})")
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows), _checked=True)

    def remove_vertex(self, v: int) -> "Graph":
        """Delete v and relabel vertices above it down by one."""
        keep = [u for u in range(self.n) if u != v]
        return self.subgraph(keep)[0]

    def subgraph(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` (new labels 0.. in the given
        order) together with the new->old vertex map."""
        vs = list(vertices)
        index = {old: new for new, old in enumerate(vs)}
        rows = [0] * len(vs)
        for new, old in enumerate(vs):
            for w in _bits(self.adj[old]):
                if w in index:
                    rows[new] |= 1 << index[w]
        return Graph(len(vs), tuple(rows), _checked=True), vs

    def induced_rows(self, mask: int) -> tuple[int, ...]:
        """Adjacency rows restricted to the vertex mask (labels unchanged)."""
        return tuple(self.adj[v] & mask if mask >> v & 1 else 0 for v in range(self.n))

    def strip_isolated(self) -> tuple["Graph", list[int]]:
        return self.subgraph([v for v in range(self.n) if self.adj[v]])

    # -- structure ---------------------------------------------------------

    def component_masks(self) -> list[int]:
        full = (1 << self.n) - 1
        comps = []
        rem = full
        while rem:
            start = rem & -rem
            comp = kern_bfs(self.adj, rem, start)
            comps.append(comp)
            rem &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_masks()) == 1

    def is_forest(self) -> bool:
        # A graph is acyclic iff every component has one more vertex than edges.
        for comp in self.component_masks():
            nv = comp.bit_count()
            ne = sum((self.adj[v] & comp).bit_count() for v in _bits(comp)) // 2
            if ne != nv - 1:
                return False
        return True

    def canonical_form(self) -> tuple[int, ...]:
        """Minimum adjacency-row tuple over all vertex permutations.

        Exact isomorphism invariant; intended for tiny graphs (n <= 8).
        """
        if self.n > 8:
            raise ValueError("canonical_form is limited to n <= 8")
        best = None
        for perm in itertools.permutations(range(self.n)):
            rows = [0] * self.n
            for u in range(self.n):
                pu = perm[u]
                for v in _bits(self.adj[u]):
                    rows[pu] |= 1 << perm[v]
            t = tuple(rows)
            if best is None or t < best:
                best = t
        return best


def kern_bfs(rows, mask: int, start_bit: int) -> int:
    """Bit-parallel BFS: the component mask of start within the masked graph."""
    comp = start_bit
    frontier = start_bit
    while frontier:
        nxt = 0
        f = frontier
        while f:
            lb = f & -f
            f ^= lb
            nxt |= rows[lb.bit_length() - 1]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp


class ColouredGraph:
    """A graph plus a total edge colouring into the palette 1..q."""

    __slots__ = ("graph", "q", "colour")

    def __init__(self, graph: Graph, q: int, colour: dict[tuple[int, int], int]):
        if q < 1:
            raise ValueError("need at least one colour")
        edges = graph.edges()
        if len(colour) != len(edges):
            raise ValueError("colouring must cover every edge exactly once")
        for u, v in edges:
            c = colour.get((u, v))
            if c is None:
                raise ValueError(f"edge ({u},{v}) is uncoloured")
            if not 1 <= c <= q:
                raise ValueError(f"colour {c} of edge ({u},{v}) outside 1..{q}")
        self.graph = graph
        self.q = q
        self.colour = dict(colour)

    def colour_of(self, u: int, v: int) -> int:
        return self.colour[(u, v) if u < v else (v, u)]

    def colour_class(self, i: int) -> Graph:
        """The colour-i subgraph on the full vertex set."""
        return Graph.from_edges(
            self.graph.n, [e for e, c in self.colour.items() if c == i]
        )

    def classes(self) -> list[Graph]:
        return [self.colour_class(i) for i in range(1, self.q + 1)]

    def class_rows(self, i: int) -> list[int]:
        rows = [0] * self.graph.n
        for (u, v), c in self.colour.items():
            if c == i:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return rows

    def relabel_colours(self, perm: dict[int, int]) -> "ColouredGraph":
        return ColouredGraph(
            self.graph, self.q, {e: perm[c] for e, c in self.colour.items()}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColouredGraph)
            and self.graph == other.graph
            and self.q == other.q
            and self.colour == other.colour
        )

    def __repr__(self) -> str:
        return f"ColouredGraph(n={self.graph.n}, m={self.graph.m}, q={self.q})"


# -- sampling ---------------------------------------------------------------


def validate_rows(n: int, rows) -> None:
    """Word-parallel symmetry and irreflexivity check (numpy transpose)."""
    import numpy as np

    if n == 0:
        return
    W = (n + 7) // 8
    buf = b"".join(r.to_bytes(W, "little") for r in rows)
    mat = np.unpackbits(
        np.frombuffer(buf, dtype=np.uint8).reshape(n, W), axis=1, bitorder="little"
    )[:, :n]
    if np.diagonal(mat).any():
        raise ValueError("loop in adjacency rows")
    if not (mat == mat.T).all():
        raise ValueError("adjacency not symmetric")


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Seeded binomial random graph: every pair is an edge independently with
    probability p.  Bit-identical for a given (n, p, seed) on any platform."""
    if n < 1:
        raise ValueError("need at least one vertex")
    threshold = rng.bernoulli_threshold(p)
    rows = kern.gnp_rows(n, threshold, seed)
    validate_rows(n, rows)  # symmetry is checked on every construction
    return Graph(n, tuple(rows), _checked=True)


# -- structural queries ------------------------------------------------------


def codegree(G: Graph, u: int, v: int) -> int:
    """|N(u) ∩ N(v)|."""
    if u == v:
        raise ValueError("codegree needs two distinct vertices")
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise ValueError("vertex out of range")
    return (G.adj[u] & G.adj[v]).bit_count()


def every_edge_in_triangle(G: Graph) -> bool:
    for u, v in G.edges():
        if not G.adj[u] & G.adj[v]:
            return False
    return True


def k_connected(G: Graph, k: int) -> bool:
    """Is G k-connected (more than k vertices and no cut of size < k)?"""
    ok, _ = vertex_cut_below(G, k)
    return ok


def vertex_cut_below(G: Graph, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """(True, None) when G is k-connected, else (False, cut) where cut is a
    separating set of fewer than k vertices (None when n <= k)."""
    if k < 1:
        raise ValueError("connectivity order must be >= 1")
    if G.n <= k:
        return False, None
    if k == 1:
        if G.is_connected():
            return True, None
        return False, ()
    if k == 3:
        return kern.three_connected(list(G.adj), G.n)
    if min(G.degrees()) < k:
        # N(v) separates v from the rest whenever v has a non-neighbour.
        v = min(range(G.n), key=G.degree)
        cut = tuple(_bits(G.adj[v]))
        if len(cut) < G.n - 1:
            return False, cut
    return _k_connected_flow(G, k)


def _k_connected_flow(G: Graph, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Max-flow route: check min vertex cut >= k using a fixed k-vertex base
    set.  Any cut of size < k misses some base vertex u, and separates u from
    some non-neighbour v, so flow(u, v) detects it."""
    base = list(range(min(k, G.n)))
    for u in base:
        others = ((1 << G.n) - 1) & ~(1 << u) & ~G.adj[u]
        for v in _bits(others):
            flow, cut = _vertex_maxflow(G, u, v, k)
            if flow < k:
                return False, cut
    return True, None


def _vertex_maxflow(G: Graph, s: int, t: int, cap: int) -> tuple[int, tuple[int, ...]]:
    """Vertex-capacity max flow between non-adjacent s,t, stopped at ``cap``.

    Standard vertex splitting: x_in=2x, x_out=2x+1; internal vertices have
    unit capacity.  Returns (flow, min_cut_vertices) where the cut is only
    meaningful when flow < cap.
    """
    N = 2 * G.n
    capacity: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(N)]

    def add(a: int, b: int, c: int):
        if (a, b) not in capacity:
            capacity[(a, b)] = 0
            capacity[(b, a)] = capacity.get((b, a), 0)
            adj[a].append(b)
            adj[b].append(a)
        capacity[(a, b)] += c

    big = cap + G.n
    for x in range(G.n):
        add(2 * x, 2 * x + 1, 1 if x not in (s, t) else big)
        for y in _bits(G.adj[x]):
            add(2 * x + 1, 2 * y, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and capacity.get((a, b), 0) > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            capacity[(a, b)] -= 1
            capacity[(b, a)] = capacity.get((b, a), 0) + 1
            b = a
        flow += 1
    if flow >= cap:
        return flow, ()
    reach = {source}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b not in reach and capacity.get((a, b), 0) > 0:
                reach.add(b)
                queue.append(b)
    cut = tuple(
        x for x in range(G.n) if 2 * x in reach and 2 * x + 1 not in reach
    )
    return flow, cut


def enumerate_small_cuts(G: Graph, max_size: int) -> tuple[int, ...] | None:
    """Exhaustive search for a separating vertex set of size <= max_size.

    Oracle-grade cross-check for k_connected at desk scale (n <= 20).
    """
    if not G.is_connected():
        return ()
    full = (1 << G.n) - 1
    for size in range(1, max_size + 1):
        for cut in itertools.combinations(range(G.n), size):
            mask = full
            for c in cut:
                mask &= ~(1 << c)
            if mask == 0:
                continue
            start = mask & -mask
            if kern_bfs(G.adj, mask, start) != mask:
                return cut
    return None


# -- subgraph searches -------------------------------------------------------


def forest_embedding_plan(F: Graph) -> tuple[list[int], list[int], list[int]]:
    """Deterministic embedding order for a forest: components by decreasing
    size (ties by smallest vertex), each traversed BFS from its lowest-index
    vertex.  Returns (forest vertices in order, parent positions, degrees)."""
    comps = sorted(
        F.component_masks(), key=lambda c: (-c.bit_count(), c & -c)
    )
    order: list[int] = []
    parents: list[int] = []
    pos_of: dict[int, int] = {}
    for comp in comps:
        root = (comp & -comp).bit_length() - 1
        order.append(root)
        parents.append(-1)
        pos_of[root] = len(order) - 1
        queue = deque([root])
        seen = 1 << root
        while queue:
            v = queue.popleft()
            for w in _bits(F.adj[v] & comp & ~seen):
                seen |= 1 << w
                order.append(w)
                parents.append(pos_of[v])
                pos_of[w] = len(order) - 1
                queue.append(w)
    fdeg = [F.degree(v) for v in order]
    return order, parents, fdeg


def contains_forest_copy(
    G: Graph, F: Graph, allowed_mask: int | None = None
) -> dict[int, int] | None:
    """Injective map from the non-isolated vertices of the forest F into G
    with every F-edge landing on a G-edge, or None.

    Exact backtracking with degree pruning.  Isolated vertices of F are
    stripped before matching.  Rejects cyclic F: general (cyclic) targets go
    through find_subgraph_copy, which is capped at 10 vertices.
    """
    if not F.is_forest():
        raise ValueError("target is not a forest; use find_subgraph_copy")
    live = [v for v in range(F.n) if F.adj[v]]
    if not live:
        return {}
    Fs, old = F.subgraph(live)
    order, parents, fdeg = forest_embedding_plan(Fs)
    mask = (1 << G.n) - 1 if allowed_mask is None else allowed_mask
    images = kern.forest_embed(list(G.adj), G.n, parents, fdeg, mask)
    if images is None:
        return None
    return {old[order[i]]: images[i] for i in range(len(order))}


def find_subgraph_copy(
    G: Graph, H: Graph, allowed_mask: int | None = None
) -> dict[int, int] | None:
    """Injective map sending every H-edge onto a G-edge (subgraph copy, not
    induced), or None.  Exact backtracking; supported for v(H) <= 10 only.

    Independent of the arrowing search's incremental detector: this is the
    validation route for witnesses and certificates.
    """
    live = [v for v in range(H.n) if H.adj[v]]
    if len(live) > SUBGRAPH_SEARCH_MAX_VERTICES:
        raise ValueError(
            f"general subgraph search capped at {SUBGRAPH_SEARCH_MAX_VERTICES} vertices"
        )
    if not live:
        return {}
    Hs, old = H.subgraph(live)
    hn = Hs.n
    # Order components largest first; inside a component, BFS from the vertex
    # of maximum degree (ties by index).
    comps = sorted(Hs.component_masks(), key=lambda c: (-c.bit_count(), c & -c))
    order: list[int] = []
    seenmask = 0
    for comp in comps:
        root = max(_bits(comp), key=lambda v: (Hs.degree(v), -v))
        queue = deque([root])
        seenmask |= 1 << root
        order.append(root)
        while queue:
            v = queue.popleft()
            for w in _bits(Hs.adj[v] & comp & ~seenmask):
                seenmask |= 1 << w
                order.append(w)
                queue.append(w)
    pos_of = {hv: i for i, hv in enumerate(order)}
    constraints = []
    for i, hv in enumerate(order):
        earlier = tuple(pos_of[w] for w in _bits(Hs.adj[hv]) if pos_of[w] < i)
        constraints.append((earlier, Hs.degree(hv)))
    mask = (1 << G.n) - 1 if allowed_mask is None else allowed_mask
    images = [0] * hn

    def go(i: int, used: int) -> bool:
        if i == hn:
            return True
        earlier, need = constraints[i]
        if earlier:
            cand = G.adj[images[earlier[0]]]
            for p in earlier[1:]:
                cand &= G.adj[images[p]]
            cand &= mask
        else:
            cand = mask
        cand &= ~used
        for c in _bits(cand):
            if (G.adj[c] & mask).bit_count() < need:
                continue
            images[i] = c
            if go(i + 1, used | (1 << c)):
                return True
        return False

    if not go(0, 0):
        return None
    return {old[order[i]]: images[i] for i in range(hn)}


def find_mono_copy(cg: ColouredGraph, H: Graph) -> tuple[int, dict[int, int]] | None:
    """First monochromatic copy of H in the coloured graph (lowest colour), or
    None.  Shares no code with the arrowing search."""
    for i in range(1, cg.q + 1):
        m = find_subgraph_copy(cg.colour_class(i), H)
        if m is not None:
            return i, m
    return None
