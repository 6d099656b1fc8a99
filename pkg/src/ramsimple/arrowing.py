"""Exact arrowing decisions at desk scale.

arrows(G, H, q) decides whether every q-colouring of E(G) contains a
monochromatic copy of H, by backtracking over edge colourings with
incremental copy detection and colour-symmetry breaking.  Exponential search
fails honestly: blown budgets raise BudgetExceededError and are never
reported as answers.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass

from ramsimple import _kernels as kern
from ramsimple._kernels import pykernels as _pyk
from ramsimple.errors import BudgetExceededError
from ramsimple.graph import (
    ColouredGraph,
    Graph,
    _bits,
    find_mono_copy,
    find_subgraph_copy,
)

DEFAULT_NODE_BUDGET = 10**7


def _env_int(name: str, default: int) -> int:
    val = os.environ.get(name)
    return int(val) if val else default


def default_edge_cap(q: int) -> int:
    """Search-space guard: about 2^40 colourings."""
    if q <= 2:
        return _env_int("RAMSIMPLE_ARROW_EDGE_CAP", 40)
    base = _env_int("RAMSIMPLE_ARROW_EDGE_CAP", 40)
    return max(8, int(base * math.log(2) / math.log(q)))


@dataclass(frozen=True)
class ArrowResult:
    arrows: bool
    witness: ColouredGraph | None
    nodes: int
    millis: float

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "arrows": self.arrows,
            "nodes": self.nodes,
            "budget_hit": False,
            "witness": None,
            # reports are byte-stable: wall clock goes to stderr, not here
            "millis": self.millis if include_timing else None,
        }
        if self.witness is not None:
            out["witness"] = {
                "q": self.witness.q,
                "edges": [
                    [u, v, self.witness.colour[(u, v)]]
                    for u, v in self.witness.graph.edges()
                ],
            }
        return out


def _prepare_target(H: Graph) -> Graph:
    live = [v for v in range(H.n) if H.adj[v]]
    Hs, _ = H.subgraph(live)
    if Hs.n < 2:
        raise ValueError("target must have at least one edge after stripping isolated vertices")
    return Hs


def _search_edges(G: Graph) -> list[tuple[int, int]]:
    deg = G.degrees()
    return sorted(G.edges(), key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


def arrows(
    G: Graph,
    H: Graph,
    q: int,
    node_budget: int | None = None,
    time_budget_s: float | None = None,
    max_edges: int | None = None,
) -> ArrowResult:
    """Exact decision of G -> (H)_q with a re-validated witness colouring
    whenever the answer is negative."""
    if q < 1:
        raise ValueError("need at least one colour")
    Hs = _prepare_target(H)
    cap = default_edge_cap(q) if max_edges is None else max_edges
    if G.m > cap:
        raise BudgetExceededError(
            f"instance exceeds configured budget: e(G) = {G.m} > {cap} edges for q = {q}"
        )
    if node_budget is None:
        node_budget = _env_int("RAMSIMPLE_ARROW_NODE_BUDGET", DEFAULT_NODE_BUDGET)
    edges = _search_edges(G)
    search = kern.arrows_search if G.n <= 64 else _pyk.arrows_search
    t0 = time.perf_counter()
    status, colours, nodes = search(
        G.n, edges, q, Hs.n, Hs.edges(), node_budget, time_budget_s
    )
    millis = (time.perf_counter() - t0) * 1000.0
    if status == -1:
        raise BudgetExceededError(
            f"arrowing search budget exceeded after {nodes} nodes",
            nodes=nodes,
            millis=millis,
        )
    if status == 1:
        return ArrowResult(arrows=True, witness=None, nodes=nodes, millis=millis)
    witness = ColouredGraph(G, q, dict(zip(edges, colours)))
    hit = find_mono_copy(witness, Hs)
    if hit is not None:
        raise RuntimeError(
            f"witness validation failed: monochromatic copy in colour {hit[0]}"
        )
    return ArrowResult(arrows=False, witness=witness, nodes=nodes, millis=millis)


@dataclass(frozen=True)
class DeletionVerdict:
    kind: str  # "edge" | "vertex"
    removed: tuple[int, int] | int
    arrows: bool
    witness: ColouredGraph | None


@dataclass(frozen=True)
class MinimalityReport:
    is_ramsey: bool
    minimal: bool
    edge_verdicts: tuple[DeletionVerdict, ...]
    vertex_verdicts: tuple[DeletionVerdict, ...]
    nodes: int

    def to_dict(self) -> dict:
        return {
            "is_ramsey": self.is_ramsey,
            "minimal": self.minimal,
            "edge_verdicts": [
                {"edge": list(v.removed), "arrows": v.arrows} for v in self.edge_verdicts
            ],
            "vertex_verdicts": [
                {"vertex": v.removed, "arrows": v.arrows} for v in self.vertex_verdicts
            ],
            "nodes": self.nodes,
        }


def is_minimal_ramsey(
    G: Graph,
    H: Graph,
    q: int,
    node_budget: int | None = None,
    time_budget_s: float | None = None,
) -> MinimalityReport:
    """G is minimal q-Ramsey for H iff it arrows and no single-edge deletion
    does.  Per-vertex verdicts are reported alongside (monotonicity makes
    them implied by the edge verdicts, but they are re-derived, not assumed).
    """
    total = 0
    base = arrows(G, H, q, node_budget=node_budget, time_budget_s=time_budget_s)
    total += base.nodes
    if not base.arrows:
        return MinimalityReport(
            is_ramsey=False,
            minimal=False,
            edge_verdicts=(),
            vertex_verdicts=(),
            nodes=total,
        )
    edge_verdicts = []
    minimal = True
    for e in G.edges():
        res = arrows(G.remove_edge(*e), H, q, node_budget=node_budget, time_budget_s=time_budget_s)
        total += res.nodes
        edge_verdicts.append(
            DeletionVerdict(kind="edge", removed=e, arrows=res.arrows, witness=res.witness)
        )
        if res.arrows:
            minimal = False
    vertex_verdicts = []
    for v in range(G.n):
        res = arrows(G.remove_vertex(v), H, q, node_budget=node_budget, time_budget_s=time_budget_s)
        total += res.nodes
        vertex_verdicts.append(
            DeletionVerdict(kind="vertex", removed=v, arrows=res.arrows, witness=res.witness)
        )
    return MinimalityReport(
        is_ramsey=True,
        minimal=minimal,
        edge_verdicts=tuple(edge_verdicts),
        vertex_verdicts=tuple(vertex_verdicts),
        nodes=total,
    )


# -- the necessity test -------------------------------------------------------


@dataclass(frozen=True)
class NecessityReport:
    ok: bool
    violation: tuple[tuple[int, ...], int] | None  # (U, colour)
    subsets_checked: int
    delta: int
    f_vertices: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violation": (
                [list(self.violation[0]), self.violation[1]] if self.violation else None
            ),
            "subsets_checked": self.subsets_checked,
            "delta": self.delta,
            "f_vertices": list(self.f_vertices),
        }


def _graph_without_vertex_edges(G: Graph, w: int) -> Graph:
    rows = list(G.adj)
    for x in _bits(rows[w]):
        rows[x] &= ~(1 << w)
    rows[w] = 0
    return Graph(G.n, tuple(rows), _checked=True)


def necessity_gamma(
    G: Graph,
    H: Graph,
    q: int,
    w: int,
    colouring: ColouredGraph | None = None,
    subset_cap: int = 10**7,
    node_budget: int | None = None,
) -> NecessityReport:
    """Check the coloured neighbourhood of a degree-q(delta-1)+1 vertex.

    Given an H-free colouring of G - w (supplied, or found by the arrowing
    search), every delta-subset U of N(w) must carry a copy of F = H[N(u)]
    in every colour; the first violation certifies that this (G, w,
    colouring) does not witness simplicity.  The report speaks only about
    these conditions, not about simplicity itself.
    """
    from ramsimple.analysis import neighbourhood_profile

    Hs = _prepare_target(H)
    prof = neighbourhood_profile(Hs)
    delta = prof.delta
    need = q * (delta - 1) + 1
    if G.degree(w) != need:
        raise ValueError(f"degree of w is {G.degree(w)}, expected q(delta-1)+1 = {need}")
    Gw = _graph_without_vertex_edges(G, w)
    if colouring is None:
        res = arrows(Gw, Hs, q, node_budget=node_budget)
        if res.arrows:
            raise ValueError("G - w arrows the target: no H-free colouring exists")
        colouring = res.witness
    else:
        if colouring.graph != Gw:
            raise ValueError("supplied colouring must cover exactly the edges of G - w")
        if colouring.q != q:
            raise ValueError("supplied colouring uses the wrong palette size")
        if find_mono_copy(colouring, Hs) is not None:
            raise ValueError("supplied colouring is not H-free")
    nbrs = sorted(_bits(G.adj[w]))
    total = math.comb(len(nbrs), delta)
    if total > subset_cap:
        raise BudgetExceededError(
            f"necessity check needs C({len(nbrs)},{delta}) = {total} subsets, cap is {subset_cap}"
        )
    class_graphs = [colouring.colour_class(i) for i in range(1, q + 1)]
    checked = 0
    for u_set in itertools.combinations(nbrs, delta):
        checked += 1
        mask = 0
        for v in u_set:
            mask |= 1 << v
        for i in range(1, q + 1):
            if find_subgraph_copy(class_graphs[i - 1], prof.F, allowed_mask=mask) is None:
                return NecessityReport(
                    ok=False,
                    violation=(u_set, i),
                    subsets_checked=checked,
                    delta=delta,
                    f_vertices=prof.f_vertices,
                )
    return NecessityReport(
        ok=True,
        violation=None,
        subsets_checked=checked,
        delta=delta,
        f_vertices=prof.f_vertices,
    )


# -- the triangle refuter -----------------------------------------------------


@dataclass(frozen=True)
class RefuterResult:
    extension: ColouredGraph
    v: int
    W: tuple[int, ...]
    mono_colour: int  # colour of the v-W edges

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "W": list(self.W),
            "mono_colour": self.mono_colour,
        }


def triangle_refuter(G: Graph, w: int, H: Graph, c: ColouredGraph) -> RefuterResult:
    """Extend an H-free 2-colouring of G - w across w without creating a
    monochromatic copy, for targets whose every edge lies in a triangle.

    Picks v in N(w) and W of size delta-1 whose existing v-W edges share one
    colour, then colours w-(W+v) with the other colour and the remaining
    w-edges with the shared one.  All v and both colours are searched; the
    extension is re-validated independently.
    """
    Hs = _prepare_target(H)
    for a, b in Hs.edges():
        if not Hs.adj[a] & Hs.adj[b]:
            raise ValueError(f"target edge ({a},{b}) lies in no triangle")
    from ramsimple.analysis import neighbourhood_profile

    delta = neighbourhood_profile(Hs).delta
    if G.degree(w) != 2 * delta - 1:
        raise ValueError(
            f"degree of w is {G.degree(w)}, expected 2*delta-1 = {2 * delta - 1}"
        )
    if c.q != 2:
        raise ValueError("refuter works with exactly 2 colours")
    if c.graph != _graph_without_vertex_edges(G, w):
        raise ValueError("colouring must cover exactly the edges of G - w")
    if find_mono_copy(c, Hs) is not None:
        raise ValueError("supplied colouring is not H-free")
    nbrs = sorted(_bits(G.adj[w]))
    for v in nbrs:
        for j in (1, 2):
            compatible = [
                x
                for x in nbrs
                if x != v and (not G.has_edge(v, x) or c.colour_of(v, x) == j)
            ]
            if len(compatible) < delta - 1:
                continue
            W = tuple(compatible[: delta - 1])
            u_side = set(W) | {v}
            colour = dict(c.colour)
            for x in nbrs:
                e = (w, x) if w < x else (x, w)
                colour[e] = (3 - j) if x in u_side else j
            ext = ColouredGraph(G, 2, colour)
            hit = find_mono_copy(ext, Hs)
            if hit is not None:
                raise RuntimeError(
                    f"refuter extension produced a monochromatic copy in colour {hit[0]}"
                )
            return RefuterResult(extension=ext, v=v, W=W, mono_colour=j)
    raise ValueError("no valid (v, W) pair found")


# -- tiny-scale simplicity probe ------------------------------------------------


@dataclass(frozen=True)
class ProbeBudget:
    max_order: int = 6
    max_hosts: int = 20000
    node_budget: int = 10**6


@dataclass(frozen=True)
class ProbeVerdict:
    found: bool
    witness_host: Graph | None
    witness_vertex: int | None
    target_degree: int
    hosts_tested: int
    exhausted: bool  # budget tripped before the sweep finished

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "witness_vertex": self.witness_vertex,
            "target_degree": self.target_degree,
            "hosts_tested": self.hosts_tested,
            "exhausted": self.exhausted,
        }


def _canonical_graphs(n: int, m: int):
    """Non-isomorphic graphs with n vertices and m edges (canonical reps)."""
    seen = set()
    pairs = list(itertools.combinations(range(n), 2))
    for chosen in itertools.combinations(pairs, m):
        G = Graph.from_edges(n, chosen)
        key = G.canonical_form()
        if key in seen:
            continue
        seen.add(key)
        yield G


def simplicity_probe_tiny(H: Graph, q: int, budget: ProbeBudget = ProbeBudget()) -> ProbeVerdict:
    """Search small hosts (by non-decreasing order and size, canonical-form
    deduplicated) for a minimal q-Ramsey graph with a vertex of degree
    q(delta(H)-1)+1.  Exhausted budget is a first-class outcome."""
    Hs = _prepare_target(H)
    if Hs.n > 4:
        raise ValueError("tiny probe supports targets with at most 4 non-isolated vertices")
    if q not in (1, 2):
        raise ValueError("tiny probe supports q in {1, 2}")
    from ramsimple.analysis import neighbourhood_profile

    delta = neighbourhood_profile(Hs).delta
    target = q * (delta - 1) + 1
    tested = 0
    for n in range(1, budget.max_order + 1):
        for m in range(0, n * (n - 1) // 2 + 1):
            for G in _canonical_graphs(n, m):
                if target not in G.degrees():
                    continue
                if min(G.degrees()) < 1:
                    continue  # minimal Ramsey graphs never keep isolated vertices
                if Hs.n <= G.n and find_subgraph_copy(G, Hs) is None:
                    continue
                if Hs.n > G.n:
                    continue
                tested += 1
                if tested > budget.max_hosts:
                    return ProbeVerdict(
                        found=False,
                        witness_host=None,
                        witness_vertex=None,
                        target_degree=target,
                        hosts_tested=tested - 1,
                        exhausted=True,
                    )
                try:
                    rep = is_minimal_ramsey(G, Hs, q, node_budget=budget.node_budget)
                except BudgetExceededError:
                    return ProbeVerdict(
                        found=False,
                        witness_host=None,
                        witness_vertex=None,
                        target_degree=target,
                        hosts_tested=tested,
                        exhausted=True,
                    )
                if rep.is_ramsey and rep.minimal:
                    wv = G.degrees().index(target)
                    return ProbeVerdict(
                        found=True,
                        witness_host=G,
                        witness_vertex=wv,
                        target_degree=target,
                        hosts_tested=tested,
                        exhausted=False,
                    )
    return ProbeVerdict(
        found=False,
        witness_host=None,
        witness_vertex=None,
        target_degree=target,
        hosts_tested=tested,
        exhausted=False,
    )
