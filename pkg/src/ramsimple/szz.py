"""Host graphs certifying that forests admit minimal q-Ramsey graphs with a
degree-1 vertex.

For a forest F with bipartition A u B (|A| = a minimised) the host graph has
three blocks: X (r = q(a-1) vertices), Y (s = q^{r+1} v(F)), and Z (t = sbq
pendants, bq per Y-vertex), with X-Y complete bipartite and y joined to its
pendant block Z_y.  Colouring E(X_i, Y) by i leaves the Z-free part without
monochromatic F; yet any q-colouring of the whole graph yields one, and
find_mono_forest extracts it constructively via majority pendant colours and
colour profiles.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from ramsimple import rng
from ramsimple.errors import BudgetExceededError, GraphFormatError
from ramsimple.graph import ColouredGraph, Graph, _bits, contains_forest_copy

DEFAULT_SZZ_EDGE_CAP = 5 * 10**6


def min_bipartition(F: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Bipartition (A, B) of a forest with |A| minimised, then A
    lexicographically smallest.

    Each component has exactly two proper sides; the smaller one goes to A,
    and equal-sized sides are resolved toward the component's lowest vertex.
    """
    if not F.is_forest():
        raise ValueError("minimum bipartition is defined for forests only")
    if any(not F.adj[v] for v in range(F.n)):
        raise ValueError("strip isolated vertices before bipartitioning")
    A: list[int] = []
    B: list[int] = []
    for comp in sorted(F.component_masks(), key=lambda c: c & -c):
        root = (comp & -comp).bit_length() - 1
        side = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in _bits(F.adj[v] & comp):
                if w not in side:
                    side[w] = 1 - side[v]
                    stack.append(w)
        side0 = sorted(v for v, sd in side.items() if sd == 0)
        side1 = sorted(v for v, sd in side.items() if sd == 1)
        if len(side0) < len(side1):
            small, large = side0, side1
        elif len(side1) < len(side0):
            small, large = side1, side0
        else:
            # Tie: the root (lowest vertex of the component) joins A.
            small, large = side0, side1
        A.extend(small)
        B.extend(large)
    return tuple(sorted(A)), tuple(sorted(B))


@dataclass(frozen=True)
class SzzGraph:
    F: Graph
    q: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    B1: tuple[int, ...]
    Bge2: tuple[int, ...]
    a: int
    b: int
    r: int
    s: int
    t: int
    graph: Graph

    @property
    def X(self) -> range:
        return range(0, self.r)

    @property
    def Y(self) -> range:
        return range(self.r, self.r + self.s)

    @property
    def Z(self) -> range:
        return range(self.r + self.s, self.r + self.s + self.t)

    def z_block(self, y: int) -> range:
        """Pendant block of Y-vertex y (b*q consecutive vertices)."""
        i = y - self.r
        base = self.r + self.s + i * self.b * self.q
        return range(base, base + self.b * self.q)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "r": self.r,
            "s": self.s,
            "t": self.t,
            "q": self.q,
            "n": self.graph.n,
            "m": self.graph.m,
        }


def construct_szz(F: Graph, q: int, edge_cap: int | None = None) -> SzzGraph:
    """Build the host graph for (F, q): r = q(a-1), s = q^{r+1} v(F),
    t = s*b*q."""
    if q < 2:
        raise ValueError("construction needs at least two colours")
    if not F.is_forest():
        raise ValueError("target must be a forest")
    if F.n < 1 or any(not F.adj[v] for v in range(F.n)):
        raise ValueError("strip isolated vertices from the forest first")
    A, B = min_bipartition(F)
    a, b = len(A), len(B)
    B1 = tuple(v for v in B if F.degree(v) == 1)
    Bge2 = tuple(v for v in B if F.degree(v) >= 2)
    if len(Bge2) > a - 1:
        raise AssertionError("bipartition invariant |B>=2| <= a-1 violated")
    r = q * (a - 1)
    s = q ** (r + 1) * F.n
    t = s * b * q
    cap = edge_cap
    if cap is None:
        cap = int(os.environ.get("RAMSIMPLE_SZZ_EDGE_CAP") or DEFAULT_SZZ_EDGE_CAP)
    if r * s + t > cap:
        raise BudgetExceededError(
            f"host graph needs {r * s + t} edges, cap is {cap}"
        )
    edges = []
    for x in range(r):
        for y in range(r, r + s):
            edges.append((x, y))
    zbase = r + s
    bq = b * q
    for i in range(s):
        y = r + i
        for z in range(zbase + i * bq, zbase + (i + 1) * bq):
            edges.append((y, z))
    G = Graph.from_edges(r + s + t, edges)
    return SzzGraph(F=F, q=q, A=A, B=B, B1=B1, Bge2=Bge2, a=a, b=b, r=r, s=s, t=t, graph=G)


def write_szz(szz: SzzGraph) -> str:
    head = f"szz {szz.a} {szz.b} {szz.r} {szz.s} {szz.t} {szz.q}"
    lines = [head, f"{szz.graph.n} {szz.graph.m}"]
    lines.extend(f"{u} {v}" for u, v in szz.graph.edges())
    return "\n".join(lines) + "\n"


def colour_G_minus_Z(szz: SzzGraph) -> ColouredGraph:
    """The F-free colouring of the Z-free part: X splits into q consecutive
    blocks of a-1 vertices and E(X_i, Y) gets colour i.  The absence of
    monochromatic F is re-verified by the exact forest scan before returning.
    """
    colour: dict[tuple[int, int], int] = {}
    blk = szz.a - 1
    edges = []
    for x in range(szz.r):
        i = x // blk + 1 if blk else 1
        for y in szz.Y:
            colour[(x, y)] = i
            edges.append((x, y))
    cg = ColouredGraph(Graph.from_edges(szz.graph.n, edges), szz.q, colour)
    for i in range(1, szz.q + 1):
        if contains_forest_copy(cg.colour_class(i), szz.F) is not None:
            raise AssertionError(f"colour class {i} of the Z-free part contains the forest")
    return cg


# -- colourings of the full host ------------------------------------------------


def random_colouring(szz: SzzGraph, seed: int) -> ColouredGraph:
    """Uniform random q-colouring of all host edges (canonical edge order)."""
    edges = szz.graph.edges()
    colour = {e: rng.uniform_below(seed, idx, szz.q) + 1 for idx, e in enumerate(edges)}
    return ColouredGraph(szz.graph, szz.q, colour)


def case2_colouring(szz: SzzGraph, variant: int = 0) -> ColouredGraph:
    """Adversarial colouring that forces the extractor's balanced-profile
    branch: every Y-vertex sees each colour exactly a-1 times on its X-edges.

    Variants rotate which X-block carries which colour and how pendant
    blocks are coloured.
    """
    colour: dict[tuple[int, int], int] = {}
    blk = szz.a - 1
    q = szz.q
    for x in range(szz.r):
        i = (x // blk + variant) % q + 1 if blk else 1
        for y in szz.Y:
            colour[(x, y) if x < y else (y, x)] = i
    pend = variant % q + 1
    for y in szz.Y:
        for idx, z in enumerate(szz.z_block(y)):
            c = pend if variant % 2 == 0 else (idx % q) + 1
            colour[(y, z)] = c
    return ColouredGraph(szz.graph, q, colour)


@dataclass(frozen=True)
class MonoForestResult:
    mapping: dict[int, int]
    colour: int  # true input colour of every embedded edge
    case: int  # 1: a colour repeats >= a times in the profile; 2: balanced
    pendant_colour: int
    profile: tuple[int, ...]
    profile_y: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "mapping": {str(k): v for k, v in sorted(self.mapping.items())},
            "colour": self.colour,
            "case": self.case,
            "pendant_colour": self.pendant_colour,
            "profile": list(self.profile),
        }


def find_mono_forest(szz: SzzGraph, phi: ColouredGraph) -> MonoForestResult:
    """Deterministically extract a monochromatic copy of F from an arbitrary
    q-colouring of the host graph.

    Steps: majority pendant colour per Y-vertex; a pendant-colour class of
    s/q vertices; a colour profile shared by v(F) of them; then either a
    monochromatic complete bipartite block (some colour appears >= a times)
    or the balanced branch embedding A into the profile vertices, degree-1
    B-vertices into pendants, and the rest of B into the matching X-block.
    Failure to produce a valid embedding is an implementation bug and raises.
    """
    if phi.graph != szz.graph:
        raise ValueError("colouring must be over the host graph")
    if phi.q != szz.q:
        raise ValueError("colouring uses the wrong palette size")
    q, a, b, r = szz.q, szz.a, szz.b, szz.r
    F = szz.F
    vF = F.n

    # 1. majority pendant colour and a b-subset of pendants per Y-vertex
    pend_colour: dict[int, int] = {}
    pend_block: dict[int, list[int]] = {}
    for y in szz.Y:
        counts = [0] * (q + 1)
        for z in szz.z_block(y):
            counts[phi.colour_of(y, z)] += 1
        c = max(range(1, q + 1), key=lambda i: (counts[i], -i))
        chosen = [z for z in szz.z_block(y) if phi.colour_of(y, z) == c][:b]
        pend_colour[y] = c
        pend_block[y] = chosen

    # 2. pendant-colour class of exactly s/q vertices (pigeonhole)
    gamma = None
    for c in range(1, q + 1):
        members = [y for y in szz.Y if pend_colour[y] == c]
        if len(members) >= szz.s // q:
            gamma = c
            y_class = members[: szz.s // q]
            break
    if gamma is None:
        raise AssertionError("pendant pigeonhole failed")

    # 3. a colour profile shared by at least v(F) vertices
    buckets: dict[tuple[int, ...], list[int]] = {}
    for y in y_class:
        prof = tuple(phi.colour_of(x, y) for x in range(r))
        buckets.setdefault(prof, []).append(y)
    shared = sorted(p for p, ys in buckets.items() if len(ys) >= vF)
    if not shared:
        raise AssertionError("profile pigeonhole failed")
    profile = shared[0]
    ys = buckets[profile][:vF]

    # 4. case split
    counts = [0] * (q + 1)
    for c in profile:
        counts[c] += 1
    rich = [c for c in range(1, q + 1) if counts[c] >= a]
    mapping: dict[int, int] = {}
    if rich:
        case = 1
        colour = rich[0]
        x_block = [x for x in range(r) if profile[x] == colour][:a]
        for fv, x in zip(szz.A, x_block):
            mapping[fv] = x
        for fv, y in zip(szz.B, ys):
            mapping[fv] = y
    else:
        case = 2
        if any(counts[c] != a - 1 for c in range(1, q + 1)):
            raise AssertionError("profile neither rich nor balanced")
        colour = gamma
        x_prime = [x for x in range(r) if profile[x] == gamma]
        for fv, y in zip(sorted(szz.A), ys):
            mapping[fv] = y
        next_pend = {y: 0 for y in ys}
        for fv in szz.B1:
            parent = next(iter(_bits(F.adj[fv])))
            py = mapping[parent]
            mapping[fv] = pend_block[py][next_pend[py]]
            next_pend[py] += 1
        for fv, x in zip(szz.Bge2, x_prime):
            mapping[fv] = x

    # validation, independent of how the mapping was produced
    if len(set(mapping.values())) != vF or len(mapping) != vF:
        raise AssertionError("extracted mapping is not a bijection onto v(F) vertices")
    for u, v in F.edges():
        gu, gv = mapping[u], mapping[v]
        if not szz.graph.has_edge(gu, gv):
            raise AssertionError(f"forest edge ({u},{v}) missing in the host")
        if phi.colour_of(gu, gv) != colour:
            raise AssertionError(f"forest edge ({u},{v}) has the wrong colour")
    return MonoForestResult(
        mapping=mapping,
        colour=colour,
        case=case,
        pendant_colour=gamma,
        profile=profile,
        profile_y=tuple(ys),
    )
