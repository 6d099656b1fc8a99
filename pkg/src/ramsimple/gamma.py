"""Coloured gadget graphs on q(delta-1)+1 vertices and the two conditions
they must certify: bounded per-colour degree, and a monochromatic copy of the
forest F inside every delta-subset in every colour.

Three constructions: an affine-plane graph whose colour classes are the first
q parallel classes of lines (disjoint cliques), a seeded random graph with a
uniform random colouring, and the empty graph (for edgeless F).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ramsimple import _kernels as kern
from ramsimple import rng
from ramsimple.errors import BudgetExceededError, GraphFormatError
from ramsimple.graph import (
    ColouredGraph,
    Graph,
    _bits,
    contains_forest_copy,
    forest_embedding_plan,
    sample_gnp,
)
from ramsimple.graphio import parse_coloured, write_coloured

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(x: int) -> bool:
    """Deterministic Miller-Rabin (the 12 fixed bases are exact far beyond
    64-bit inputs)."""
    if x < 2:
        return False
    for b in _MR_BASES:
        if x % b == 0:
            return x == b
    d = x - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        y = pow(b, d, x)
        if y in (1, x - 1):
            continue
        for _ in range(r - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def largest_prime_leq(m: int) -> int:
    if m < 2:
        raise ValueError(f"no prime is <= {m}")
    x = m
    while not _is_prime(x):
        x -= 1
    return x


# -- affine construction -------------------------------------------------------


@dataclass(frozen=True)
class AffineGamma:
    """Points of the order-s affine plane, edges within the first q parallel
    classes of lines, coloured by class."""

    s: int
    q: int
    points: tuple[tuple[int, int], ...]
    coloured: ColouredGraph

    @property
    def n_points(self) -> int:
        return len(self.points)


def plane_line_id(s: int, cls: int, x: int, y: int) -> int:
    """Which line of parallel class ``cls`` (1..s+1) the point lies on.

    Classes 1..s are slopes 0..s-1 (line id = y - t*x mod s); class s+1 is
    the vertical class (line id = x).
    """
    if cls == s + 1:
        return x
    t = cls - 1
    return (y - t * x) % s


def validate_plane_structure(s: int) -> None:
    """Assert the s+1 parallel classes each split the s^2 points into s lines
    of s points.  Cheap enough to run on every constructed plane."""
    points = [(x, y) for x in range(s) for y in range(s)]
    for cls in range(1, s + 2):
        buckets: dict[int, int] = {}
        for x, y in points:
            lid = plane_line_id(s, cls, x, y)
            buckets[lid] = buckets.get(lid, 0) + 1
        if len(buckets) != s or any(c != s for c in buckets.values()):
            raise AssertionError(f"class {cls} of the order-{s} plane is not a partition")


def affine_gamma_from_plane(s: int, q: int, n_points: int, validate: bool = True) -> AffineGamma:
    """Direct construction: first ``n_points`` plane points in row-major
    order (x then y), edges within the first q parallel classes."""
    if not _is_prime(s):
        raise ValueError(f"plane order {s} is not prime")
    if q > s:
        raise ValueError(f"colour count {q} exceeds plane order {s}")
    if not 1 <= n_points <= s * s:
        raise ValueError(f"point count {n_points} outside 1..{s * s}")
    points = [(x, y) for x in range(s) for y in range(s)][:n_points]
    colour: dict[tuple[int, int], int] = {}
    edges = []
    for i in range(n_points - 1):
        x1, y1 = points[i]
        for j in range(i + 1, n_points):
            x2, y2 = points[j]
            if x1 == x2:
                continue  # vertical class s+1, never among the first q <= s
            t = (y2 - y1) * pow(x2 - x1, -1, s) % s
            if t + 1 <= q:
                edges.append((i, j))
                colour[(i, j)] = t + 1
    cg = ColouredGraph(Graph.from_edges(n_points, edges), q, colour)
    if validate and s <= 101:
        validate_plane_structure(s)
    return AffineGamma(s=s, q=q, points=tuple(points), coloured=cg)


def build_affine_gamma(delta: int, q: int, lam: int, eps: float, validate: bool = True) -> AffineGamma:
    """Affine gadget graph for parameters (delta, q, lambda(F), eps).

    Fails loudly, naming the violated inequality, when the parameters are
    infeasible at this finite scale.
    """
    if not 0 < eps < 1:
        raise ValueError("slack eps must lie in (0,1)")
    if delta < 1 or q < 1 or lam < 1:
        raise ValueError("delta, q and lambda must be positive")
    bound = (1 - eps) * delta / lam
    m = math.floor(bound + 1e-9)
    if m < 2:
        raise ValueError(
            f"infeasible: no prime <= (1-eps)*delta/lambda = {bound:.4f}"
        )
    s = largest_prime_leq(m)
    n_points = q * (delta - 1) + 1
    if q > s:
        raise ValueError(f"infeasible: q = {q} > s = {s}")
    if n_points > s * s:
        raise ValueError(
            f"infeasible: q(delta-1)+1 = {n_points} > s^2 = {s * s}"
        )
    if math.floor((1 - eps) * delta / s + 1e-9) < lam:
        raise ValueError(
            f"infeasible: pigeonhole embedding condition floor((1-eps)*delta/s) "
            f"= {math.floor((1 - eps) * delta / s + 1e-9)} < lambda = {lam}"
        )
    return affine_gamma_from_plane(s, q, n_points, validate=validate)


def write_affine(ag: AffineGamma) -> str:
    lines = [f"affine {ag.s} {ag.q} {ag.n_points}"]
    lines.extend(f"{x} {y}" for x, y in ag.points)
    return "\n".join(lines) + "\n" + write_coloured(ag.coloured)


def parse_affine(text: str) -> AffineGamma:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("affine"):
        raise GraphFormatError("expected 'affine s q N' header")
    parts = lines[0].split()
    if len(parts) != 4:
        raise GraphFormatError(f"bad affine header {lines[0]!r}")
    s, q, n_points = int(parts[1]), int(parts[2]), int(parts[3])
    if len(lines) < 1 + n_points + 1:
        raise GraphFormatError("truncated affine file")
    points = []
    for ln in lines[1 : 1 + n_points]:
        x, y = (int(t) for t in ln.split())
        points.append((x, y))
    cg = parse_coloured("\n".join(lines[1 + n_points :]))
    ag = AffineGamma(s=s, q=q, points=tuple(points), coloured=cg)
    rebuilt = affine_gamma_from_plane(s, q, n_points, validate=False)
    if rebuilt.coloured != cg or rebuilt.points != ag.points:
        raise GraphFormatError("affine file does not match its parameters")
    return ag


# -- other constructions ---------------------------------------------------------

_GAMMA_GRAPH_SALT = 0
_GAMMA_COLOUR_SALT = 1


def build_random_gamma(delta: int, q: int, seed: int) -> ColouredGraph:
    """G(N, 1/2) on N = q(delta-1)+1 vertices with a uniform random
    colouring, both driven by streams derived from ``seed``."""
    if delta < 1 or q < 1:
        raise ValueError("delta and q must be positive")
    n = q * (delta - 1) + 1
    if n == 1:
        return ColouredGraph(Graph.empty(1), q, {})
    G = sample_gnp(n, 0.5, rng.derive(seed, _GAMMA_GRAPH_SALT))
    cseed = rng.derive(seed, _GAMMA_COLOUR_SALT)
    colour = {
        e: rng.uniform_below(cseed, idx, q) + 1 for idx, e in enumerate(G.edges())
    }
    return ColouredGraph(G, q, colour)


def build_empty_gamma(delta: int, q: int) -> ColouredGraph:
    if delta < 1 or q < 1:
        raise ValueError("delta and q must be positive")
    return ColouredGraph(Graph.empty(q * (delta - 1) + 1), q, {})


# -- condition checks -------------------------------------------------------------


def check_degree_condition(cg: ColouredGraph, delta: int) -> tuple[bool, int]:
    """True iff every colour class has maximum degree at most delta-1;
    also returns the maximum per-colour degree observed."""
    worst = 0
    for i in range(1, cg.q + 1):
        rows = cg.class_rows(i)
        worst = max(worst, max((r.bit_count() for r in rows), default=0))
    return worst <= delta - 1, worst


@dataclass(frozen=True)
class GammaCheckReport:
    degree_ok: bool
    max_colour_degree: int
    cover_ok: bool
    mode: str  # "exhaustive" | "sampled"
    samples_checked: int
    witness: tuple[tuple[int, ...], int] | None  # (U, colour) that lacks a copy

    def to_dict(self) -> dict:
        return {
            "degree_ok": self.degree_ok,
            "max_colour_degree": self.max_colour_degree,
            "cover_ok": self.cover_ok,
            "mode": self.mode,
            "samples_checked": self.samples_checked,
            "witness": (
                [list(self.witness[0]), self.witness[1]] if self.witness else None
            ),
        }


COVER_EXHAUSTIVE_CAP = 10**7


def _is_disjoint_cliques(rows: list[int], n: int, mask: int) -> bool:
    from ramsimple.graph import kern_bfs

    rem = mask
    while rem:
        start = rem & -rem
        comp = kern_bfs(rows, mask, start)
        size = comp.bit_count()
        edges = sum((rows[v] & comp).bit_count() for v in _bits(comp)) // 2
        if edges != size * (size - 1) // 2:
            return False
        rem &= ~comp
    return True


def _cover_subset_ok(
    class_rows: list[list[int]],
    n: int,
    parents: list[int],
    fdeg: list[int],
    u_mask: int,
    clique_structured: list[bool],
    forest: Graph | None,
) -> int:
    """0 when every colour holds a copy, else 1-based index of a failing colour."""
    for idx, rows in enumerate(class_rows):
        images = kern.forest_embed(rows, n, parents, fdeg, u_mask)
        if images is None:
            return idx + 1
        if clique_structured[idx] and forest is not None:
            # Cross-validate the pigeonhole embedder on clique-structured
            # classes: when it finds a copy, the copy must be genuine.
            host = Graph(n, tuple(rows), _checked=True)
            emb = embed_forest_pigeonhole(host, forest, allowed_mask=u_mask)
            if emb is not None:
                _assert_embedding(host, forest, emb)
    return 0


def _cover_chunk(args) -> tuple[int, int] | None:
    (class_rows, n, parents, fdeg, delta, seed, lo, hi, cliq, forest_edges, fn) = args
    forest = Graph.from_edges(fn, forest_edges) if fn is not None else None
    for j in range(lo, hi):
        u = rng.sample_subset(rng.derive(seed, j), delta, n)
        mask = 0
        for v in u:
            mask |= 1 << v
        bad = _cover_subset_ok(class_rows, n, parents, fdeg, mask, cliq, forest)
        if bad:
            return j, bad
    return None


def check_cover_condition(
    cg: ColouredGraph,
    F: Graph,
    delta: int,
    mode: str = "sampled",
    samples: int = 10**4,
    seed: int = 0,
    exhaustive_cap: int = COVER_EXHAUSTIVE_CAP,
    threads: int = 1,
) -> GammaCheckReport:
    """Does every delta-subset of V(Gamma) hold a monochromatic copy of F in
    every colour?  Exhaustive mode enumerates all subsets (refusing when
    C(n, delta) exceeds the cap); sampled mode tests seeded uniform subsets.

    The decision per (U, colour) is exact backtracking forest embedding; on
    clique-structured colour classes the greedy pigeonhole embedder is run as
    a cross-check of any copy it produces.
    """
    n = cg.graph.n
    if delta > n:
        raise ValueError(f"delta = {delta} exceeds v(Gamma) = {n}")
    if not F.is_forest():
        raise ValueError("F must be a forest (after stripping isolated vertices)")
    live = [v for v in range(F.n) if F.adj[v]]
    if live:
        Fs, _ = F.subgraph(live)
        _, parents, fdeg = forest_embedding_plan(Fs)
        forest = Fs
    else:
        parents, fdeg, forest = [], [], None
    class_rows = [cg.class_rows(i) for i in range(1, cg.q + 1)]
    full = (1 << n) - 1
    cliq = [_is_disjoint_cliques(rows, n, full) for rows in class_rows]
    degree_ok, max_deg = check_degree_condition(cg, delta)

    checked = 0
    witness = None
    if mode == "exhaustive":
        total = math.comb(n, delta)
        if total > exhaustive_cap:
            raise BudgetExceededError(
                f"exhaustive cover check needs C({n},{delta}) = {total} subsets, "
                f"cap is {exhaustive_cap}"
            )
        for u in itertools.combinations(range(n), delta):
            checked += 1
            mask = 0
            for v in u:
                mask |= 1 << v
            bad = _cover_subset_ok(class_rows, n, parents, fdeg, mask, cliq, forest)
            if bad:
                witness = (u, bad)
                break
    elif mode == "sampled":
        fe = forest.edges() if forest is not None else None
        fn = forest.n if forest is not None else None
        if threads > 1:
            step = max(1, (samples + threads - 1) // threads)
            chunks = [
                (class_rows, n, parents, fdeg, delta, seed, lo, min(lo + step, samples), cliq, fe, fn)
                for lo in range(0, samples, step)
            ]
            hits = []
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for res in pool.map(_cover_chunk, chunks):
                    if res is not None:
                        hits.append(res)
            checked = samples
            if hits:
                j, bad = min(hits)
                witness = (rng.sample_subset(rng.derive(seed, j), delta, n), bad)
        else:
            for j in range(samples):
                checked += 1
                u = rng.sample_subset(rng.derive(seed, j), delta, n)
                mask = 0
                for v in u:
                    mask |= 1 << v
                bad = _cover_subset_ok(class_rows, n, parents, fdeg, mask, cliq, forest)
                if bad:
                    witness = (u, bad)
                    break
    else:
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")

    return GammaCheckReport(
        degree_ok=degree_ok,
        max_colour_degree=max_deg,
        cover_ok=witness is None,
        mode=mode,
        samples_checked=checked,
        witness=witness,
    )


# -- embedding strategies ----------------------------------------------------------


def _assert_embedding(host: Graph, F: Graph, emb: dict[int, int]) -> None:
    if len(set(emb.values())) != len(emb):
        raise AssertionError("embedding not injective")
    for a, b in F.edges():
        if a in emb and b in emb and not host.has_edge(emb[a], emb[b]):
            raise AssertionError(f"forest edge ({a},{b}) not carried by the host")


def embed_forest_pigeonhole(
    host: Graph, F: Graph, allowed_mask: int | None = None
) -> dict[int, int] | None:
    """Greedy clique-pigeonhole embedding: host restricted to the mask must be
    a disjoint union of cliques; trees go largest-first into the clique with
    the most unused allowed vertices."""
    mask = (1 << host.n) - 1 if allowed_mask is None else allowed_mask
    rows = list(host.induced_rows(mask))
    if not _is_disjoint_cliques(rows, host.n, mask):
        raise ValueError("pigeonhole embedding needs a disjoint union of cliques")
    from ramsimple.graph import kern_bfs

    cliques = []
    rem = mask
    while rem:
        start = rem & -rem
        comp = kern_bfs(rows, mask, start)
        cliques.append(comp)
        rem &= ~comp
    live = [v for v in range(F.n) if F.adj[v]]
    if not live:
        return {}
    Fs, old = F.subgraph(live)
    comps = sorted(Fs.component_masks(), key=lambda c: (-c.bit_count(), c & -c))
    used = 0
    out: dict[int, int] = {}
    for comp in comps:
        size = comp.bit_count()
        best = None
        for cl in cliques:
            free = (cl & ~used).bit_count()
            key = (-free, cl & -cl)
            if free >= size and (best is None or key < best[0]):
                best = (key, cl)
        if best is None:
            return None
        slots = list(_bits(best[1] & ~used))[:size]
        for fv, hv in zip(sorted(_bits(comp)), slots):
            out[old[fv]] = hv
            used |= 1 << hv
    _assert_embedding(host, F, out)
    return out


def embed_forest_peeling(
    host: Graph,
    F: Graph,
    threshold: int | None = None,
    allowed_mask: int | None = None,
) -> dict[int, int] | None:
    """Peel vertices of degree below the threshold, then greedily embed each
    tree by BFS through unused neighbours in the surviving core.

    Default threshold: ceil(average degree / 2) of the restricted host.
    Greedy, not exact: a None here does not certify absence.
    """
    mask = (1 << host.n) - 1 if allowed_mask is None else allowed_mask
    nverts = mask.bit_count()
    if nverts == 0:
        return None
    rows = list(host.induced_rows(mask))
    if threshold is None:
        edges = sum((rows[v]).bit_count() for v in _bits(mask)) // 2
        threshold = math.ceil(edges / nverts) if nverts else 0  # ceil(avg/2)
    core = mask
    changed = True
    while changed:
        changed = False
        for v in _bits(core):
            if (rows[v] & core).bit_count() < threshold:
                core &= ~(1 << v)
                changed = True
    live = [v for v in range(F.n) if F.adj[v]]
    if not live:
        return {}
    Fs, old = F.subgraph(live)
    order, parents, _ = forest_embedding_plan(Fs)
    used = 0
    images: list[int] = []
    for pos in range(len(order)):
        p = parents[pos]
        cand = (core if p < 0 else rows[images[p]] & core) & ~used
        if not cand:
            return None
        hv = (cand & -cand).bit_length() - 1
        images.append(hv)
        used |= 1 << hv
    out = {old[order[i]]: images[i] for i in range(len(order))}
    _assert_embedding(host, F, out)
    return out
