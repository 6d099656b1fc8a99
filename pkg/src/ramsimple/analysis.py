"""Minimum-degree neighbourhood profiles, the well-behavedness checker, and
seeded Monte-Carlo validation of random-graph structure properties.

Asymptotic ("a.a.s.") statements are operationalised as finite-n estimates:
a property is empirically confirmed when the 95% lower confidence bound of
the success fraction exceeds 0.9 at the tested n.  That is a configuration
convention, not a truth claim.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from scipy.stats import beta as _beta

from ramsimple import _kernels as kern
from ramsimple import rng
from ramsimple.graph import (
    Graph,
    _bits,
    every_edge_in_triangle,
    kern_bfs,
    sample_gnp,
    vertex_cut_below,
)


@dataclass(frozen=True)
class NeighbourhoodProfile:
    """The minimum-degree vertex u, its degree, and F = H[N(u)]."""

    u: int
    unique_min: bool
    delta: int
    F: Graph
    f_vertices: tuple[int, ...]  # original labels; position = label in F
    lambda_F: int
    Delta_F: int
    e_F: int
    is_forest_F: bool

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "unique_min": self.unique_min,
            "delta": self.delta,
            "f_vertices": list(self.f_vertices),
            "lambda_F": self.lambda_F,
            "Delta_F": self.Delta_F,
            "e_F": self.e_F,
            "is_forest_F": self.is_forest_F,
        }


def neighbourhood_profile(H: Graph) -> NeighbourhoodProfile:
    """Profile of the minimum-degree vertex (lowest index on ties)."""
    if H.n < 1:
        raise ValueError("need at least one vertex")
    degs = H.degrees()
    delta = min(degs)
    u = degs.index(delta)
    unique = degs.count(delta) == 1
    nbrs = sorted(_bits(H.adj[u]))
    F, _ = H.subgraph(nbrs)
    lam = max((c.bit_count() for c in F.component_masks()), default=0)
    return NeighbourhoodProfile(
        u=u,
        unique_min=unique,
        delta=delta,
        F=F,
        f_vertices=tuple(nbrs),
        lambda_F=lam,
        Delta_F=max(F.degrees(), default=0),
        e_F=F.m,
        is_forest_F=F.is_forest(),
    )


@dataclass(frozen=True)
class WellBehavedReport:
    """Pass/fail with witnesses for the four structural properties.

    W1 unique minimum-degree vertex; W2 every pair has codegree at most
    delta/2; W3 3-connected; W4 removing delta vertices cannot create a
    component with between delta/2 and n/2 vertices.
    """

    delta: int
    w1: bool
    w1_witness: tuple[int, int] | None
    w2: bool
    w2_witness: tuple[int, int, int] | None  # (u, v, codegree)
    w3: bool
    w3_witness: tuple[int, ...] | None
    w4: bool
    w4_witness: tuple[tuple[int, ...], tuple[int, ...]] | None  # (cut, component)
    w4_mode: str  # "exact" | "sampled"
    w4_checked: int
    overall: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "overall", self.w1 and self.w2 and self.w3 and self.w4)

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "w1": self.w1,
            "w1_witness": list(self.w1_witness) if self.w1_witness else None,
            "w2": self.w2,
            "w2_witness": list(self.w2_witness) if self.w2_witness else None,
            "w3": self.w3,
            "w3_witness": list(self.w3_witness) if self.w3_witness is not None else None,
            "w4": self.w4,
            "w4_witness": [list(x) for x in self.w4_witness] if self.w4_witness else None,
            "w4_mode": self.w4_mode,
            "w4_checked": self.w4_checked,
            "overall": self.overall,
        }


W4_EXHAUSTIVE_CAP = 10**6


def well_behaved(
    H: Graph,
    seed: int = 0,
    w4_samples: int = 200,
    w4_exhaustive_cap: int = W4_EXHAUSTIVE_CAP,
) -> WellBehavedReport:
    """Exact W1-W3; W4 exact when C(n, delta) fits the cap, else over a
    seeded sample of cut-sets (reported as "sampled")."""
    n = H.n
    if n < 4:
        raise ValueError("well-behavedness needs at least 4 vertices")
    degs = H.degrees()
    delta = min(degs)
    mins = [v for v in range(n) if degs[v] == delta]
    w1 = len(mins) == 1
    w1_wit = None if w1 else (mins[0], mins[1])

    cod, cu, cv = kern.max_codegree(list(H.adj), n)
    w2 = 2 * cod <= delta
    w2_wit = None if w2 else (cu, cv, cod)

    w3, w3_wit = vertex_cut_below(H, 3)

    lo = (delta + 1) // 2
    hi = n // 2
    full = (1 << n) - 1
    exact = math.comb(n, delta) <= w4_exhaustive_cap
    w4 = True
    w4_wit = None
    checked = 0

    def scan(cut: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        mask = full
        for c in cut:
            mask &= ~(1 << c)
        rem = mask
        while rem:
            start = rem & -rem
            comp = kern_bfs(H.adj, mask, start)
            size = comp.bit_count()
            if lo <= size <= hi:
                return cut, tuple(_bits(comp))
            rem &= ~comp
        return None

    if exact:
        cuts = itertools.combinations(range(n), delta)
    else:
        cuts = (
            rng.sample_subset(rng.derive(seed, j), delta, n) for j in range(w4_samples)
        )
    for cut in cuts:
        checked += 1
        wit = scan(tuple(cut))
        if wit is not None:
            w4 = False
            w4_wit = wit
            break

    return WellBehavedReport(
        delta=delta,
        w1=w1,
        w1_witness=w1_wit,
        w2=w2,
        w2_witness=w2_wit,
        w3=w3,
        w3_witness=w3_wit,
        w4=w4,
        w4_witness=w4_wit,
        w4_mode="exact" if exact else "sampled",
        w4_checked=checked,
    )


# -- concentration calculators -------------------------------------------------


def chernoff_tail(mu: float, eps: float, side: str) -> float:
    """Binomial tail bound: exp(-mu*eps^2/3) above the mean, exp(-mu*eps^2/2)
    below it."""
    if mu <= 0:
        raise ValueError("mean must be positive")
    if not 0 < eps < 1:
        raise ValueError("relative deviation must lie in (0,1)")
    if side == "upper":
        return math.exp(-mu * eps * eps / 3)
    if side == "lower":
        return math.exp(-mu * eps * eps / 2)
    raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")


def chernoff_large(mu: float, t: float) -> float:
    """Large-deviation bound exp(-t), valid for t >= 7*mu."""
    if mu <= 0:
        raise ValueError("mean must be positive")
    if t < 7 * mu:
        raise ValueError("large-deviation form needs t >= 7*mu")
    return math.exp(-t)


# -- Monte-Carlo estimation ----------------------------------------------------


def _pred_is_forest(G: Graph, p: float, aux_seed: int) -> bool:
    return G.is_forest()


def _pred_every_edge_in_triangle(G: Graph, p: float, aux_seed: int) -> bool:
    return every_edge_in_triangle(G)


def _pred_nbhd_edgeless(G: Graph, p: float, aux_seed: int) -> bool:
    return neighbourhood_profile(G).e_F == 0


def _pred_well_behaved(G: Graph, p: float, aux_seed: int) -> bool:
    return well_behaved(G, seed=aux_seed).overall


def _pred_degree_concentration(G: Graph, p: float, aux_seed: int) -> bool:
    mean = G.n * p
    tol = 0.2 * mean
    return all(abs(d - mean) <= tol for d in G.degrees())


PREDICATES = {
    "is_forest": _pred_is_forest,
    "every_edge_in_triangle": _pred_every_edge_in_triangle,
    "nbhd_edgeless": _pred_nbhd_edgeless,
    "well_behaved": _pred_well_behaved,
    "degree_concentration": _pred_degree_concentration,
}


@dataclass(frozen=True)
class EstimateReport:
    property: str
    n: int
    p: float
    trials: int
    seed: int
    successes: int
    estimate: float
    lo: float
    hi: float

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "successes": self.successes,
            "estimate": self.estimate,
            "lo": self.lo,
            "hi": self.hi,
        }

    def csv_row(self) -> str:
        return (
            f"{self.property},{self.n},{self.p!r},{self.trials},"
            f"{self.successes},{self.estimate!r},{self.lo!r},{self.hi!r},{self.seed}"
        )


CSV_HEADER = "property,n,p,trials,successes,estimate,lo,hi,seed"


def clopper_pearson(successes: int, trials: int, alpha: float = 0.05) -> tuple[float, float]:
    """Exact binomial confidence interval; always contains successes/trials."""
    if not 0 <= successes <= trials:
        raise ValueError("successes outside 0..trials")
    lo = 0.0 if successes == 0 else float(_beta.ppf(alpha / 2, successes, trials - successes + 1))
    hi = 1.0 if successes == trials else float(_beta.ppf(1 - alpha / 2, successes + 1, trials - successes))
    return lo, hi


def _run_trial(prop: str, n: int, p: float, seed: int, t: int) -> bool:
    gseed = rng.derive(seed, t)
    G = sample_gnp(n, p, gseed)
    return bool(PREDICATES[prop](G, p, rng.derive(gseed, 1)))


def _mc_chunk(args) -> int:
    prop, n, p, seed, lo, hi = args
    return sum(_run_trial(prop, n, p, seed, t) for t in range(lo, hi))


def monte_carlo(
    prop: str, n: int, p: float, trials: int, seed: int, threads: int = 1
) -> EstimateReport:
    """Success fraction of a registered predicate over seeded G(n,p) trials.

    Trial t uses the derived seed (seed, t), so the successes count is
    independent of worker count and chunking.
    """
    if prop not in PREDICATES:
        raise ValueError(f"unknown predicate {prop!r}; known: {sorted(PREDICATES)}")
    if trials < 1:
        raise ValueError("need at least one trial")
    if threads > 1:
        step = max(1, (trials + threads - 1) // threads)
        chunks = [
            (prop, n, p, seed, lo, min(lo + step, trials))
            for lo in range(0, trials, step)
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            successes = sum(pool.map(_mc_chunk, chunks))
    else:
        successes = sum(_run_trial(prop, n, p, seed, t) for t in range(trials))
    lo, hi = clopper_pearson(successes, trials)
    return EstimateReport(
        property=prop,
        n=n,
        p=p,
        trials=trials,
        seed=seed,
        successes=successes,
        estimate=successes / trials,
        lo=lo,
        hi=hi,
    )


# -- induced-subgraph edge counts ----------------------------------------------


@dataclass(frozen=True)
class DenseSubsetReport:
    n: int
    p: float
    threshold_size: int
    capped: bool  # threshold exceeded n: only the full graph was checked
    mode: str  # "exhaustive" | "sampled"
    subsets_checked: int
    min_ratio: float
    min_subset: tuple[int, ...]
    passed: bool  # min ratio >= 1/4

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "threshold_size": self.threshold_size,
            "capped": self.capped,
            "mode": self.mode,
            "subsets_checked": self.subsets_checked,
            "min_ratio": self.min_ratio,
            "min_subset": list(self.min_subset),
            "passed": self.passed,
        }


def dense_subset_edge_check(
    H: Graph,
    p: float,
    samples: int = 10**4,
    seed: int = 0,
    exhaustive_max_n: int = 20,
) -> DenseSubsetReport:
    """Minimum of e(S)/(|S|^2 p) over vertex subsets at the threshold size
    ceil(20 log n / p), capped at n.  Exhaustive for small graphs, seeded
    sampling otherwise; passing means the minimum stays >= 1/4."""
    if not 0 < p < 1:
        raise ValueError("probability must lie in (0,1)")
    n = H.n
    if n < 2:
        raise ValueError("need at least two vertices")
    s0 = math.ceil(20 * math.log(n) / p)
    capped = s0 > n
    size = min(s0, n)

    def ratio(mask: int, s: int) -> float:
        e = sum((H.adj[v] & mask).bit_count() for v in _bits(mask)) // 2
        return e / (s * s * p)

    best = None
    best_set: tuple[int, ...] = ()
    checked = 0
    if capped:
        mode = "exhaustive"
        mask = (1 << n) - 1
        best = ratio(mask, n)
        best_set = tuple(range(n))
        checked = 1
    elif n <= exhaustive_max_n:
        mode = "exhaustive"
        for s in range(size, n + 1):
            for sub in itertools.combinations(range(n), s):
                mask = 0
                for v in sub:
                    mask |= 1 << v
                r = ratio(mask, s)
                checked += 1
                if best is None or r < best:
                    best, best_set = r, sub
    else:
        mode = "sampled"
        for j in range(samples):
            sub = rng.sample_subset(rng.derive(seed, j), size, n)
            mask = 0
            for v in sub:
                mask |= 1 << v
            r = ratio(mask, size)
            checked += 1
            if best is None or r < best:
                best, best_set = r, sub
    return DenseSubsetReport(
        n=n,
        p=p,
        threshold_size=s0,
        capped=capped,
        mode=mode,
        subsets_checked=checked,
        min_ratio=best,
        min_subset=tuple(best_set),
        passed=best >= 0.25,
    )
