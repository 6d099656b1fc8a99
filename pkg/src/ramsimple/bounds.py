"""Closed-form bounds on the simplicity threshold.

Lower bounds come from the two gadget constructions (the affine feasibility
sweep and the delta/(80 log n) form); upper bounds from the max-degree and
edge-count packing obstructions.  All emitted numbers are the leading-order
formulas with o(1) terms dropped, and the reports label them that way: these
are finite-n evaluations of asymptotic statements, not truth claims.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from ramsimple import rng
from ramsimple.analysis import NeighbourhoodProfile
from ramsimple.graph import Graph, _bits

INF = math.inf
DEFAULT_LOG_CONSTANT = 80


def affine_feasible_qmax(delta: int, lam: int, eps: float) -> int:
    """Largest q for which the affine construction's preconditions hold at
    the given eps (0 when even q=1 is infeasible)."""
    from ramsimple.gamma import largest_prime_leq

    if not 0 < eps < 1:
        raise ValueError("slack eps must lie in (0,1)")
    bound = (1 - eps) * delta / lam
    m = math.floor(bound + 1e-9)
    if m < 2:
        return 0
    s = largest_prime_leq(m)
    if math.floor((1 - eps) * delta / s + 1e-9) < lam:
        return 0
    qmax = s
    if delta >= 2:
        qmax = min(qmax, (s * s - 1) // (delta - 1))
    return max(0, qmax)


@dataclass(frozen=True)
class BoundsReport:
    delta: int
    lambda_F: int
    Delta_F: int
    e_F: int
    n: int
    eps: float
    log_constant: int
    lower_affine: float  # largest feasible q, or inf in the edgeless regime
    lower_log: float
    lower: float
    upper_maxdeg: float
    upper_edges: float
    upper: float
    simple_for_all_tested_q: bool  # edgeless F: no finite obstruction

    def to_dict(self) -> dict:
        def enc(x: float):
            return "inf" if x == INF else int(x)

        return {
            "delta": self.delta,
            "lambda_F": self.lambda_F,
            "Delta_F": self.Delta_F,
            "e_F": self.e_F,
            "n": self.n,
            "eps": self.eps,
            "log_constant": self.log_constant,
            "lower_affine": enc(self.lower_affine),
            "lower_log": enc(self.lower_log),
            "lower": enc(self.lower),
            "upper_maxdeg": enc(self.upper_maxdeg),
            "upper_edges": enc(self.upper_edges),
            "upper": enc(self.upper),
            "simple_for_all_tested_q": self.simple_for_all_tested_q,
            "scale": "leading-order",
        }


def qtilde_bounds(
    profile: NeighbourhoodProfile,
    n: int,
    eps: float,
    log_constant: int = DEFAULT_LOG_CONSTANT,
) -> BoundsReport:
    """Bounds on the largest number of colours for which the profiled graph
    can be Ramsey simple.

    Requires a unique minimum-degree vertex; non-unique profiles are refused
    rather than guessed at.
    """
    if not profile.unique_min:
        raise ValueError("bounds need a unique minimum-degree vertex")
    if not 0 < eps < 0.2:
        raise ValueError("eps must lie in (0, 0.2)")
    delta = profile.delta
    lam = profile.lambda_F
    dF = profile.Delta_F
    eF = profile.e_F
    if eF == 0:
        return BoundsReport(
            delta=delta,
            lambda_F=lam,
            Delta_F=dF,
            e_F=eF,
            n=n,
            eps=eps,
            log_constant=log_constant,
            lower_affine=INF,
            lower_log=INF,
            lower=INF,
            upper_maxdeg=INF,
            upper_edges=INF,
            upper=INF,
            simple_for_all_tested_q=True,
        )
    lower_affine = float(affine_feasible_qmax(delta, lam, eps))
    lower_log = float(delta // (log_constant * math.log(n))) if n > 1 else 0.0
    lower = max(lower_affine, lower_log)
    upper_maxdeg = (
        float(math.floor((delta + dF - 1) / dF - 1 / (delta - 1))) if dF >= 1 else INF
    )
    upper_edges = float(math.comb(delta, 2) // eF) if eF >= 1 else INF
    return BoundsReport(
        delta=delta,
        lambda_F=lam,
        Delta_F=dF,
        e_F=eF,
        n=n,
        eps=eps,
        log_constant=log_constant,
        lower_affine=lower_affine,
        lower_log=lower_log,
        lower=lower,
        upper_maxdeg=upper_maxdeg,
        upper_edges=upper_edges,
        upper=min(upper_maxdeg, upper_edges),
        simple_for_all_tested_q=False,
    )


# -- threshold curves -----------------------------------------------------------


@dataclass(frozen=True)
class CurveRow:
    p: float
    regime: str  # "a" | "b" | "c" | "d" | "unclassified"
    k_or_f: float | None
    lower: float | None
    upper: float | None
    flags: str

    def csv_row(self) -> str:
        kf = "" if self.k_or_f is None else repr(self.k_or_f)
        lo = "" if self.lower is None else repr(self.lower)
        hi = "" if self.upper is None else repr(self.upper)
        return f"{self.p!r},{self.regime},{kf},{lo},{hi},{self.flags}"


CURVES_CSV_HEADER = "p,regime,k_or_f,lower,upper,flags"


def _regime_of(n: int, p: float, margin: float, max_k: int, f_min: float):
    """Classify p against the threshold-curve regimes at finite n.

    Exponent alpha = log_n(1/p).  Regimes (k >= 2 fixed):
      a: (k+1)/(2k+1) < alpha < k/(2k-1)      b: alpha ~ (k+1)/(2k+1)
      c: alpha slightly above 1/2 (f = n^(alpha-1/2) small)   d: below 1/2
    """
    alpha = -math.log(p) / math.log(n)
    if alpha >= 2 / 3 - margin:
        if abs(alpha - 2 / 3) <= margin:
            return "unclassified", None, "at-2/3-boundary"
        return "unclassified", None, "below-range"
    for k in range(2, max_k + 1):
        if abs(alpha - (k + 1) / (2 * k + 1)) <= margin:
            return "b", k, "boundary"
    for k in range(2, max_k + 1):
        if (k + 1) / (2 * k + 1) < alpha < k / (2 * k - 1):
            return "a", k, ""
    if alpha > 0.5:
        f = n ** (alpha - 0.5)
        if f >= f_min:
            return "c", f, ""
        return "unclassified", None, "near-sqrt-boundary"
    p_hi = math.sqrt(math.log(n) / n)
    if p >= p_hi:
        return "unclassified", None, "above-range"
    if p * f_min > 1 / math.sqrt(n):
        return "d", None, ""
    return "unclassified", None, "near-sqrt-boundary"


def corollary_curves(
    n: int,
    p_grid: list[float],
    margin: float = 0.005,
    max_k: int = 8,
    f_min: float = 2.0,
) -> list[CurveRow]:
    """Leading-order lower/upper threshold values along a probability grid.

    Per regime (o(1) dropped):
      a: np/k^2 .. np/(k-1)        b: np/(k+1)^2 .. np/(k-1)
      c: (np/log n) * max(16 log^2 f / log n, 1/80) .. 2 np log(f^2 log n)/log n
      d: 1 .. 8/p
    """
    rows = []
    for p in p_grid:
        if not 0 < p < 1:
            raise ValueError(f"grid probability {p} outside (0,1)")
        regime, kf, flags = _regime_of(n, p, margin, max_k, f_min)
        np_ = n * p
        logn = math.log(n)
        if regime == "a":
            lower, upper = np_ / (kf * kf), np_ / (kf - 1)
        elif regime == "b":
            lower, upper = np_ / ((kf + 1) * (kf + 1)), np_ / (kf - 1)
        elif regime == "c":
            f = kf
            lower = np_ / logn * max(16 * math.log(f) ** 2 / logn, 1 / 80)
            upper = 2 * np_ * math.log(f * f * logn) / logn
        elif regime == "d":
            lower, upper = 1.0, 8.0 / p
        else:
            lower = upper = None
        rows.append(
            CurveRow(p=p, regime=regime, k_or_f=kf, lower=lower, upper=upper, flags=flags)
        )
    return rows


def geometric_grid(lo: float, hi: float, count: int) -> list[float]:
    if count < 2 or lo <= 0 or hi <= lo:
        raise ValueError("need count >= 2 and 0 < lo < hi")
    ratio = (hi / lo) ** (1 / (count - 1))
    return [lo * ratio**i for i in range(count)]


# -- sparse-set subroutine --------------------------------------------------------


@dataclass(frozen=True)
class KoganReport:
    U: tuple[int, ...]
    achieved: int
    bound: float  # (k+1) n / (d + k + 1)
    bound_ceil: int
    attained: bool
    guaranteed: bool  # exhaustive runs prove attainment; greedy only reports

    def to_dict(self) -> dict:
        return {
            "U": list(self.U),
            "achieved": self.achieved,
            "bound": self.bound,
            "bound_ceil": self.bound_ceil,
            "attained": self.attained,
            "guaranteed": self.guaranteed,
        }


def _greedy_sparse(G: Graph, k: int, order: list[int]) -> int:
    mask = 0
    counts = [0] * G.n  # included-neighbour count, maintained for members
    for v in order:
        nb = G.adj[v] & mask
        if nb.bit_count() > k:
            continue
        if any(counts[w] + 1 > k for w in _bits(nb)):
            continue
        mask |= 1 << v
        counts[v] = nb.bit_count()
        for w in _bits(nb):
            counts[w] += 1
    return mask


def kogan_sparse_set(
    G: Graph,
    k: int,
    seed: int = 0,
    restarts: int = 32,
    exhaustive: bool | None = None,
    exhaustive_max_n: int = 20,
) -> KoganReport:
    """A vertex set U with max degree at most k inside, targeting the
    guarantee |U| >= (k+1) n / (d + k + 1) with d the average degree.

    Exhaustive subset search (n <= 20) proves the ceiling is attained;  the
    randomized greedy with restarts reports what it achieved without
    claiming attainment.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = G.n
    d = 2 * G.m / n if n else 0.0
    bound = (k + 1) * n / (d + k + 1)
    bceil = math.ceil(bound - 1e-12)
    if exhaustive is None:
        exhaustive = n <= 12
    if exhaustive and n > exhaustive_max_n:
        raise ValueError(f"exhaustive sparse-set search capped at n = {exhaustive_max_n}")
    best_mask = 0
    if exhaustive:
        for mask in range(1 << n):
            if mask.bit_count() <= best_mask.bit_count():
                continue
            if all((G.adj[v] & mask).bit_count() <= k for v in _bits(mask)):
                best_mask = mask
        guaranteed = True
    else:
        for rstart in range(restarts):
            order = rng.shuffled(rng.derive(seed, rstart), n)
            mask = _greedy_sparse(G, k, order)
            if mask.bit_count() > best_mask.bit_count():
                best_mask = mask
        guaranteed = False
    U = tuple(_bits(best_mask))
    for v in U:
        if (G.adj[v] & best_mask).bit_count() > k:
            raise AssertionError("sparse-set invariant violated")
    achieved = len(U)
    return KoganReport(
        U=U,
        achieved=achieved,
        bound=bound,
        bound_ceil=bceil,
        attained=achieved >= bceil,
        guaranteed=guaranteed,
    )
