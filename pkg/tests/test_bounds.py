import math

import pytest

from ramsimple import rng
from ramsimple.analysis import NeighbourhoodProfile, neighbourhood_profile
from ramsimple.bounds import (
    CURVES_CSV_HEADER,
    affine_feasible_qmax,
    corollary_curves,
    geometric_grid,
    kogan_sparse_set,
    qtilde_bounds,
)
from ramsimple.graph import Graph, _bits, sample_gnp


def _profile(delta, lam, dF, eF, F=None):
    return NeighbourhoodProfile(
        u=0,
        unique_min=True,
        delta=delta,
        F=F or Graph.empty(delta),
        f_vertices=tuple(range(delta)),
        lambda_F=lam,
        Delta_F=dF,
        e_F=eF,
        is_forest_F=True,
    )


def test_qtilde_spec_arithmetic():
    rep = qtilde_bounds(_profile(25, 2, 1, 2), 10**4, 0.04)
    assert rep.upper_edges == 150  # floor(C(25,2)/2)
    assert rep.upper_maxdeg == 24  # floor(25 - 1/24)
    assert rep.upper == 24
    assert rep.lower_affine == 5


def test_qtilde_affine_sweep_matches_constructive_feasibility():
    from ramsimple.gamma import build_affine_gamma

    for delta, lam, eps in [(25, 2, 0.04), (40, 3, 0.05), (12, 2, 0.1)]:
        qmax = affine_feasible_qmax(delta, lam, eps)
        if qmax >= 1:
            build_affine_gamma(delta, qmax, lam, eps)  # feasible: must not raise
        with pytest.raises(ValueError):
            build_affine_gamma(delta, qmax + 1, lam, eps)


def test_qtilde_edgeless_regime():
    rep = qtilde_bounds(_profile(10, 1, 0, 0), 1000, 0.05)
    assert rep.simple_for_all_tested_q
    assert rep.lower == math.inf and rep.upper == math.inf
    assert rep.to_dict()["upper"] == "inf"


def test_qtilde_requires_unique_minimum():
    prof = neighbourhood_profile(Graph.complete(4))
    with pytest.raises(ValueError):
        qtilde_bounds(prof, 4, 0.05)


def test_qtilde_consistency_on_real_profiles():
    # lower <= upper whenever F has an edge, is a forest, and its maximum
    # degree stays below the 80 log n line.
    hits = 0
    for seed in range(60):
        H = sample_gnp(150, 0.12, seed)
        prof = neighbourhood_profile(H)
        if not prof.unique_min:
            continue
        rep = qtilde_bounds(prof, H.n, 0.04)
        if prof.e_F >= 1 and prof.is_forest_F and prof.Delta_F <= 80 * math.log(H.n):
            hits += 1
            assert rep.lower <= rep.upper
    assert hits >= 5


# -- curves -----------------------------------------------------------------------


def test_curves_regime_d_formula():
    p = (10**6) ** -0.45
    row = corollary_curves(10**6, [p])[0]
    assert row.regime == "d"
    assert row.lower == 1.0
    assert row.upper == pytest.approx(8.0 / p)


def test_curves_regime_a_formulas():
    n = 10**6
    p = n**-0.58  # inside (4/7, 3/5): the k=3 window
    row = corollary_curves(n, [p])[0]
    assert row.regime == "a" and row.k_or_f == 3
    assert row.lower == pytest.approx(n * p / 9)
    assert row.upper == pytest.approx(n * p / 2)


def test_curves_regime_b_boundary():
    n = 10**6
    p = n ** -(3 / 5)  # the k=2 / k=3 boundary exponent
    row = corollary_curves(n, [p])[0]
    assert row.regime == "b" and row.k_or_f == 2
    assert row.flags == "boundary"
    assert row.lower == pytest.approx(n * p / 9)
    assert row.upper == pytest.approx(n * p)


def test_curves_regime_c_reachable_with_small_max_k():
    n = 10**6
    p = n**-0.56
    row = corollary_curves(n, [p], max_k=3)[0]
    assert row.regime == "c"
    f = row.k_or_f
    assert f == pytest.approx(n**0.06)
    logn = math.log(n)
    assert row.upper == pytest.approx(2 * n * p * math.log(f * f * logn) / logn)


def test_curves_monotone_within_a_regime():
    n = 10**6
    rows = corollary_curves(n, geometric_grid(1e-4, 1e-1, 50))
    for row in rows:
        if row.regime == "a":
            assert row.lower < row.upper  # k^2 > k-1 for k >= 2
    for r1, r2 in zip(rows, rows[1:]):
        if r1.regime == r2.regime == "a" and r1.k_or_f == r2.k_or_f:
            assert r2.lower > r1.lower and r2.upper > r1.upper
        if r1.regime == r2.regime == "d":
            assert r2.upper < r1.upper


def test_curves_rejects_bad_probabilities():
    with pytest.raises(ValueError):
        corollary_curves(100, [1.5])


def test_geometric_grid():
    g = geometric_grid(1e-4, 1e-1, 50)
    assert len(g) == 50
    assert g[0] == pytest.approx(1e-4) and g[-1] == pytest.approx(1e-1)
    ratios = [b / a for a, b in zip(g, g[1:])]
    assert max(ratios) - min(ratios) < 1e-9


def test_curves_csv_shape():
    rows = corollary_curves(10**6, [1e-3, 1e-2])
    for row in rows:
        assert len(row.csv_row().split(",")) == len(CURVES_CSV_HEADER.split(","))


# -- sparse sets --------------------------------------------------------------------


def _max_sparse_bruteforce(G, k):
    best = 0
    for mask in range(1 << G.n):
        if mask.bit_count() <= best:
            continue
        if all((G.adj[v] & mask).bit_count() <= k for v in _bits(mask)):
            best = mask.bit_count()
    return best


def test_kogan_c5():
    rep = kogan_sparse_set(Graph.cycle(5), 1)
    assert rep.bound == pytest.approx(2.5)
    assert rep.bound_ceil == 3
    assert rep.achieved == _max_sparse_bruteforce(Graph.cycle(5), 1) == 3
    assert rep.attained and rep.guaranteed


def test_kogan_k4():
    rep = kogan_sparse_set(Graph.complete(4), 1)
    assert rep.bound == pytest.approx(1.6)
    assert rep.achieved == 2 and rep.attained


def test_kogan_empty_graph_takes_everything():
    rep = kogan_sparse_set(Graph.empty(9), 0)
    assert rep.achieved == 9


def test_kogan_always_valid_and_deterministic():
    for seed in range(8):
        G = sample_gnp(30, 0.3, seed)
        rep = kogan_sparse_set(G, 2, seed=5, exhaustive=False)
        mask = sum(1 << v for v in rep.U)
        assert all((G.adj[v] & mask).bit_count() <= 2 for v in rep.U)
        rep2 = kogan_sparse_set(G, 2, seed=5, exhaustive=False)
        assert rep == rep2


def test_kogan_desk_scale_bound_holds():
    # Exhaustive verification of the guarantee on seeded random graphs.
    for t in range(40):
        n = 4 + t % 9
        k = 1 + t % 2
        G = sample_gnp(n, 0.2 + (t % 5) * 0.15, rng.derive(77, t))
        rep = kogan_sparse_set(G, k, exhaustive=True)
        assert rep.achieved >= rep.bound_ceil
        assert rep.achieved == _max_sparse_bruteforce(G, k)
