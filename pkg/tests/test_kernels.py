"""Compiled and pure kernels must be interchangeable: same results, same
witnesses, same node counts."""

import pytest

from ramsimple import rng
from ramsimple._kernels import backend, pykernels
from ramsimple.graph import Graph, forest_embedding_plan, sample_gnp

ck = pytest.importorskip(
    "ramsimple._kernels._ckernels", reason="compiled kernels not built"
)


def test_backend_reports_c_when_extension_present():
    assert backend() in ("c", "python")


@pytest.mark.parametrize(
    "n,p,seed", [(1, 0.5, 0), (2, 0.9, 3), (17, 0.3, 42), (100, 0.07, 9), (321, 0.5, 12345)]
)
def test_gnp_rows_agree(n, p, seed):
    thr = rng.bernoulli_threshold(p)
    assert pykernels.gnp_rows(n, thr, seed) == ck.gnp_rows(n, thr, seed)


def test_max_codegree_agree():
    for seed in range(6):
        G = sample_gnp(130, 0.25, seed)
        assert pykernels.max_codegree(list(G.adj), G.n) == ck.max_codegree(list(G.adj), G.n)


def test_three_connected_agree():
    cases = [
        Graph.complete(4),
        Graph.cycle(5),
        Graph.petersen(),
        Graph.path(6),
        Graph.empty(5),
        Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]),
    ]
    for seed in range(25):
        cases.append(sample_gnp(11, 0.35, seed))
        cases.append(sample_gnp(40, 0.15, seed + 100))
    for G in cases:
        assert pykernels.three_connected(list(G.adj), G.n) == ck.three_connected(
            list(G.adj), G.n
        )


def test_forest_embed_agree():
    from conftest import random_forest

    for seed in range(30):
        G = sample_gnp(14, 0.25, seed)
        F = random_forest(7, seed + 1000)
        live = [v for v in range(F.n) if F.adj[v]]
        if not live:
            continue
        Fs, _ = F.subgraph(live)
        _, parents, fdeg = forest_embedding_plan(Fs)
        mask = (1 << G.n) - 1
        assert pykernels.forest_embed(list(G.adj), G.n, parents, fdeg, mask) == ck.forest_embed(
            list(G.adj), G.n, parents, fdeg, mask
        )


def _prep(G, H, q):
    deg = G.degrees()
    edges = sorted(G.edges(), key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))
    live = [v for v in range(H.n) if H.adj[v]]
    Hs, _ = H.subgraph(live)
    return (G.n, edges, q, Hs.n, Hs.edges())


def test_arrows_search_agree_with_node_counts():
    cases = [
        (Graph.complete(6), Graph.complete(3), 2),
        (Graph.complete(5), Graph.complete(3), 2),
        (Graph.star(3), Graph.path(3), 2),
        (Graph.matching(3), Graph.matching(2), 2),
        (Graph.complete(4), Graph.path(4), 3),
        (Graph.cycle(5), Graph.matching(2), 2),
    ]
    for seed in range(20):
        cases.append((sample_gnp(8, 0.5, seed), Graph.path(3), 2))
        cases.append((sample_gnp(7, 0.6, seed + 50), Graph.complete(3), 2))
    for G, H, q in cases:
        args = _prep(G, H, q)
        assert pykernels.arrows_search(*args, 10**6, None) == ck.arrows_search(
            *args, 10**6, None
        )


def test_arrows_search_budget_parity():
    args = _prep(Graph.complete(6), Graph.complete(3), 2)
    assert (
        pykernels.arrows_search(*args, 50, None)
        == ck.arrows_search(*args, 50, None)
        == (-1, None, 51)
    )


def test_compiled_arrows_rejects_oversized_hosts():
    args = _prep(Graph.complete(6), Graph.complete(3), 2)
    with pytest.raises(ValueError):
        ck.arrows_search(100, args[1], 2, args[3], args[4], None, None)
