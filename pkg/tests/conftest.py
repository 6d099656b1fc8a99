"""Shared brute-force oracles.

Everything here is deliberately naive: independent enumeration-based
recomputation used to pin expected values, sharing no code with the
implementations under test.
"""

import itertools

import pytest

from ramsimple.graph import ColouredGraph, Graph


def iter_injective_embeddings(G: Graph, H: Graph):
    """All injective maps V(H) -> V(G) carrying every H-edge to a G-edge."""
    hverts = list(range(H.n))
    hedges = H.edges()
    for images in itertools.permutations(range(G.n), H.n):
        if all(G.has_edge(images[a], images[b]) for a, b in hedges):
            yield dict(zip(hverts, images))


def embeds_bruteforce(G: Graph, H: Graph) -> bool:
    if H.n > G.n:
        return False
    return next(iter_injective_embeddings(G, H), None) is not None


def mono_copy_bruteforce(cg: ColouredGraph, H: Graph) -> bool:
    live = [v for v in range(H.n) if H.adj[v]]
    Hs, _ = H.subgraph(live)
    return any(embeds_bruteforce(cls, Hs) for cls in cg.classes())


def arrows_bruteforce(G: Graph, H: Graph, q: int) -> bool:
    """Exhaustive check over every q-colouring of E(G)."""
    edges = G.edges()
    for assignment in itertools.product(range(1, q + 1), repeat=len(edges)):
        cg = ColouredGraph(G, q, dict(zip(edges, assignment)))
        if not mono_copy_bruteforce(cg, H):
            return False
    return True


def connectivity_bruteforce(G: Graph, k: int) -> bool:
    """k-connectivity by exhaustive removal of all vertex sets below size k."""
    if G.n <= k:
        return False
    for size in range(0, k):
        for cut in itertools.combinations(range(G.n), size):
            keep = [v for v in range(G.n) if v not in cut]
            sub, _ = G.subgraph(keep)
            if sub.n == 0 or not sub.is_connected():
                return False
    return True


def random_forest(n: int, seed: int) -> Graph:
    """Deterministic pseudo-random spanning-ish forest via union-find."""
    from ramsimple import rng

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = list(itertools.combinations(range(n), 2))
    order = [pairs[i] for i in rng.shuffled(seed, len(pairs))]
    edges = []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv and rng.draw(seed, len(edges)) % 3:
            parent[ru] = rv
            edges.append((u, v))
    return Graph.from_edges(n, edges)


@pytest.fixture
def k4_minus_edge() -> Graph:
    return Graph.complete(4).remove_edge(0, 1)
