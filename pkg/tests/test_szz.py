import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsimple.errors import BudgetExceededError
from ramsimple.graph import ColouredGraph, Graph, find_subgraph_copy
from ramsimple.szz import (
    case2_colouring,
    colour_G_minus_Z,
    construct_szz,
    find_mono_forest,
    min_bipartition,
    random_colouring,
    write_szz,
)

from conftest import random_forest


def _bipartition_oracle(F: Graph):
    """Enumerate every per-component side assignment; return the minimum |A|
    and the lexicographically smallest minimising A."""
    comps = F.component_masks()
    sides_per_comp = []
    for comp in comps:
        root = (comp & -comp).bit_length() - 1
        colour = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in range(F.n):
                if F.has_edge(v, w) and w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
        s0 = tuple(sorted(v for v in colour if colour[v] == 0))
        s1 = tuple(sorted(v for v in colour if colour[v] == 1))
        sides_per_comp.append((s0, s1))
    best = None
    for choice in itertools.product((0, 1), repeat=len(comps)):
        A = tuple(sorted(sum((sides_per_comp[i][c] for i, c in enumerate(choice)), ())))
        key = (len(A), A)
        if best is None or key < best:
            best = key
    return best


def test_min_bipartition_examples():
    assert min_bipartition(Graph.star(3)) == ((0,), (1, 2, 3))
    A, B = min_bipartition(Graph.path(4))
    assert len(A) == 2 and len(B) == 2
    bge2 = [v for v in B if Graph.path(4).degree(v) >= 2]
    assert len(bge2) == 1 == len(A) - 1
    A2, _ = min_bipartition(Graph.matching(2))
    assert len(A2) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10**6))
def test_min_bipartition_matches_enumeration_oracle(n, seed):
    F = random_forest(n, seed)
    live = [v for v in range(F.n) if F.adj[v]]
    if not live:
        return
    Fs, _ = F.subgraph(live)
    A, B = min_bipartition(Fs)
    size, lex_a = _bipartition_oracle(Fs)
    assert len(A) == size
    assert A == lex_a
    assert set(A) | set(B) == set(range(Fs.n))
    for u, v in Fs.edges():
        assert (u in A) != (v in A)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10**6))
def test_b_ge2_is_below_a(n, seed):
    F = random_forest(n, seed)
    live = [v for v in range(F.n) if F.adj[v]]
    if not live:
        return
    Fs, _ = F.subgraph(live)
    A, B = min_bipartition(Fs)
    bge2 = [v for v in B if Fs.degree(v) >= 2]
    assert len(bge2) <= len(A) - 1


def test_min_bipartition_rejects_bad_inputs():
    with pytest.raises(ValueError):
        min_bipartition(Graph.cycle(4))
    with pytest.raises(ValueError):
        min_bipartition(Graph.from_edges(3, [(0, 1)]))  # isolated vertex


# -- construction -------------------------------------------------------------------


def test_construct_p4_parameters():
    szz = construct_szz(Graph.path(4), 2)
    assert (szz.a, szz.b, szz.r, szz.s, szz.t) == (2, 2, 2, 32, 128)
    assert szz.graph.n == 162
    assert szz.graph.m == szz.r * szz.s + szz.t == 192


def test_construct_k2_degenerate_a1():
    szz = construct_szz(Graph.from_edges(2, [(0, 1)]), 2)
    assert (szz.a, szz.r, szz.s, szz.t) == (1, 0, 4, 8)
    assert len(szz.X) == 0


def test_construct_star_three_colours():
    szz = construct_szz(Graph.star(3), 3)
    assert (szz.a, szz.r, szz.s, szz.t) == (1, 0, 12, 108)


def test_construct_pendants_have_degree_one():
    szz = construct_szz(Graph.path(4), 2)
    assert all(szz.graph.degree(z) == 1 for z in szz.Z)
    assert min(szz.graph.degrees()) == 1


def test_construct_memory_guard():
    with pytest.raises(BudgetExceededError):
        construct_szz(Graph.path(4), 2, edge_cap=100)


def test_construct_rejects_cycles_and_isolated():
    with pytest.raises(ValueError):
        construct_szz(Graph.cycle(4), 2)
    with pytest.raises(ValueError):
        construct_szz(Graph.from_edges(3, [(0, 1)]), 2)
    with pytest.raises(ValueError):
        construct_szz(Graph.path(4), 1)


def test_write_szz_header():
    szz = construct_szz(Graph.path(4), 2)
    text = write_szz(szz)
    assert text.splitlines()[0] == "szz 2 2 2 32 128 2"
    assert text.splitlines()[1] == "162 192"


# -- the two certificates --------------------------------------------------------------


def test_colour_g_minus_z_is_forest_free():
    szz = construct_szz(Graph.path(4), 2)
    cg = colour_G_minus_Z(szz)
    assert cg.graph.m == szz.r * szz.s
    # independent scan through the general subgraph searcher
    for i in (1, 2):
        assert find_subgraph_copy(cg.colour_class(i), Graph.path(4)) is None


def test_colour_g_minus_z_degenerate_case_is_empty():
    szz = construct_szz(Graph.from_edges(2, [(0, 1)]), 2)
    cg = colour_G_minus_Z(szz)
    assert cg.graph.m == 0


def _validate_mono(szz, phi, res):
    F = szz.F
    assert len(res.mapping) == F.n
    assert len(set(res.mapping.values())) == F.n
    for a, b in F.edges():
        ga, gb = res.mapping[a], res.mapping[b]
        assert szz.graph.has_edge(ga, gb)
        assert phi.colour_of(ga, gb) == res.colour


def test_find_mono_forest_monochromatic_input_hits_case1():
    szz = construct_szz(Graph.path(4), 2)
    phi = ColouredGraph(szz.graph, 2, {e: 1 for e in szz.graph.edges()})
    res = find_mono_forest(szz, phi)
    assert res.case == 1 and res.colour == 1
    _validate_mono(szz, phi, res)


def test_find_mono_forest_alternating_profiles_hit_case2():
    szz = construct_szz(Graph.path(4), 2)
    for variant in range(4):
        phi = case2_colouring(szz, variant)
        res = find_mono_forest(szz, phi)
        assert res.case == 2
        _validate_mono(szz, phi, res)


def test_find_mono_forest_random_colourings():
    szz = construct_szz(Graph.path(4), 2)
    for t in range(150):
        phi = random_colouring(szz, t)
        res = find_mono_forest(szz, phi)
        _validate_mono(szz, phi, res)


def test_find_mono_forest_degenerate_star():
    szz = construct_szz(Graph.star(3), 2)
    for t in range(40):
        phi = random_colouring(szz, t)
        res = find_mono_forest(szz, phi)
        assert res.case == 2  # empty profiles: the balanced branch
        _validate_mono(szz, phi, res)


def test_find_mono_forest_matching_target():
    szz = construct_szz(Graph.matching(2), 2)
    for t in range(40):
        phi = random_colouring(szz, t)
        _validate_mono(szz, phi, find_mono_forest(szz, phi))


def test_find_mono_forest_three_colours():
    szz = construct_szz(Graph.from_edges(2, [(0, 1)]), 3)
    for t in range(40):
        phi = random_colouring(szz, t)
        _validate_mono(szz, phi, find_mono_forest(szz, phi))


def test_find_mono_forest_rejects_foreign_colouring():
    szz = construct_szz(Graph.path(4), 2)
    other = ColouredGraph(Graph.complete(3), 2, {(0, 1): 1, (0, 2): 1, (1, 2): 2})
    with pytest.raises(ValueError):
        find_mono_forest(szz, other)


def test_reports_imply_degree_one_witness():
    # The two certificates together: the Z-free part misses monochromatic F,
    # every full colouring contains one, so some minimal q-Ramsey subgraph
    # uses a pendant vertex; pendants have degree 1.
    szz = construct_szz(Graph.matching(2), 2)
    colour_G_minus_Z(szz)  # raises when its certificate fails
    phi = random_colouring(szz, 5)
    res = find_mono_forest(szz, phi)
    assert min(szz.graph.degrees()) == 1
    _validate_mono(szz, phi, res)
