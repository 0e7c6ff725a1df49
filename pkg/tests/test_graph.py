import pytest
from hypothesis import given, settings, strategies as st

from oracles import bf_blocks, bf_is_2vc, nx_simple
from corpus import structured
from vcss.errors import GraphFormatError
from vcss.graph import (Multigraph, block_cut_decomposition, boundary, components, degrees,
                        find_matching_across, is_2vc, load_edge_ids, load_graph, save_edges,
                        save_graph)


def cycle_pairs(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def test_components_two_disjoint_4cycles():
    G = Multigraph(8, cycle_pairs([0, 1, 2, 3]) + cycle_pairs([4, 5, 6, 7]))
    comps, iso = components(G, range(G.m))
    assert [len(c.vertices) for c in comps] == [4, 4]
    assert iso == []


def test_components_empty_set():
    G = Multigraph(5, cycle_pairs([0, 1, 2, 3, 4]))
    comps, iso = components(G, ())
    assert comps == [] and iso == [0, 1, 2, 3, 4]


def test_components_theta_graph():
    G = Multigraph(6, [(0, 1), (1, 5), (0, 2), (2, 5), (0, 3), (3, 4), (4, 5)])
    comps, _ = components(G, range(G.m))
    # networkx agrees
    import networkx as nx
    assert len(comps) == nx.number_connected_components(nx_simple(G)) == 1


def test_blocks_5cycle():
    G = Multigraph(5, cycle_pairs([0, 1, 2, 3, 4]))
    dec = block_cut_decomposition(G, range(G.m))
    (c,) = dec.components
    assert len(c.blocks) == 1 and not c.bridges and c.is_cycle and not c.is_complex


def test_blocks_two_5cycles_joined_by_path():
    pairs = cycle_pairs([0, 1, 2, 3, 4]) + cycle_pairs([5, 6, 7, 8, 9]) + [(4, 10), (10, 5)]
    G = Multigraph(11, pairs)
    dec = block_cut_decomposition(G, range(G.m))
    (c,) = dec.components
    blocks, bridges = bf_blocks(G, range(G.m))
    assert (len(c.blocks), len(c.bridges)) == (len(blocks), len(bridges)) == (2, 2)
    assert len(c.leaf_blocks) == 2
    assert c.cut_vertices == {4, 5, 10}


def test_blocks_star():
    G = Multigraph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    (c,) = block_cut_decomposition(G, range(4)).components
    assert c.blocks == () and len(c.bridges) == 4


def test_load_save_round_trip():
    text = "p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n"
    G = load_graph(text)
    assert G.n == 4 and G.edges == ((0, 1), (1, 2), (2, 3), (3, 0))
    assert save_graph(G) == text
    assert load_graph("c hello\n  p   4 4 \n e 0 1\ne 1 2\ne 2 3\ne 3 0") == G


def test_load_isolated_vertices():
    G = load_graph("p 3 0\n")
    assert G.n == 3 and G.m == 0


@pytest.mark.parametrize("text, line", [
    ("p 4 1\ne 0 9\n", 2),
    ("p 4 1\ne 0 x\n", 2),
    ("e 0 1\n", 1),
    ("p 4 2\ne 0 1 0\ne 1 2 0\n", 3),
    ("p 2 1\ne 1 1\n", 2),
])
def test_load_errors_carry_line(text, line):
    with pytest.raises(GraphFormatError) as exc:
        load_graph(text)
    assert exc.value.line == line


def test_edge_count_mismatch():
    with pytest.raises(GraphFormatError):
        load_graph("p 3 2\ne 0 1\n")


def test_parallel_edges_and_subsets():
    G = Multigraph(3, [(0, 1), (0, 1), (1, 2), (0, 2)])
    assert not G.is_simple and G.has_parallel(0) and not G.has_parallel(2)
    assert load_edge_ids(G, save_edges(G, {1, 3})) == {1, 3}


@st.composite
def small_graphs(draw):
    n = draw(st.integers(4, 9))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=n, max_size=len(pairs)))
    return Multigraph(n, sorted(chosen))


@settings(max_examples=150, deadline=None)
@given(small_graphs(), st.data())
def test_decomposition_matches_networkx(G, data):
    S = data.draw(st.sets(st.integers(0, G.m - 1)))
    dec = block_cut_decomposition(G, S)
    blocks, bridges = bf_blocks(G, S)
    assert sorted(sorted(b.vertices) for c in dec.components for b in c.blocks) == \
        sorted(sorted(b) for b in blocks)
    assert sorted(sorted(G.edges[e]) for c in dec.components for e in c.bridges) == \
        sorted(sorted(b) for b in bridges)
    for c in dec.components:
        assert sum(len(b.edges) for b in c.blocks) + len(c.bridges) == len(c.edges)
    assert is_2vc(G, S) == bf_is_2vc(G, S)


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.data())
def test_boundary_symmetric(G, data):
    S = data.draw(st.sets(st.integers(0, G.m - 1)))
    W = data.draw(st.sets(st.integers(0, G.n - 1)))
    assert boundary(G, S, W) == boundary(G, S, set(range(G.n)) - W)


def test_2vc_implies_min_degree_two():
    for inst in structured(40):
        G = inst.graph
        assert is_2vc(G) and min(degrees(G, range(G.m))) >= 2
        (c,) = block_cut_decomposition(G, range(G.m)).components
        assert not c.cut_vertices


def test_three_matching_across_bipartitions():
    # every structured graph has a 3-matching across any split with both sides >= 4
    for inst in structured(40):
        G = inst.graph
        for k in range(4, G.n - 3):
            V1 = set(range(k))
            M = find_matching_across(G, V1, set(range(G.n)) - V1, 3)
            assert M is not None and len(M) == 3
            ends = [v for e in M for v in G.edges[e]]
            assert len(set(ends)) == 6
