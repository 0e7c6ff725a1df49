from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import bf_min_subset, bf_triangles, milp_min_cover, milp_rho_T
from corpus import structured
from vcss import kernels
from vcss.cover import (TriangleSet, all_triangles, exact_min_tfree_2_edge_cover, get_backend,
                        heuristic_tfree_2_edge_cover, is_tfree_2_edge_cover, max_simple_2_matching,
                        min_2_edge_cover, tfree_2matching_to_cover, validate_appendix_precondition)
from vcss.errors import InfeasibleError, PreconditionViolated, ResourceExhausted
from vcss.graph import Multigraph, degrees


def cyc(vs):
    return [(min(vs[i], vs[(i + 1) % len(vs)]), max(vs[i], vs[(i + 1) % len(vs)])) for i in range(len(vs))]


def is_cover(G, S):
    return min(degrees(G, S)) >= 2


def test_min_cover_c5():
    G = Multigraph(5, cyc(range(5)))
    assert min_2_edge_cover(G) == frozenset(range(5))


def test_min_cover_k4():
    G = Multigraph(4, list(combinations(range(4), 2)))
    k, _ = bf_min_subset(G, lambda S: is_cover(G, S))
    assert len(min_2_edge_cover(G)) == k == 4


def test_min_cover_degree_one():
    with pytest.raises(InfeasibleError):
        min_2_edge_cover(Multigraph(4, cyc(range(3)) + [(2, 3)]))


def test_min_cover_is_2n_minus_two_matching():
    for inst in structured(40):
        G = inst.graph
        S = min_2_edge_cover(G)
        assert is_cover(G, S)
        assert len(S) == 2 * G.n - len(max_simple_2_matching(G)) == milp_min_cover(G)


def test_exact_tfree_c6():
    G = Multigraph(6, cyc(range(6)))
    assert exact_min_tfree_2_edge_cover(G, TriangleSet.empty(G)).edges == frozenset(range(6))


def test_two_triangles_and_a_bridge():
    G = Multigraph(6, cyc([0, 1, 2]) + cyc([3, 4, 5]) + [(2, 3)])
    T = TriangleSet(G, [(0, 1, 2), (3, 4, 5)])
    k, _ = bf_min_subset(G, lambda S: is_tfree_2_edge_cover(G, T, S))
    res = exact_min_tfree_2_edge_cover(G, T)
    assert res.size == k == 7 and res.optimal
    # without the restriction two triangles suffice
    assert exact_min_tfree_2_edge_cover(G).size == 6


def test_tfree_equals_plain_when_inactive():
    for inst in structured(30):
        G = inst.graph
        assert exact_min_tfree_2_edge_cover(G, TriangleSet.empty(G)).size == len(min_2_edge_cover(G))


def test_exact_matches_integer_program():
    for inst in structured(60):
        G = inst.graph
        T = TriangleSet(G, all_triangles(G))
        assert [tuple(sorted(t)) for t in bf_triangles(G)] == list(T.triangles)
        res = exact_min_tfree_2_edge_cover(G, T)
        assert is_tfree_2_edge_cover(G, T, res.edges)
        assert res.size == milp_rho_T(G, T.triangles)


def test_monotone_in_triangle_set():
    for inst in structured(30):
        G = inst.graph
        tris = all_triangles(G)
        sizes = [exact_min_tfree_2_edge_cover(G, TriangleSet(G, tris[:k])).size
                 for k in range(0, len(tris) + 1, max(1, len(tris) // 3))]
        assert sizes == sorted(sizes)


def test_heuristic_is_valid_and_not_better():
    for inst in structured(40):
        G = inst.graph
        T = TriangleSet(G, all_triangles(G))
        h = heuristic_tfree_2_edge_cover(G, T)
        assert not h.optimal and is_tfree_2_edge_cover(G, T, h.edges)
        assert h.size >= exact_min_tfree_2_edge_cover(G, T).size


def test_budget_exhaustion_and_fallback():
    G = structured(1, sizes=(13,))[0].graph
    T = TriangleSet(G, all_triangles(G))
    if exact_min_tfree_2_edge_cover(G, T).nodes > 1:
        with pytest.raises(ResourceExhausted):
            exact_min_tfree_2_edge_cover(G, T, budget=1)
    assert is_tfree_2_edge_cover(G, T, get_backend("auto", 1).solve(G, T).edges)


def test_matching_to_cover_examples():
    C5 = Multigraph(5, cyc(range(5)))
    assert tfree_2matching_to_cover(C5, TriangleSet.empty(C5), range(5)) == frozenset(range(5))
    assert tfree_2matching_to_cover(C5, TriangleSet.empty(C5), range(4)) == frozenset(range(5))
    C4 = Multigraph(4, cyc(range(4)))
    pm = {C4.edge_id(0, 1), C4.edge_id(2, 3)}
    assert tfree_2matching_to_cover(C4, TriangleSet.empty(C4), pm) == frozenset(range(4))


def test_matching_to_cover_rejects_non_matching():
    K4 = Multigraph(4, list(combinations(range(4), 2)))
    with pytest.raises(PreconditionViolated):
        tfree_2matching_to_cover(K4, TriangleSet.empty(K4), range(6))


def test_triangle_set_rejects_parallel_edge():
    G = Multigraph(3, [(0, 1), (0, 1), (1, 2), (0, 2)])
    with pytest.raises(PreconditionViolated):
        TriangleSet(G, [(0, 1, 2)])


def test_appendix_precondition_examples():
    G = Multigraph(4, list(combinations(range(4), 2)))
    T = TriangleSet(G, all_triangles(G))
    tri = T.edges_of((0, 1, 2))
    M = {G.edge_id(0, 1), G.edge_id(1, 2), G.edge_id(2, 3)}
    assert validate_appendix_precondition(G, T, M, tri)
    with pytest.raises(PreconditionViolated):
        validate_appendix_precondition(G, T, set(tri), tri)


@st.composite
def kernel_inputs(draw):
    n = draw(st.integers(4, 9))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    eu_ev = draw(st.lists(st.sampled_from(pairs), min_size=n, max_size=2 * n + 4))
    masks = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=3))
    counts = draw(st.lists(st.integers(3, 6), min_size=len(masks), max_size=len(masks)))
    bmasks = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=2))
    breqs = draw(st.lists(st.integers(1, 2), min_size=len(bmasks), max_size=len(bmasks)))
    limit = draw(st.integers(n, 2 * n))
    return (n, [a for a, _ in eu_ev], [b for _, b in eu_ev], masks, counts, bmasks, breqs, limit,
            draw(st.booleans()))


@pytest.mark.skipif("cython" not in kernels.implementations(), reason="compiled kernel not built")
@settings(max_examples=300, deadline=None)
@given(kernel_inputs())
def test_kernels_agree(args):
    n, eu, ev, fm, fc, bm, br, limit, req = args
    impls = kernels.implementations()
    outs = [impls[k].cover_search(n, eu, ev, fm, fc, bm, br, limit, 20000, req) for k in ("python", "cython")]
    assert outs[0] == outs[1]


def test_backend_selection():
    assert kernels.BACKEND in ("python", "cython")
    assert set(kernels.implementations()) >= {"python"}
