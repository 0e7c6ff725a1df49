from oracles import milp_rho_c, milp_rho_T
from corpus import min_covers, structured
from vcss.cover import all_triangles, exact_min_tfree_2_edge_cover
from vcss.gadget import (build_gprime, compute_cycle_restricted_cover, lift_cover, project_cover,
                         select_maximal_families)
from vcss.graph import Multigraph
from vcss.structure import forbidden_cycles, is_cycle_restricted


def norm(pairs):
    return sorted((min(a, b), max(a, b)) for a, b in set(pairs))


def cyc(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def k23_host():
    pairs = [(u, v) for u in (0, 1) for v in (2, 3, 4)] + cyc([2, 5, 3, 6, 4]) + [(5, 6)]
    return Multigraph(7, norm(pairs))


def k33_host():
    A, B = (0, 2, 4), (1, 3, 5)
    pairs = [(a, b) for a in A for b in B] + [(1, 6), (3, 6), (5, 7), (6, 7), (3, 7)]
    return Multigraph(8, norm(pairs))


def test_pair_gadget_shape():
    G = k23_host()
    fam = select_maximal_families(G)
    assert fam.pairs == ((0, 1),) and not fam.sixes
    Gp, T, gm = build_gprime(G, fam)
    # 5 kept vertices plus three guard copies and w
    assert Gp.n == 9
    # 6 kept edges, two parallel copies per guard, three w-edges
    assert Gp.m == 6 + 6 + 3
    (gd,) = gm.pairs
    assert all(len(p) == 2 for p in gd.parallel)
    assert gm.offset == -2
    assert all(len(set(Gp.edges[e] for e in p)) == 1 for p in gd.parallel)
    d = gm.to_dict()
    assert d["pair_gadgets"][0]["pair"] == [0, 1] and len(d["pair_gadgets"][0]["new_vertices"]) == 4


def test_sixcycle_contraction():
    G = k33_host()
    fam = select_maximal_families(G)
    assert len(fam.sixes) == 1 and set(fam.sixes[0].cycle) == set(range(6))
    Gp, T, gm = build_gprime(G, fam)
    assert Gp.n == 3 and gm.offset == 6
    # edges inside the 6-cycle vanish; the five outer edges survive
    assert Gp.m == 5
    c = gm.contracted[0].vertex
    assert all(c not in t for t in T.triangles)


def test_gadget_identity_on_examples():
    for G in (k23_host(), k33_host()):
        Gp, T, gm = build_gprime(G)
        assert milp_rho_T(Gp, T.triangles) + gm.offset == milp_rho_c(G)


def test_families_are_maximal():
    for inst in structured(60):
        G = inst.graph
        fam = select_maximal_families(G)
        used = set()
        for c in fam.sixes:
            assert used.isdisjoint(c.cycle)
            used |= set(c.cycle)
        for c in forbidden_cycles(G).sixes:
            assert c in fam.sixes or not used.isdisjoint(c.cycle)
        pv = set()
        for c in fam.fours:
            assert used.isdisjoint(c.cycle)
            used |= set(c.cycle)
            pv |= set(c.witness.isolated_set)
        for c in forbidden_cycles(G).fours:
            if c in fam.fours:
                continue
            pair = c.witness.isolated_set
            assert (not used.isdisjoint(c.cycle)
                    or any(x in pv for u in pair for x in G.neighbors[u]))
        assert 2 * len(fam.pairs) <= G.n


def test_project_and_lift_bounds():
    for G, F in min_covers(60):
        Gp, T, gm = build_gprime(G)
        Fp = project_cover(G, F, gm)
        assert len(Fp) <= len(F) - gm.offset
        F2 = lift_cover(G, Fp, gm, T)
        assert is_cycle_restricted(G, F2) and len(F2) <= len(Fp) + gm.offset
        opt = exact_min_tfree_2_edge_cover(Gp, T)
        F3 = lift_cover(G, opt.edges, gm, T)
        assert len(F3) <= opt.size + gm.offset


def test_cover_is_minimum_cycle_restricted():
    hits = 0
    for inst in structured(60):
        G = inst.graph
        res = compute_cycle_restricted_cover(G)
        assert res.optimal and is_cycle_restricted(G, res.edges)
        assert len(res.edges) == milp_rho_c(G)
        Gp, T, gm = build_gprime(G)
        assert res.gprime_size + gm.offset == len(res.edges)
        assert [tuple(sorted(t)) for t in all_triangles(Gp, avoid=[c.vertex for c in gm.contracted])] \
            == list(T.triangles)
        hits += bool(gm.pairs or gm.contracted)
    assert hits >= 10
