from itertools import combinations

import networkx as nx
import pytest

from oracles import bf_opt_2vcss, milp_rho_c
from corpus import structured
from vcss.cover import min_2_edge_cover
from vcss.errors import InfeasibleInput, PreconditionViolated
from vcss.graph import Multigraph, is_2vc
from vcss.oracle import exact_min_cycle_restricted_cover, exact_opt_2vcss
from vcss.structure import is_cycle_restricted


def test_k5_is_a_hamiltonian_cycle():
    G = Multigraph(5, list(combinations(range(5), 2)))
    assert len(exact_opt_2vcss(G)) == 5


def test_c8_is_its_own_optimum():
    G = Multigraph(8, [(i, (i + 1) % 8) for i in range(8)])
    assert exact_opt_2vcss(G) == frozenset(range(8))


def test_petersen():
    P = nx.petersen_graph()
    G = Multigraph(10, sorted(P.edges()))
    S = exact_opt_2vcss(G)
    assert is_2vc(G, S) and len(S) == bf_opt_2vcss(G) == 11


def test_oracle_errors():
    G = Multigraph(15, [(i, (i + 1) % 15) for i in range(15)])
    with pytest.raises(PreconditionViolated):
        exact_opt_2vcss(G)
    H = Multigraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    with pytest.raises(InfeasibleInput):
        exact_opt_2vcss(H)


def test_forbidden_6cycle_with_anchor():
    # 6-cycle 0..5 with isolated triple 0, 2, 4; vertex 6 anchors 1 and 3
    pairs = [(i, (i + 1) % 6) for i in range(6)] + [(1, 6), (3, 6)]
    G = Multigraph(7, sorted((min(a, b), max(a, b)) for a, b in pairs))
    S = exact_min_cycle_restricted_cover(G)
    assert len(S) == 8 == milp_rho_c(G)


def test_lower_bound_chain():
    for inst in structured(40):
        G = inst.graph
        rc = exact_min_cycle_restricted_cover(G)
        assert is_cycle_restricted(G, rc)
        opt = exact_opt_2vcss(G)
        assert len(min_2_edge_cover(G)) <= len(rc) <= len(opt)
        assert len(rc) == milp_rho_c(G)


def test_opt_matches_brute_force_on_small_hosts():
    for inst in structured(12, sizes=(8, 9)):
        G = inst.graph
        assert len(exact_opt_2vcss(G)) == bf_opt_2vcss(G)
