import json
from fractions import Fraction

import pytest

from oracles import bf_is_2vc
from corpus import structured
from vcss.canonical import is_strongly_canonical
from vcss.credits import cost
from vcss.errors import InfeasibleInput
from vcss.generators import GeneratorSpec, generate_instance, tight_chain
from vcss.graph import Multigraph, is_2vc
from vcss.pipeline import complete_to_2vc, run_pipeline
from vcss.reducer import remove_all_small


def test_rejects_non_2vc_host():
    G = Multigraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    with pytest.raises(InfeasibleInput):
        run_pipeline(G)


def test_small_hosts_take_the_oracle_route():
    G = generate_instance(GeneratorSpec("hamiltonian-plus-chords", 15, Fraction(3, 10), 1)).graph
    res = run_pipeline(G)
    assert res.route == "oracle" and res.ratio_vs_oracle == 1 and res.feasible


def test_forced_pipeline_on_hamiltonian_host():
    G = generate_instance(GeneratorSpec("hamiltonian-plus-chords", 12, Fraction(3, 10), 7)).graph
    res = run_pipeline(G, force_pipeline=True)
    assert res.route == "pipeline" and res.feasible and bf_is_2vc(G, res.solution)
    assert res.opt == 12 and res.completion_check
    assert res.size <= Fraction(95, 72) * res.opt - 2
    json.dumps(res.to_dict(), default=str)


def test_stage_chain_on_large_hosts():
    for seed in range(6):
        inst = generate_instance(GeneratorSpec("planted-cycles", 22, Fraction(1, 5), seed))
        res = run_pipeline(inst.graph, with_oracle=False)
        assert res.route == "pipeline" and res.feasible
        st = res.stage_sizes
        assert st["S0"] == st["S1"]
        if res.completion_check:
            assert res.size <= Fraction(95, 72) * st["S0"] - 2


def test_exact_oracle_completion():
    for inst in structured(6, sizes=(12, 13)):
        res = run_pipeline(inst.graph, force_pipeline=True, completion_mode="exact-oracle")
        assert res.size == res.opt and res.completion_check


def test_complete_to_2vc_on_the_tight_chain():
    G, S = tight_chain(4)
    S2 = remove_all_small(G, S)
    assert is_strongly_canonical(G, S2)
    S, ok = complete_to_2vc(G, S2)
    assert is_2vc(G, S) and ok
    assert cost(G, S, "cr'") <= cost(G, S2, "cr'")
    assert len(S) == cost(G, S) - 2


def test_completion_keeps_a_2vc_input():
    G, S = tight_chain(3)
    H = Multigraph(G.n, [G.edges[e] for e in range(G.m)])
    S, ok = complete_to_2vc(H, range(H.m))
    assert is_2vc(H, S) and ok and len(S) <= H.m


def test_unknown_completion_mode():
    G, S = tight_chain(3)
    with pytest.raises(ValueError):
        complete_to_2vc(G, S, "nope")
