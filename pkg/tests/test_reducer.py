from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

from oracles import bf_cost
from vcss.canonical import is_strongly_canonical, prune_to_minimal, to_strongly_canonical
from vcss.errors import CaseMismatch
from vcss.generators import GenerationFailed, GeneratorSpec, generate_instance, tight_chain
from vcss.graph import block_cut_decomposition, load_edge_ids, load_graph
from vcss.reducer import (find_shortcut_pair_6cycle, next_case, reduce_case1, reduce_case2,
                          reduce_step, remove_all_small)
from vcss.structure import analyze_structure

DATA = Path(__file__).parent / "data"


def load_case(name):
    G = load_graph((DATA / f"{name}.graph").read_text())
    S = frozenset(load_edge_ids(G, (DATA / f"{name}.cover").read_text()))
    return G, S


def check_step(G, S, step):
    assert step.delta == bf_cost(G, step.cover) - bf_cost(G, S)
    assert step.delta <= 0 and step.delta <= step.bound
    assert step.comps_after < step.comps_before
    assert is_strongly_canonical(G, step.cover)


@pytest.mark.parametrize("name, case, delta", [
    ("case1_2", "case1.2", Fraction(-7, 72)),
    ("case1_3", "case1.3", Fraction(-5, 18)),
    ("case1_4a", "case1.4a", Fraction(-5, 18)),
])
def test_hand_built_case1_instances(name, case, delta):
    G, S = load_case(name)
    assert analyze_structure(G).is_structured and is_strongly_canonical(G, S)
    assert next_case(G, S) == "case1"
    step = reduce_case1(G, S)
    assert step.case == case and step.delta == delta
    check_step(G, S, step)


def test_case1_rejects_wrong_component():
    G, S = load_case("case1_2")
    dec = block_cut_decomposition(G, S)
    large = next(c for c in dec.components if len(c.edges) > 6)
    with pytest.raises(CaseMismatch):
        reduce_case1(G, S, large)
    with pytest.raises(CaseMismatch):
        reduce_case2(G, S, large)


@pytest.mark.parametrize("k, deltas", [
    (3, [Fraction(0)]),
    (4, [Fraction(0), Fraction(-11, 3)]),
    (5, [Fraction(0), Fraction(-1, 12)]),
    (6, [Fraction(0), Fraction(-1, 12), Fraction(-77, 12)]),
])
def test_tight_chain(k, deltas):
    G, S = tight_chain(k)
    assert analyze_structure(G).is_structured and is_strongly_canonical(G, S)
    assert bf_cost(G, S) == Fraction(95, 72) * 6 * k
    trace = []
    out = remove_all_small(G, S, trace)
    assert [s.delta for s in trace] == deltas
    assert all(s.case.startswith("case3") for s in trace)
    for s in trace:
        check_step(G, S, s)
        S = s.cover
    assert out == S and next_case(G, out) is None


def test_6cycle_shortcut_pairs_on_chain():
    G, S = tight_chain(5)
    dec = block_cut_decomposition(G, S)
    for comp in dec.components:
        sp = find_shortcut_pair_6cycle(G, S, comp)
        path = sp.path
        assert set(path) == set(comp.vertices) and len(path) == 6
        assert all(path[i + 1] in G.neighbors[path[i]] for i in range(5))
        assert sp.x not in comp.vertices and sp.y not in comp.vertices
        assert G.has_edge(path[0], sp.x) and G.has_edge(path[-1], sp.y)


def test_identity_without_small_components():
    G, S = tight_chain(4)
    out = remove_all_small(G, S)
    assert remove_all_small(G, out) == out and reduce_step(G, out) is None


def sweep():
    for seed in range(40):
        for n in (12, 14, 16, 18, 20, 22):
            try:
                inst = generate_instance(GeneratorSpec("planted-cycles", n, Fraction(1, 5), seed), retries=60)
            except GenerationFailed:
                continue
            G = inst.graph
            S = prune_to_minimal(G, to_strongly_canonical(G, inst.planted_cover))
            yield G, S


def test_corpus_sweep():
    seen = Counter()
    count = 0
    for G, S in sweep():
        trace = []
        out = remove_all_small(G, S, trace)
        cur = S
        for step in trace:
            check_step(G, cur, step)
            seen[step.case] += 1
            if step.case == "case2":
                seen["repair:" + step.detail["repair"]] += 1
            cur = step.cover
        assert bf_cost(G, out) <= bf_cost(G, S)
        assert all(len(c.edges) > 6 for c in block_cut_decomposition(G, out).components)
        count += 1
    assert count >= 150
    assert {"case1.1", "case2", "case3"} <= set(seen)
