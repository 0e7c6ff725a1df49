from fractions import Fraction

import pytest

from corpus import structured
from vcss.generators import (FAMILIES, GenerationFailed, GeneratorSpec, SplitMix64,
                             attach_removable_5cycle, find_common_neighbour_triple,
                             find_nonadjacent_pair, generate, generate_instance, glue_along_edge,
                             glue_at_vertices, tight_chain)
from vcss.graph import is_2vc, save_graph
from vcss.structure import analyze_structure, is_cycle_restricted


def test_splitmix_reference_outputs():
    # published first outputs of the splitmix64 generator for seed 0
    r = SplitMix64(0)
    assert r.next() == 0xE220A8397B1DCDAF
    assert r.next() == 0x6E789E6AA1B965F4


def test_rng_helpers():
    r = SplitMix64(3)
    xs = r.shuffle(list(range(20)))
    assert sorted(xs) == list(range(20))
    assert all(0 <= SplitMix64(i).below(7) < 7 for i in range(50))
    assert not any(SplitMix64(i).bernoulli(Fraction(0)) for i in range(20))
    assert all(SplitMix64(i).bernoulli(Fraction(1)) for i in range(20))


@pytest.mark.parametrize("family", [f for f in FAMILIES if f != "tight-6cycle-chain"])
def test_determinism(family):
    spec = GeneratorSpec(family, 12, Fraction(3, 10), 7)
    a, b = generate_instance(spec), generate_instance(spec)
    assert save_graph(a.graph, a.comments()) == save_graph(b.graph, b.comments())
    assert analyze_structure(a.graph).is_structured
    other = generate(GeneratorSpec(family, 12, Fraction(3, 10), 8))
    assert save_graph(other) != save_graph(a.graph)


def test_planted_covers_are_cycle_restricted():
    for seed in range(10):
        inst = generate_instance(GeneratorSpec("planted-cycles", 16, Fraction(1, 4), seed))
        assert is_cycle_restricted(inst.graph, inst.planted_cover)


def test_tight_chain_family():
    for k in (3, 4, 5):
        G, S = tight_chain(k)
        assert analyze_structure(G).is_structured
        assert all(G.degree(v) == 3 for v in range(G.n))
        assert len(S) == 6 * k and is_cycle_restricted(G, S)
    inst = generate_instance(GeneratorSpec("tight-6cycle-chain", 18))
    assert inst.graph == tight_chain(3)[0]
    with pytest.raises(GenerationFailed):
        generate_instance(GeneratorSpec("tight-6cycle-chain", 20))
    with pytest.raises(ValueError):
        tight_chain(2)


def test_low_density_fails():
    with pytest.raises(GenerationFailed):
        generate_instance(GeneratorSpec("random-structured", 12, Fraction(1, 100), 0), retries=20)


def test_unknown_family():
    with pytest.raises(ValueError):
        GeneratorSpec("nope", 10)


def test_mutations_plant_their_class():
    A, B = (inst.graph for inst in structured(2, sizes=(8,)))
    assert "irrelevant_edge" in analyze_structure(glue_along_edge(A, B)).kinds()
    assert "non_isolating_2cut" in analyze_structure(
        glue_at_vertices(A, B, find_nonadjacent_pair(A), find_nonadjacent_pair(B))).kinds()
    a, b, c = find_common_neighbour_triple(A)
    M = attach_removable_5cycle(A, a, b, c)
    assert is_2vc(M) and "removable_5cycle" in analyze_structure(M).kinds()
