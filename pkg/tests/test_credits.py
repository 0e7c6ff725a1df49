from fractions import Fraction
from itertools import combinations

from oracles import bf_cost
from corpus import min_covers, random_cycle_restricted, structured
from vcss.credits import assign_credits, cost, cost_prime, credits, delta_contribution
from vcss.generators import SplitMix64
from vcss.graph import Multigraph


def complete(n):
    return Multigraph(n, list(combinations(range(n), 2)))


def cyc(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def ids(G, pairs):
    return frozenset(G.edge_id(min(a, b), max(a, b)) for a, b in pairs)


def test_small_cycles():
    G = complete(12)
    assert credits(G, ids(G, cyc(range(5)))) == Fraction(115, 72)
    assert credits(G, ids(G, cyc(range(4)))) == Fraction(92, 72)
    assert credits(G, ids(G, cyc(range(6)))) == Fraction(23, 12)
    assert credits(G, ids(G, cyc(range(6))), "cr'") == 2
    assert credits(G, ids(G, cyc(range(5))), "cr'") == Fraction(5, 3)


def test_large_components():
    G = complete(12)
    assert credits(G, ids(G, cyc(range(8)))) == 2
    # two 5-cycles joined by a bridge: 1 + 2 blocks + 1/4
    S = ids(G, cyc(range(5)) + [(4, 5)] + cyc(range(5, 10)))
    assert credits(G, S) == Fraction(13, 4)
    assert cost(G, S) == 11 + Fraction(13, 4) == bf_cost(G, S)


def test_ledger_entries_and_dict():
    G = complete(12)
    S = ids(G, cyc(range(5)) + [(4, 5)] + cyc(range(5, 10)))
    led = assign_credits(G, S)
    kinds = [k for k, *_ in led.entries()]
    assert kinds.count("component") == 1 and kinds.count("block") == 2 and kinds.count("bridge") == 1
    d = led.to_dict()
    assert d["cost"] == [cost(G, S).numerator, cost(G, S).denominator] and d["size"] == 11


def test_delta_merging_two_5cycles():
    G = complete(12)
    before = assign_credits(G, ids(G, cyc(range(5)) + cyc(range(5, 10))))
    after = assign_credits(G, ids(G, cyc(range(10))))
    # two small 5-cycles (115/72 each) become one large bridgeless cycle (2)
    assert delta_contribution(before, after, range(10)) == 2 - Fraction(230, 72)
    assert delta_contribution(before, after, (11,)) == 0


def test_cost_matches_networkx_on_random_covers():
    for i, inst in enumerate(structured(60, sizes=(10, 12, 14, 16))):
        G = inst.graph
        S = random_cycle_restricted(G, SplitMix64(i), tries=G.m)
        assert cost(G, S) == bf_cost(G, S)
        assert cost_prime(G, S) == bf_cost(G, S, small=5)
        led = assign_credits(G, S)
        for _, _, c, _ in led.entries():
            assert 72 % c.denominator == 0


def test_cycle_covers_cost_at_most_ratio():
    # a large bridgeless cycle costs less per edge than a small component
    rng = SplitMix64(9)
    G = complete(30)
    for _ in range(50):
        verts = rng.shuffle(list(range(30)))
        S, i = set(), 0
        while 30 - i >= 4:
            k = min(30 - i, 4 + rng.below(8))
            if 30 - i - k in (1, 2, 3):
                k = 30 - i
            S |= ids(G, cyc(verts[i:i + k]))
            i += k
        assert cost(G, S) <= Fraction(95, 72) * len(S)
        assert cost_prime(G, S) <= Fraction(4, 3) * len(S)


def test_credits_positive_on_min_covers():
    for G, S in min_covers(30):
        led = assign_credits(G, S)
        assert all(c > 0 for c in led.per_component.values())
        assert cost(G, S) == bf_cost(G, S)
