"""Seeded generators of structured graphs and violation-planting mutations.

Randomness comes from a SplitMix64 stream so corpora are reproducible
bit-for-bit from ``(family, n, density, seed)``:

    state <- state + 0x9E3779B97F4A7C15            (mod 2**64)
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9     (mod 2**64)
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB     (mod 2**64)
    output z ^ (z >> 31)

``below(n)`` is ``(next() * n) >> 64``; a Bernoulli draw with probability
``p = num/den`` succeeds when ``next() * den < num * 2**64``; shuffles are
Fisher-Yates from the last index down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import VCSSError
from .graph import Multigraph, is_2vc
from .structure import analyze_structure, is_cycle_restricted

MASK = (1 << 64) - 1
FAMILIES = ("hamiltonian-plus-chords", "gadget-rich", "tight-6cycle-chain", "random-structured",
            "planted-cycles")
DEFAULT_RETRIES = 200


class GenerationFailed(VCSSError):
    """No structured graph was produced within the retry budget."""


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return (self.next() * n) >> 64

    def bernoulli(self, p: Fraction) -> bool:
        p = Fraction(p)
        return self.next() * p.denominator < p.numerator << 64

    def shuffle(self, xs: list) -> list:
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]
        return xs

    def choice(self, xs):
        return xs[self.below(len(xs))]


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    density: Fraction = Fraction(3, 10)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "density", Fraction(self.density).limit_denominator(10**6))


@dataclass
class Instance:
    graph: Multigraph
    spec: GeneratorSpec
    attempts: int
    planted_cover: frozenset | None = None

    def comments(self) -> list[str]:
        s = self.spec
        return [f"family {s.family} n {s.n} density {s.density} seed {s.seed} attempts {self.attempts}"]


def _graph(n: int, pairs) -> Multigraph:
    return Multigraph(n, sorted({(min(a, b), max(a, b)) for a, b in pairs}))


def _hamiltonian_plus_chords(rng, n, density):
    perm = rng.shuffle(list(range(n)))
    cyc = {(min(perm[i], perm[(i + 1) % n]), max(perm[i], perm[(i + 1) % n])) for i in range(n)}
    pairs = set(cyc)
    for a, b in combinations(range(n), 2):
        if (a, b) not in cyc and rng.bernoulli(density):
            pairs.add((a, b))
    return _graph(n, pairs), None


def _random_structured(rng, n, density):
    pairs = [(a, b) for a, b in combinations(range(n), 2) if rng.bernoulli(density)]
    return _graph(n, pairs), None


def _gadget_rich(rng, n, density):
    """A Hamiltonian base cycle with random chords, then isolated pairs and
    triples hung on pairwise non-adjacent guard triples."""
    n_gadget = 0
    budget = n - 8
    sizes = []
    while budget >= 2:
        s = 2 if budget < 3 or rng.below(3) else 3
        sizes.append(s)
        budget -= s
        n_gadget += s
        if rng.below(2) == 0:
            break
    base = n - n_gadget
    perm = rng.shuffle(list(range(base)))
    pairs = {(min(perm[i], perm[(i + 1) % base]), max(perm[i], perm[(i + 1) % base])) for i in range(base)}
    for a, b in combinations(range(base), 2):
        if rng.bernoulli(density / 2):
            pairs.add((a, b))
    adj = {v: set() for v in range(base)}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    nxt = base
    for s in sizes:
        guard = None
        for _ in range(50):
            cand = sorted(rng.shuffle(list(range(base)))[:3])
            if all(y not in adj[x] for x, y in combinations(cand, 2)):
                guard = cand
                break
        if guard is None:
            guard = sorted(rng.shuffle(list(range(base)))[:3])
        members = list(range(nxt, nxt + s))
        nxt += s
        if s == 2:
            # a 4-cycle through the pair and two guards, the third guard optional per vertex
            for u in members:
                for g in guard[:2]:
                    pairs.add((g, u))
            pairs.add((guard[2], members[rng.below(2)]))
        else:
            # a 6-cycle alternating triple/guard, every triple vertex of degree 2 or 3
            for i, u in enumerate(members):
                pairs.add((guard[i], u))
                pairs.add((guard[(i + 1) % 3], u))
                if rng.below(2):
                    pairs.add((guard[(i + 2) % 3], u))
    return _graph(n, pairs), None


def tight_chain(k: int) -> tuple[Multigraph, frozenset]:
    """``k`` disjoint 6-cycles ``X_0..X_{k-1}`` on a ring; vertex ``j`` (even)
    of ``X_i`` is joined to vertex ``j+1`` of ``X_{i+1}``.  The graph is cubic
    and the planted cover is the union of the 6-cycles."""
    if k < 3:
        raise ValueError("the chain needs at least three 6-cycles")
    pairs = []
    for i in range(k):
        for j in range(6):
            pairs.append((6 * i + j, 6 * i + (j + 1) % 6))
    cover_pairs = {(min(a, b), max(a, b)) for a, b in pairs}
    for i in range(k):
        for j in range(0, 6, 2):
            pairs.append((6 * i + j, 6 * ((i + 1) % k) + j + 1))
    G = _graph(6 * k, pairs)
    S = frozenset(e for e, ab in enumerate(G.edges) if ab in cover_pairs)
    return G, S


def _planted_cycles(rng, n, density):
    """Disjoint cycles of lengths 4 to 8 covering every vertex, plus random
    chords.  The planted cover is the cycle union."""
    sizes = []
    left = n
    while left > 0:
        if 4 <= left <= 8 and rng.below(2):
            s = left
        else:
            s = 4 + rng.below(5)
        if s > left or left - s in (1, 2, 3):
            continue
        sizes.append(s)
        left -= s
    perm = rng.shuffle(list(range(n)))
    cover = set()
    i = 0
    for s in sizes:
        c = perm[i:i + s]
        i += s
        for j in range(s):
            a, b = c[j], c[(j + 1) % s]
            cover.add((min(a, b), max(a, b)))
    pairs = set(cover)
    for a, b in combinations(range(n), 2):
        if (a, b) not in cover and rng.bernoulli(density):
            pairs.add((a, b))
    G = _graph(n, pairs)
    S = frozenset(e for e, ab in enumerate(G.edges) if ab in cover)
    return G, S


_BUILDERS = {
    "hamiltonian-plus-chords": _hamiltonian_plus_chords,
    "gadget-rich": _gadget_rich,
    "random-structured": _random_structured,
    "planted-cycles": _planted_cycles,
}


def generate_instance(spec: GeneratorSpec, retries: int = DEFAULT_RETRIES) -> Instance:
    """Draw until the graph is structured (and, for planted families, the
    planted cover is cycle-restricted)."""
    if spec.family == "tight-6cycle-chain":
        if spec.n % 6:
            raise GenerationFailed("tight-6cycle-chain needs n divisible by 6")
        G, S = tight_chain(spec.n // 6)
        if not analyze_structure(G).is_structured:
            raise GenerationFailed("tight chain is not structured")
        return Instance(G, spec, 1, S)
    if spec.n < 4:
        raise GenerationFailed("structured graphs have at least four vertices")
    rng = SplitMix64(spec.seed)
    build = _BUILDERS[spec.family]
    for attempt in range(1, retries + 1):
        G, S = build(rng, spec.n, spec.density)
        if not is_2vc(G) or not analyze_structure(G).is_structured:
            continue
        if S is not None and not is_cycle_restricted(G, S):
            continue
        return Instance(G, spec, attempt, S)
    raise GenerationFailed(f"{spec.family} n={spec.n} seed={spec.seed}: no structured graph "
                           f"in {retries} attempts")


def generate(spec: GeneratorSpec, retries: int = DEFAULT_RETRIES) -> Multigraph:
    return generate_instance(spec, retries).graph


# violation-planting mutations

def glue_along_edge(G1: Multigraph, G2: Multigraph, e1: int = 0, e2: int = 0) -> Multigraph:
    """Identify edge ``e1`` of ``G1`` with edge ``e2`` of ``G2``; the shared
    edge becomes irrelevant."""
    a1, b1 = G1.edges[e1]
    a2, b2 = G2.edges[e2]
    return _glue(G1, G2, {a2: a1, b2: b1}, drop=(a2, b2))


def glue_at_vertices(G1: Multigraph, G2: Multigraph, p1: tuple, p2: tuple) -> Multigraph:
    """Identify two non-adjacent vertices of ``G1`` with two non-adjacent
    vertices of ``G2``; the pair becomes a non-isolating 2-cut."""
    (x1, y1), (x2, y2) = p1, p2
    if G1.has_edge(x1, y1) or G2.has_edge(x2, y2):
        raise ValueError("glued vertices must be non-adjacent")
    return _glue(G1, G2, {x2: x1, y2: y1}, drop=None)


def _glue(G1, G2, ident, drop):
    mp = {}
    nxt = G1.n
    for v in range(G2.n):
        if v in ident:
            mp[v] = ident[v]
        else:
            mp[v] = nxt
            nxt += 1
    pairs = list(G1.edges)
    for a, b in G2.edges:
        if drop is not None and {a, b} == set(drop):
            continue
        pairs.append((mp[a], mp[b]))
    return _graph(nxt, pairs)


def attach_removable_5cycle(G: Multigraph, a: int, b: int, c: int) -> Multigraph:
    """Add a path ``a-x-y-b`` with new vertices ``x, y``; with ``a~c~b`` this
    closes a 5-cycle holding two degree-2 vertices."""
    if not (G.has_edge(a, c) and G.has_edge(b, c)) or a == b:
        raise ValueError("a and b need the common neighbour c")
    x, y = G.n, G.n + 1
    return _graph(G.n + 2, list(G.edges) + [(a, x), (x, y), (y, b)])


def find_common_neighbour_triple(G: Multigraph):
    """Smallest ``(a, b, c)`` with ``a < b``, ``a~c``, ``b~c``."""
    for c in range(G.n):
        nb = sorted(G.neighbors[c])
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                return a, b, c
    return None


def find_nonadjacent_pair(G: Multigraph):
    for a, b in combinations(range(G.n), 2):
        if not G.has_edge(a, b):
            return a, b
    return None
