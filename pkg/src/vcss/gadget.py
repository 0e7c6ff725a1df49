"""The reduction from minimum cycle-restricted 2-edge-cover in ``G`` to minimum
T-free 2-edge-cover in a gadget multigraph ``G'``.

``G'`` contracts a maximal family of vertex-disjoint forbidden 6-cycles and
replaces each isolated pair of a maximal family of forbidden 4-cycles by a
four-vertex gadget.  :func:`project_cover` and :func:`lift_cover` move covers
between the two graphs with the size changes ``-6|C| + 2|P|`` and
``+6|C| - 2|P|`` respectively.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cover import CoverResult, ExactBackend, TriangleSet, all_triangles, is_tfree_2_edge_cover
from .errors import InvariantError, PreconditionViolated
from .graph import Multigraph, degrees
from .structure import ForbiddenCycle, forbidden_cycles, is_cycle_restricted


@dataclass(frozen=True)
class Families:
    sixes: tuple = ()
    fours: tuple = ()

    @property
    def pairs(self) -> tuple:
        return tuple(f.witness.isolated_set for f in self.fours)


def select_maximal_families(G: Multigraph) -> Families:
    """Greedy maximal families in ascending cycle order.

    Forbidden 6-cycles are taken vertex-disjointly; then forbidden 4-cycles
    that avoid them, are vertex-disjoint from each other, and whose isolated
    pairs have no host edge to an isolated pair already taken.  A pair whose
    neighbourhood has fewer than three vertices (impossible on structured
    hosts) is skipped.
    """
    fc = forbidden_cycles(G)
    used: set = set()
    sixes = []
    for c in fc.sixes:
        if used.isdisjoint(c.cycle):
            sixes.append(c)
            used.update(c.cycle)
    fours = []
    pair_vertices: set = set()
    for c in fc.fours:
        if not used.isdisjoint(c.cycle):
            continue
        pair = c.witness.isolated_set
        if len(G.neighbors[pair[0]] | G.neighbors[pair[1]]) != 3:
            # only a structured host guarantees three real guards
            continue
        if any(x in pair_vertices for u in pair for x in G.neighbors[u]):
            continue
        fours.append(c)
        used.update(c.cycle)
        pair_vertices.update(pair)
    return Families(tuple(sixes), tuple(fours))


@dataclass(frozen=True)
class ContractedCycle:
    cycle: tuple
    edges: frozenset
    vertex: int


@dataclass(frozen=True)
class PairGadget:
    pair: tuple
    guards: tuple
    guard_images: tuple
    primes: tuple
    w: int
    parallel: tuple
    w_edges: tuple
    pair_edges: tuple
    cycle: tuple


@dataclass
class GadgetMap:
    host: Multigraph
    gprime: Multigraph
    contracted: tuple
    pairs: tuple
    to_prime: dict
    from_prime: dict
    vertex_map: dict
    overlaps: list = field(default_factory=list)

    @property
    def offset(self) -> int:
        """``6|C| - 2|P|``: the size difference between matching covers."""
        return 6 * len(self.contracted) - 2 * len(self.pairs)

    def to_dict(self) -> dict:
        return {
            "contracted_sixcycles": [{"cycle": list(c.cycle), "vertex": c.vertex} for c in self.contracted],
            "pair_gadgets": [{
                "pair": list(p.pair), "guards": list(p.guards),
                "guard_images": list(p.guard_images),
                "new_vertices": list(p.primes) + [p.w],
                "parallel_edges": [list(x) for x in p.parallel],
                "w_edges": list(p.w_edges),
            } for p in self.pairs],
            "edge_correspondence": {str(k): v for k, v in sorted(self.to_prime.items())},
            "overlaps": self.overlaps,
        }


def build_gprime(G: Multigraph, families: Families | None = None):
    """Build ``(G', T, map)``.  ``T`` holds every triangle of ``G'`` that avoids
    the contracted vertices."""
    if families is None:
        families = select_maximal_families(G)
    pair_vertices = set()
    for f in families.fours:
        pair_vertices.update(f.witness.isolated_set)
    contracted_of = {}
    for i, c in enumerate(families.sixes):
        for v in c.cycle:
            contracted_of[v] = i
    vmap = {}
    nxt = 0
    for v in range(G.n):
        if v not in pair_vertices and v not in contracted_of:
            vmap[v] = nxt
            nxt += 1
    cvert = []
    for i, c in enumerate(families.sixes):
        cvert.append(nxt)
        for v in c.cycle:
            vmap[v] = nxt
        nxt += 1
    edges = []
    to_prime, from_prime = {}, {}
    for e, (a, b) in enumerate(G.edges):
        if a in pair_vertices or b in pair_vertices:
            continue
        ma, mb = vmap[a], vmap[b]
        if ma == mb:
            continue
        to_prime[e] = len(edges)
        from_prime[len(edges)] = e
        edges.append((ma, mb))
    gadgets = []
    overlaps = []
    guard_use: dict = {}
    for f in families.fours:
        pair = f.witness.isolated_set
        guards = f.witness.guard_triple
        primes = (nxt, nxt + 1, nxt + 2)
        w = nxt + 3
        nxt += 4
        parallel, pair_edges = [], []
        for i, g in enumerate(guards):
            pe = tuple(x for u in pair for x in G.edges_between(u, g))
            if not pe:
                raise InvariantError(f"guard {g} of pair {pair} has no edge to the pair")
            pair_edges.append(tuple(sorted(pe)))
            ids = []
            for _ in pe:
                ids.append(len(edges))
                edges.append((vmap[g], primes[i]))
            parallel.append(tuple(ids))
            if g in contracted_of:
                overlaps.append({"pair": list(pair), "guard": g, "contracted_into": cvert[contracted_of[g]]})
            guard_use.setdefault(g, []).append(pair)
        w_edges = []
        for i in range(3):
            w_edges.append(len(edges))
            edges.append((primes[i], w))
        gadgets.append(PairGadget(pair, guards, tuple(vmap[g] for g in guards), primes, w,
                                  tuple(parallel), tuple(w_edges), tuple(pair_edges), f.cycle))
    for g, pairs in sorted(guard_use.items()):
        if len(pairs) > 1:
            overlaps.append({"guard": g, "shared_by": [list(p) for p in pairs]})
    Gp = Multigraph(nxt, edges)
    try:
        T = TriangleSet(Gp, all_triangles(Gp, avoid=cvert))
    except PreconditionViolated as exc:
        raise InvariantError(f"gadget graph violates the triangle precondition: {exc}") from None
    contracted = tuple(ContractedCycle(c.cycle, c.edges, cvert[i]) for i, c in enumerate(families.sixes))
    gm = GadgetMap(G, Gp, contracted, tuple(gadgets), to_prime, from_prime, vmap, overlaps)
    return Gp, T, gm


def _pair_guard_edges(G, F, gadget, i):
    return [e for e in gadget.pair_edges[i] if e in F]


def project_cover(G: Multigraph, F, gm: GadgetMap, check: bool = True) -> frozenset:
    """Map a cycle-restricted 2-edge-cover of ``G`` to a T-free 2-edge-cover of
    ``G'`` with at most ``|F| - 6|C| + 2|P|`` edges."""
    F = set(F)
    if check and not is_cycle_restricted(G, F):
        raise PreconditionViolated("input is not a cycle-restricted 2-edge-cover")
    size_in = len(F)
    # rotate pairs that reach only two guards so that all three are reached
    for gd in gm.pairs:
        reached = [i for i in range(3) if _pair_guard_edges(G, F, gd, i)]
        if len(reached) == 3:
            continue
        if len(reached) != 2:
            raise InvariantError(f"pair {gd.pair} reaches {len(reached)} guards")
        (missing,) = [i for i in range(3) if i not in reached]
        v1 = gd.guards[missing]
        deg = degrees(G, F)
        uj = min(u for u in gd.pair if G.has_edge(u, v1))
        vi = min((gd.guards[i] for i in reached if deg[gd.guards[i]] >= 3), default=None)
        if vi is None:
            raise InvariantError(f"pair {gd.pair} forms a 4-cycle component")
        F.discard(G.edge_id(uj, vi))
        F.add(G.edge_id(uj, v1))
    Fp = {gm.to_prime[e] for e in F if e in gm.to_prime}
    for gd in gm.pairs:
        t = [len(_pair_guard_edges(G, F, gd, i)) for i in range(3)]
        for i in range(3):
            Fp.update(gd.parallel[i][:t[i]])
        order = [i for i in range(3) if t[i] == 1] + [i for i in range(3) if t[i] != 1]
        for i in order[:2]:
            Fp.add(gd.w_edges[i])
    Fp = frozenset(Fp)
    T = TriangleSet(gm.gprime, all_triangles(gm.gprime, avoid=[c.vertex for c in gm.contracted]))
    if not is_tfree_2_edge_cover(gm.gprime, T, Fp):
        raise InvariantError("projected set is not a T-free 2-edge-cover")
    if len(Fp) > size_in - gm.offset:
        raise InvariantError("projection exceeded its size bound")
    return Fp


def lift_cover(G: Multigraph, Fp, gm: GadgetMap, T: TriangleSet | None = None,
               check: bool = True) -> frozenset:
    """Map a T-free 2-edge-cover of ``G'`` to a cycle-restricted 2-edge-cover of
    ``G`` with at most ``|F'| + 6|C| - 2|P|`` edges."""
    Gp = gm.gprime
    if T is None:
        T = TriangleSet(Gp, all_triangles(Gp, avoid=[c.vertex for c in gm.contracted]))
    Fp = set(Fp)
    if check and not is_tfree_2_edge_cover(Gp, T, Fp):
        raise PreconditionViolated("input is not a T-free 2-edge-cover of the gadget graph")
    size_in = len(Fp)
    for gd in gm.pairs:
        if all(e in Fp for e in gd.w_edges):
            i = min(i for i in range(3) if len(gd.parallel[i]) >= 2)
            Fp.discard(gd.w_edges[i])
            held = [e for e in gd.parallel[i] if e in Fp]
            if len(held) == 1:
                Fp.add(next(e for e in gd.parallel[i] if e not in Fp))
    F = {gm.from_prime[e] for e in Fp if e in gm.from_prime}
    for c in gm.contracted:
        F.update(c.edges)
    for gd in gm.pairs:
        s = [sum(1 for e in gd.parallel[i] if e in Fp) for i in range(3)]
        pdeg = {u: 0 for u in gd.pair}
        for i in range(3):
            if s[i] == 2:
                for e in gd.pair_edges[i]:
                    F.add(e)
                    for u in G.edges[e]:
                        if u in pdeg:
                            pdeg[u] += 1
        singles = sorted((i for i in range(3) if s[i] == 1), key=lambda i: (len(gd.pair_edges[i]), i))
        for i in singles:
            opts = []
            for e in gd.pair_edges[i]:
                u = next(x for x in G.edges[e] if x in pdeg)
                opts.append((pdeg[u], u, e))
            _, u, e = min(opts)
            F.add(e)
            pdeg[u] += 1
        if min(pdeg.values()) < 2:
            raise InvariantError(f"pair {gd.pair} left with degree below 2")
    F = frozenset(F)
    if len(F) > size_in + gm.offset:
        raise InvariantError("lift exceeded its size bound")
    if check and not is_cycle_restricted(G, F):
        raise InvariantError("lifted set is not cycle-restricted")
    return F


@dataclass
class CycleRestrictedResult:
    edges: frozenset
    optimal: bool
    gprime_size: int
    contracted: int
    pairs: int
    backend: str
    nodes: int = 0


def compute_cycle_restricted_cover(G: Multigraph, epsilon=0, backend=None) -> CycleRestrictedResult:
    """Families, gadget graph, backend cover of ``G'``, then lift.

    With the exact backend the result has size exactly
    ``rho(G', T) + 6|C| - 2|P|``, the minimum cycle-restricted cover size.
    The approximate backend is given ``epsilon / 2``.
    """
    if backend is None:
        backend = ExactBackend()
    fam = select_maximal_families(G)
    Gp, T, gm = build_gprime(G, fam)
    res: CoverResult = backend.solve(Gp, T, epsilon / 2 if epsilon else 0)
    F = lift_cover(G, res.edges, gm, T)
    return CycleRestrictedResult(F, res.optimal, res.size, len(gm.contracted), len(gm.pairs),
                                 getattr(backend, "name", "custom"), res.nodes)
