"""Structuredness validation, isolated pairs/triples, forbidden short cycles,
and the cycle-restricted test for 2-edge-covers."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import NotA2EdgeCover, ResourceExhausted
from .graph import Multigraph, components, degrees, is_2vc, is_connected

DEFAULT_CYCLE_CAP = 10**6


@dataclass(frozen=True)
class Violation:
    """A tagged finding of :func:`analyze_structure`.

    ``kind`` is one of ``irrelevant_edge``, ``non_isolating_2cut``,
    ``removable_5cycle``, ``not_simple`` or ``not_2vc``.
    """

    kind: str
    edge: int | None = None
    vertices: tuple = ()

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "vertices": list(self.vertices)}
        if self.edge is not None:
            d["edge"] = self.edge
        return d


@dataclass(frozen=True)
class StructureReport:
    is_structured: bool
    violations: tuple = ()

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def to_dict(self) -> dict:
        return {"is_structured": self.is_structured,
                "violations": [v.to_dict() for v in self.violations]}


def _components_without(G: Multigraph, removed: set) -> list[list[int]]:
    seen = set(removed)
    out = []
    for s in range(G.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for w in G.neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(comp)
    return out


def enumerate_cycles(G: Multigraph, k: int, cap: int = DEFAULT_CYCLE_CAP) -> list[tuple]:
    """All simple ``k``-cycles of the underlying simple graph, ``k >= 3``.

    Each cycle is a vertex tuple that starts at its smallest vertex and whose
    second vertex is smaller than its last; the list is sorted.
    """
    nb = [sorted(x) for x in G.neighbors]
    out = []
    for s in range(G.n):
        path = [s]
        on = {s}

        def dfs(v):
            if len(path) == k:
                if s in G.neighbors[v] and path[1] < path[-1]:
                    out.append(tuple(path))
                    if len(out) > cap:
                        raise ResourceExhausted(f"more than {cap} {k}-cycles")
                return
            for w in nb[v]:
                if w > s and w not in on:
                    on.add(w)
                    path.append(w)
                    dfs(w)
                    path.pop()
                    on.discard(w)

        dfs(s)
    out.sort()
    return out


def analyze_structure(G: Multigraph, cycle_cap: int = DEFAULT_CYCLE_CAP) -> StructureReport:
    """Exhaustively list irrelevant edges, non-isolating 2-vertex-cuts and
    removable 5-cycles; non-simple or non-2VC hosts are reported too."""
    vs: list[Violation] = []
    if not G.is_simple:
        vs.append(Violation("not_simple"))
    if not is_2vc(G):
        vs.append(Violation("not_2vc"))
    for u, v in combinations(range(G.n), 2):
        comps = _components_without(G, {u, v})
        if len(comps) >= 2:
            for e in G.edges_between(u, v):
                vs.append(Violation("irrelevant_edge", edge=e, vertices=(u, v)))
        if len(comps) >= 3 or (len(comps) == 2 and all(len(c) >= 2 for c in comps)):
            vs.append(Violation("non_isolating_2cut", vertices=(u, v)))
    for cyc in enumerate_cycles(G, 5, cycle_cap):
        if sum(1 for x in cyc if G.degree(x) == 2) >= 2:
            vs.append(Violation("removable_5cycle", vertices=cyc))
    vs.sort(key=lambda x: (x.kind, x.vertices, -1 if x.edge is None else x.edge))
    return StructureReport(not vs, tuple(vs))


def is_structured(G: Multigraph) -> bool:
    return analyze_structure(G).is_structured


@dataclass(frozen=True)
class IsolationWitness:
    isolated_set: tuple
    guard_triple: tuple


def find_isolated_set(G: Multigraph, W: Iterable[int], strict: bool = False) -> IsolationWitness | None:
    """A guard triple isolating every vertex of ``W``, if one exists.

    When ``N(W)`` has fewer than three vertices the triple is padded with the
    smallest remaining vertices.  With ``strict`` the witness additionally
    requires ``N(W)`` to equal the guard triple, as it must on structured hosts.
    """
    W = tuple(sorted(set(W)))
    Wset = set(W)
    N = set()
    for u in W:
        N |= G.neighbors[u]
    if N & Wset or len(N) > 3:
        return None
    if strict and len(N) != 3:
        return None
    guard = sorted(N)
    for x in range(G.n):
        if len(guard) >= 3:
            break
        if x not in Wset and x not in N:
            guard.append(x)
    if len(guard) < 3:
        return None
    return IsolationWitness(W, tuple(sorted(guard)))


def find_isolated_pair(G: Multigraph, u1: int, u2: int, strict: bool = False) -> IsolationWitness | None:
    if u1 == u2:
        raise ValueError("an isolated pair needs two distinct vertices")
    return find_isolated_set(G, (u1, u2), strict)


@dataclass(frozen=True)
class ForbiddenCycle:
    """A 4-cycle with an isolated pair or a 6-cycle with an isolated triple."""

    cycle: tuple
    edges: frozenset
    witness: IsolationWitness

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.cycle)

    @property
    def length(self) -> int:
        return len(self.cycle)


def cycle_edge_ids(G: Multigraph, cyc: tuple) -> frozenset:
    k = len(cyc)
    return frozenset(G.edge_id(cyc[i], cyc[(i + 1) % k]) for i in range(k))


@dataclass(frozen=True)
class ForbiddenCycles:
    fours: tuple
    sixes: tuple

    @property
    def four_sets(self) -> frozenset:
        return frozenset(c.vertex_set for c in self.fours)

    @property
    def six_sets(self) -> tuple:
        seen = []
        for c in self.sixes:
            if c.vertex_set not in seen:
                seen.append(c.vertex_set)
        return tuple(seen)


def enumerate_forbidden_cycles(G: Multigraph, cap: int = DEFAULT_CYCLE_CAP) -> ForbiddenCycles:
    """All 4-cycles containing an isolated pair and all 6-cycles ``(u1..u6)``
    in which ``{u1,u3,u5}`` is isolated by ``{u2,u4,u6}``."""
    fours = []
    for cyc in enumerate_cycles(G, 4, cap):
        for pair in ((cyc[0], cyc[2]), (cyc[1], cyc[3])):
            wit = find_isolated_set(G, pair)
            if wit is not None:
                fours.append(ForbiddenCycle(cyc, cycle_edge_ids(G, cyc), wit))
                break
    sixes = []
    for cyc in enumerate_cycles(G, 6, cap):
        for off in (0, 1):
            triple = cyc[off::2]
            guard = set(cyc[1 - off::2])
            N = set()
            for u in triple:
                N |= G.neighbors[u]
            if N <= guard:
                sixes.append(ForbiddenCycle(cyc, cycle_edge_ids(G, cyc),
                                            IsolationWitness(tuple(sorted(triple)), tuple(sorted(guard)))))
                break
    return ForbiddenCycles(tuple(fours), tuple(sixes))


def forbidden_cycles(G: Multigraph) -> ForbiddenCycles:
    """Cached :func:`enumerate_forbidden_cycles` for a host."""
    fc = G.__dict__.get("_forbidden_cycles")
    if fc is None:
        fc = enumerate_forbidden_cycles(G)
        G.__dict__["_forbidden_cycles"] = fc
    return fc


@dataclass
class CycleRestrictedReport:
    ok: bool
    triangle_components: list = field(default_factory=list)
    isolated_pair_4cycles: list = field(default_factory=list)
    thin_6cycles: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def is_cycle_restricted(G: Multigraph, S: Iterable[int]) -> CycleRestrictedReport:
    """Check the three cycle-restricted conditions for a 2-edge-cover ``S``.

    Raises :class:`NotA2EdgeCover` if some vertex has ``S``-degree below 2.
    """
    S = frozenset(S)
    deg = degrees(G, S)
    for v in range(G.n):
        if deg[v] < 2:
            raise NotA2EdgeCover(v)
    fc = forbidden_cycles(G)
    four_sets = fc.four_sets
    rep = CycleRestrictedReport(True)
    comps, _ = components(G, S)
    for c in comps:
        nv, ne = len(c.vertices), len(c.edges)
        if nv == 3 and ne == 3:
            rep.triangle_components.append(tuple(sorted(c.vertices)))
        elif nv == 4 and ne == 4 and c.vertices in four_sets:
            rep.isolated_pair_4cycles.append(tuple(sorted(c.vertices)))
    for W in fc.six_sets:
        cnt = 0
        for e in S:
            a, b = G.edges[e]
            if (a in W) != (b in W):
                cnt += 1
        if cnt < 2:
            rep.thin_6cycles.append(tuple(sorted(W)))
    rep.ok = not (rep.triangle_components or rep.isolated_pair_4cycles or rep.thin_6cycles)
    return rep


def adjacent_components(G: Multigraph, comp_of: dict, W: Iterable[int]) -> list[int]:
    """Indices of the components (under ``comp_of``) joined to ``W`` by a host edge."""
    W = set(W)
    own = {comp_of[v] for v in W}
    out = set()
    for v in W:
        for x in G.neighbors[v]:
            if x not in W and comp_of[x] not in own:
                out.add(comp_of[x])
    return sorted(out)


__all__ = [
    "Violation", "StructureReport", "analyze_structure", "is_structured",
    "IsolationWitness", "find_isolated_set", "find_isolated_pair",
    "ForbiddenCycle", "ForbiddenCycles", "enumerate_forbidden_cycles", "forbidden_cycles",
    "enumerate_cycles", "cycle_edge_ids", "CycleRestrictedReport", "is_cycle_restricted",
    "adjacent_components", "is_connected",
]
