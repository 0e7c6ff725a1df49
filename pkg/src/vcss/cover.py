"""Minimum 2-edge-covers and T-free 2-edge-covers.

The exact backend is a branch-and-bound over edge inclusion, run as
iterative deepening from the unrestricted minimum.  The heuristic backend
repairs a maximum simple 2-matching and is only a contract-compatible
stand-in for large instances; its results are flagged as approximate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from . import kernels
from .errors import InfeasibleError, PreconditionViolated, ResourceExhausted
from .graph import Multigraph, components, degrees, is_2_matching

DEFAULT_BUDGET = int(os.environ.get("VCSS_BUDGET", 10**7))


def vertex_mask(W: Iterable[int]) -> int:
    m = 0
    for v in W:
        m |= 1 << v
    return m


class TriangleSet:
    """Triangles of a host, each a sorted vertex triple.

    No edge of a listed triangle may have a parallel copy in the host.
    """

    def __init__(self, host: Multigraph, triangles: Iterable[Iterable[int]] = ()):
        tris = []
        for t in triangles:
            t = tuple(sorted(t))
            if len(set(t)) != 3:
                raise PreconditionViolated(f"{t} is not a vertex triple")
            a, b, c = t
            for x, y in ((a, b), (b, c), (a, c)):
                k = len(host.edges_between(x, y))
                if k == 0:
                    raise PreconditionViolated(f"{t} is not a triangle of the host")
                if k > 1:
                    raise PreconditionViolated(f"triangle {t} has a parallel edge on {x}{y}")
            tris.append(t)
        self.host = host
        self.triangles = tuple(sorted(set(tris)))

    def __iter__(self):
        return iter(self.triangles)

    def __len__(self):
        return len(self.triangles)

    def __contains__(self, t):
        return tuple(sorted(t)) in set(self.triangles)

    def edges_of(self, t) -> tuple:
        a, b, c = sorted(t)
        return tuple(self.host.edges_between(x, y)[0] for x, y in ((a, b), (b, c), (a, c)))

    @classmethod
    def empty(cls, host: Multigraph) -> "TriangleSet":
        return cls(host, ())


def all_triangles(G: Multigraph, avoid: Iterable[int] = ()) -> list[tuple]:
    """Vertex triples spanning a triangle in ``G`` and avoiding ``avoid``."""
    avoid = set(avoid)
    nb = G.neighbors
    out = []
    for a in range(G.n):
        if a in avoid:
            continue
        for b in sorted(nb[a]):
            if b <= a or b in avoid:
                continue
            for c in sorted(nb[a] & nb[b]):
                if c > b and c not in avoid:
                    out.append((a, b, c))
    return out


def tfree_violations(G: Multigraph, T: TriangleSet, S: Iterable[int]) -> list[tuple]:
    """Components of ``S`` that are triangles listed in ``T``."""
    tset = set(T.triangles)
    out = []
    comps, _ = components(G, S)
    for c in comps:
        if len(c.vertices) == 3 and len(c.edges) == 3 and tuple(sorted(c.vertices)) in tset:
            out.append(tuple(sorted(c.vertices)))
    return out


def is_tfree_2_edge_cover(G: Multigraph, T: TriangleSet, S: Iterable[int]) -> bool:
    S = list(S)
    return min(degrees(G, S), default=2) >= 2 and not tfree_violations(G, T, S)


def max_simple_2_matching(G: Multigraph) -> frozenset:
    """A maximum simple 2-matching via the vertex-splitting gadget: each vertex
    gets two copies, each edge a gadget path, and a maximum matching of the
    gadget graph has size ``m + nu_2``."""
    H = nx.Graph()
    for v in range(G.n):
        H.add_node(("v", v, 0))
        H.add_node(("v", v, 1))
    for e, (a, b) in enumerate(G.edges):
        ea, eb = ("e", e, a), ("e", e, b)
        H.add_edge(ea, eb)
        for side, x in ((ea, a), (eb, b)):
            H.add_edge(side, ("v", x, 0))
            H.add_edge(side, ("v", x, 1))
    mate = {}
    for p, q in nx.max_weight_matching(H, maxcardinality=True):
        mate[p] = q
        mate[q] = p
    out = []
    for e, (a, b) in enumerate(G.edges):
        # in the 2-matching iff both gadget ends are matched to vertex copies
        ma, mb = mate.get(("e", e, a)), mate.get(("e", e, b))
        if ma is not None and mb is not None and ma[0] == "v" and mb[0] == "v":
            out.append(e)
    return frozenset(out)


def _repair_deficient(G: Multigraph, M: Iterable[int], T: TriangleSet | None = None) -> frozenset:
    S = set(M)
    deg = degrees(G, S)
    tset = set(T.triangles) if T is not None else set()
    for v in range(G.n):
        while deg[v] < 2:
            placed = False
            for e in G.incidence[v]:
                if e in S:
                    continue
                S.add(e)
                if tset and _creates_tfree_violation(G, S, e, tset):
                    S.discard(e)
                    continue
                a, b = G.edges[e]
                deg[a] += 1
                deg[b] += 1
                placed = True
                break
            if not placed:
                raise InfeasibleError(f"vertex {v} cannot reach degree 2")
    return frozenset(S)


def _creates_tfree_violation(G, S, e, tset) -> bool:
    a, b = G.edges[e]
    seen = {a}
    stack = [a]
    cnt_edges = set()
    while stack:
        x = stack.pop()
        for f in G.incidence[x]:
            if f in S:
                cnt_edges.add(f)
                y = G.other(f, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > 3:
                        return False
                    stack.append(y)
    return len(seen) == 3 and len(cnt_edges) == 3 and tuple(sorted(seen)) in tset


def min_2_edge_cover(G: Multigraph) -> frozenset:
    """A minimum 2-edge-cover, of size ``2n - nu_2`` for the maximum simple
    2-matching size ``nu_2``: extend a maximum 2-matching by one edge per
    missing unit of degree."""
    for v in range(G.n):
        if G.degree(v) < 2:
            raise InfeasibleError(f"vertex {v} has degree {G.degree(v)} < 2")
    return _repair_deficient(G, max_simple_2_matching(G))


def tfree_2matching_to_cover(G: Multigraph, T: TriangleSet, M: Iterable[int]) -> frozenset:
    """Raise every deficient vertex of a T-free 2-matching to degree 2 with
    non-matching edges, never closing a T-triangle component."""
    M = frozenset(M)
    if not is_2_matching(G, M):
        raise PreconditionViolated("input is not a 2-matching")
    if tfree_violations(G, T, M):
        raise PreconditionViolated("input has a T-triangle component")
    return _repair_deficient(G, M, T)


def validate_appendix_precondition(G: Multigraph, T: TriangleSet, M: Iterable[int],
                                   triangle_edges: tuple[int, int, int]) -> bool:
    """For a 2-matching ``M`` and a triangle (given by its three edge ids) with
    exactly two edges in ``M``: true iff ``M`` contains no triangle of ``T``
    sharing an edge with it."""
    M = frozenset(M)
    if not is_2_matching(G, M):
        raise PreconditionViolated("M is not a 2-matching")
    tri = tuple(triangle_edges)
    verts = set()
    for e in tri:
        verts.update(G.edges[e])
    if len(tri) != 3 or len(set(tri)) != 3 or len(verts) != 3:
        raise PreconditionViolated("triangle must be three distinct edges on three vertices")
    if sum(1 for e in tri if e in M) != 2:
        raise PreconditionViolated("|M ∩ E(triangle)| must be 2")
    for t in T:
        te = T.edges_of(t)
        if all(e in M for e in te) and set(te) & set(tri):
            return False
    return True


@dataclass
class CoverResult:
    edges: frozenset
    optimal: bool
    nodes: int = 0
    backend: str = "exact"

    @property
    def size(self) -> int:
        return len(self.edges)


def constrained_cover_search(G: Multigraph, lower: int, forb=(), bnd=(), require_2vc=False,
                             budget: int | None = None, upper: int | None = None):
    """Iterative deepening over the edge-inclusion kernel.

    ``forb`` lists ``(vertex set, edge count)`` components to forbid and
    ``bnd`` lists ``(vertex set, required crossing edges)``.  Returns
    ``(edges, nodes)``; raises :class:`InfeasibleError` when no solution of
    size at most ``upper`` (default ``m``) exists.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    upper = G.m if upper is None else upper
    eu = [a for a, _ in G.edges]
    ev = [b for _, b in G.edges]
    fm = [vertex_mask(W) for W, _ in forb]
    fc = [k for _, k in forb]
    bm = [vertex_mask(W) for W, _ in bnd]
    br = [k for _, k in bnd]
    total = 0
    for limit in range(max(lower, 0), upper + 1):
        sol, nodes, exhausted = kernels.cover_search(G.n, eu, ev, fm, fc, bm, br, limit,
                                                     budget - total, require_2vc)
        total += nodes
        if exhausted:
            raise ResourceExhausted(f"budget of {budget} nodes exceeded at limit {limit}", total)
        if sol is not None:
            return frozenset(sol), total
    raise InfeasibleError("no feasible edge set")


def exact_min_tfree_2_edge_cover(G: Multigraph, T: TriangleSet | None = None,
                                 budget: int | None = None) -> CoverResult:
    """A minimum 2-edge-cover with no component equal to a triangle of ``T``."""
    if T is None:
        T = TriangleSet.empty(G)
    base = min_2_edge_cover(G)
    if not tfree_violations(G, T, base):
        return CoverResult(base, True, 0)
    forb = [(t, 3) for t in T]
    S, nodes = constrained_cover_search(G, len(base), forb=forb, budget=budget)
    return CoverResult(S, True, nodes)


def heuristic_tfree_2_edge_cover(G: Multigraph, T: TriangleSet | None = None) -> CoverResult:
    """Maximum 2-matching, one edge dropped from each T-triangle component,
    then greedy repair.  Not guaranteed minimum."""
    if T is None:
        T = TriangleSet.empty(G)
    M = set(max_simple_2_matching(G))
    for t in tfree_violations(G, T, M):
        M.discard(max(T.edges_of(t)))
    S = tfree_2matching_to_cover(G, T, M)
    return CoverResult(S, False, 0, "heuristic")


class ExactBackend:
    name = "exact"

    def __init__(self, budget: int | None = None):
        self.budget = budget

    def solve(self, G: Multigraph, T: TriangleSet, epsilon=0) -> CoverResult:
        return exact_min_tfree_2_edge_cover(G, T, self.budget)


class HeuristicBackend:
    name = "heuristic"

    def solve(self, G: Multigraph, T: TriangleSet, epsilon=0) -> CoverResult:
        return heuristic_tfree_2_edge_cover(G, T)


class FallbackBackend:
    """Exact search, falling back to the heuristic when the budget runs out."""

    name = "exact-or-heuristic"

    def __init__(self, budget: int | None = None):
        self.budget = budget

    def solve(self, G: Multigraph, T: TriangleSet, epsilon=0) -> CoverResult:
        try:
            return exact_min_tfree_2_edge_cover(G, T, self.budget)
        except ResourceExhausted:
            return heuristic_tfree_2_edge_cover(G, T)


def get_backend(name: str, budget: int | None = None):
    if name == "exact":
        return ExactBackend(budget)
    if name == "heuristic":
        return HeuristicBackend()
    if name in ("auto", "exact-or-heuristic"):
        return FallbackBackend(budget)
    raise ValueError(f"unknown backend {name!r}")
