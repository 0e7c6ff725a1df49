"""Exact desk-scale oracles: minimum 2VC spanning subgraph and minimum
cycle-restricted 2-edge-cover."""

from __future__ import annotations

from .cover import all_triangles, constrained_cover_search, min_2_edge_cover
from .errors import InfeasibleInput, PreconditionViolated
from .graph import Multigraph, is_2vc
from .structure import forbidden_cycles

OPT_CAP = 14
COVER_CAP = 13


def exact_opt_2vcss(G: Multigraph, budget: int | None = None, cap: int = OPT_CAP) -> frozenset:
    """A minimum-cardinality 2VC spanning edge set.

    Iterative deepening starts at ``n``, so a Hamiltonian cycle is returned
    as soon as the first round finds one.
    """
    if G.n > cap:
        raise PreconditionViolated(f"{G.n} vertices exceeds the oracle cap of {cap}")
    if not is_2vc(G):
        raise InfeasibleInput("host graph is not 2-vertex-connected")
    S, _ = constrained_cover_search(G, G.n, require_2vc=True, budget=budget)
    return S


def cycle_restricted_constraints(G: Multigraph):
    """Kernel constraints equivalent to the cycle-restricted conditions on a
    simple host: triangle and isolated-pair 4-cycle components are forbidden,
    and every forbidden 6-cycle's vertex set needs two crossing edges."""
    fc = forbidden_cycles(G)
    forb = [(t, 3) for t in all_triangles(G)]
    forb += [(sorted(W), 4) for W in sorted(fc.four_sets, key=sorted)]
    bnd = [(sorted(W), 2) for W in fc.six_sets]
    return forb, bnd


def exact_min_cycle_restricted_cover(G: Multigraph, budget: int | None = None,
                                     cap: int = COVER_CAP) -> frozenset:
    """A minimum cycle-restricted 2-edge-cover of a simple host."""
    if G.n > cap:
        raise PreconditionViolated(f"{G.n} vertices exceeds the oracle cap of {cap}")
    if not G.is_simple:
        raise PreconditionViolated("cycle-restricted covers are defined on simple hosts")
    forb, bnd = cycle_restricted_constraints(G)
    lower = len(min_2_edge_cover(G))
    S, _ = constrained_cover_search(G, lower, forb=forb, bnd=bnd, budget=budget)
    return S
