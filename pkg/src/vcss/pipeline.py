"""End-to-end driver: cycle-restricted cover, strongly canonical form, small
component removal, then completion to a 2VC spanning subgraph."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .canonical import is_strongly_canonical, prune_to_minimal, to_strongly_canonical
from .cover import get_backend
from .credits import COST_RATIO, assign_credits, cost
from .errors import InfeasibleInput, InvariantError, NotA2EdgeCover
from .gadget import compute_cycle_restricted_cover
from .graph import Multigraph, block_cut_decomposition, is_2vc
from .oracle import OPT_CAP, exact_opt_2vcss
from .reducer import remove_all_small
from .structure import is_cycle_restricted

MIN_PIPELINE_N = 20
COMPLETION_MODES = ("ear-heuristic", "exact-oracle")


@dataclass
class PipelineResult:
    solution: frozenset
    feasible: bool
    route: str
    completion_mode: str | None = None
    stage_sizes: dict = field(default_factory=dict)
    stage_costs: dict = field(default_factory=dict)
    completion_check: bool | None = None
    opt: int | None = None
    ratio_vs_oracle: Fraction | None = None
    canonical_trace: list = field(default_factory=list)
    reduction_trace: list = field(default_factory=list)
    ledgers: dict = field(default_factory=dict)
    gprime: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.solution)

    def to_dict(self) -> dict:
        def frac(x):
            return None if x is None else [x.numerator, x.denominator]

        return {
            "route": self.route,
            "feasible": self.feasible,
            "size": self.size,
            "solution": sorted(self.solution),
            "completion_mode": self.completion_mode,
            "completion_check": self.completion_check,
            "stage_sizes": self.stage_sizes,
            "stage_costs": {k: {s: frac(v) for s, v in d.items()} for k, d in self.stage_costs.items()},
            "opt": self.opt,
            "ratio_vs_oracle": frac(self.ratio_vs_oracle),
            "canonical_trace": self.canonical_trace,
            "reduction_trace": [s.to_dict() for s in self.reduction_trace],
            "ledgers": self.ledgers,
            "gadget_graph": self.gprime,
        }


def _useful(G: Multigraph, dec, comp_of, e: int) -> bool:
    """Adding ``e`` merges two components, or joins two vertices of one
    component that share no block."""
    a, b = G.edges[e]
    if comp_of[a] != comp_of[b]:
        return True
    comp = dec.components[comp_of[a]]
    for blk in comp.blocks:
        if a in blk.vertices and b in blk.vertices:
            return False
    return True


def _prune_2vc(G: Multigraph, S, order) -> frozenset:
    S = set(S)
    for e in order:
        if e in S:
            S.discard(e)
            if not is_2vc(G, S):
                S.add(e)
    return frozenset(S)


def complete_to_2vc(G: Multigraph, S2, mode: str = "ear-heuristic") -> tuple[frozenset, bool]:
    """A 2VC spanning edge set and whether ``cost'`` did not increase.

    ``exact-oracle`` returns a minimum 2VC spanning subgraph.  The
    ``ear-heuristic`` greedily adds the useful host edge with the smallest
    resulting ``cost'``, prunes, and compares against a reverse-delete run
    that keeps ``S2`` edges longest; the smaller result wins.
    """
    S2 = frozenset(S2)
    target = cost(G, S2, "cr'")
    if mode == "exact-oracle":
        S = exact_opt_2vcss(G)
    elif mode == "ear-heuristic":
        S = set(S2)
        while not is_2vc(G, S):
            dec = block_cut_decomposition(G, S)
            comp_of = dec.component_of()
            best = None
            for e in range(G.m):
                if e in S or not _useful(G, dec, comp_of, e):
                    continue
                c = cost(G, S | {e}, "cr'")
                if best is None or c < best[0]:
                    best = (c, e)
            if best is None:
                raise InvariantError("no augmenting host edge")
            S.add(best[1])
        added = sorted(set(S) - S2)
        greedy = _prune_2vc(G, S, added + sorted(S2))
        rev = _prune_2vc(G, range(G.m), [e for e in range(G.m) if e not in S2] + sorted(S2))
        S = min((greedy, rev), key=lambda x: (len(x), sorted(x)))
    else:
        raise ValueError(f"unknown completion mode {mode!r}")
    if not is_2vc(G, S):
        raise InvariantError("completion is not 2VC")
    return frozenset(S), cost(G, S, "cr'") <= target


def run_pipeline(G: Multigraph, epsilon=0, backend: str = "exact", force_pipeline: bool = False,
                 completion_mode: str = "ear-heuristic", with_oracle: bool = True,
                 budget: int | None = None, initial_cover=None) -> PipelineResult:
    """Route small hosts to the oracle; otherwise cover, canonicalize, remove
    small components and complete.  ``initial_cover`` replaces the computed
    cycle-restricted cover when it is cycle-restricted and no larger, so a
    planted minimum cover can seed the later stages."""
    if not is_2vc(G):
        raise InfeasibleInput("host graph is not 2-vertex-connected")
    opt = None
    if with_oracle and G.n <= OPT_CAP:
        opt = len(exact_opt_2vcss(G, budget))
    if G.n < MIN_PIPELINE_N and not force_pipeline:
        S = exact_opt_2vcss(G, budget, cap=MIN_PIPELINE_N - 1)
        opt = len(S)
        res = PipelineResult(S, True, "oracle", opt=opt, ratio_vs_oracle=Fraction(1))
        res.stage_sizes = {"S": len(S)}
        return res
    eps = Fraction(epsilon) * Fraction(72, 95)
    cr = compute_cycle_restricted_cover(G, eps, get_backend(backend, budget))
    S0 = cr.edges
    seeded = False
    if initial_cover is not None:
        F = frozenset(initial_cover)
        try:
            ok = bool(is_cycle_restricted(G, F))
        except NotA2EdgeCover:
            ok = False
        if ok and len(F) <= len(S0):
            S0, seeded = F, True
    ctrace: list = []
    S1 = prune_to_minimal(G, to_strongly_canonical(G, S0, ctrace))
    c1 = cost(G, S1)
    if c1 > COST_RATIO * len(S1):
        raise InvariantError(f"initial cost {c1} exceeds 95/72 of {len(S1)}")
    rtrace: list = []
    S2 = remove_all_small(G, S1, rtrace)
    c2 = cost(G, S2)
    if c2 > c1 or c2 != cost(G, S2, "cr'"):
        raise InvariantError("small-component removal broke the cost chain")
    if not is_strongly_canonical(G, S2):
        raise InvariantError("S2 is not strongly canonical")
    S, check = complete_to_2vc(G, S2, completion_mode)
    res = PipelineResult(S, is_2vc(G, S), "pipeline", completion_mode)
    res.stage_sizes = {"S0": len(S0), "S1": len(S1), "S2": len(S2), "S": len(S)}
    res.stage_costs = {
        name: {"cr": cost(G, X), "cr'": cost(G, X, "cr'")}
        for name, X in (("S0", S0), ("S1", S1), ("S2", S2), ("S", S))
    }
    res.completion_check = check
    res.canonical_trace = ctrace
    res.reduction_trace = rtrace
    res.ledgers = {"S1": assign_credits(G, S1).to_dict(), "S2": assign_credits(G, S2).to_dict()}
    res.gprime = {"size": cr.gprime_size, "contracted": cr.contracted, "pairs": cr.pairs,
                  "optimal": cr.optimal, "seeded": seeded}
    res.opt = opt
    if opt is not None:
        res.ratio_vs_oracle = Fraction(len(S), opt)
    return res
