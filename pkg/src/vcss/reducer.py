"""Removal of small components from a strongly canonical 2-edge-cover.

Each step merges one 4-, 5- or 6-cycle component into the rest of the cover
without increasing ``cost``.  Three cases are handled by priority: a 6-cycle
component (case 3), a 4/5-cycle adjacent to two or more other components
(case 2), and otherwise a 4/5-cycle with a single neighbouring component
(case 1).  Every step recomputes the exact cost, checks it against the bound
its construction guarantees, and checks that the result is strongly
canonical with fewer components.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable

from .canonical import is_strongly_canonical
from .credits import SMALL_RATE, BRIDGE_CREDIT, cost
from .errors import CaseMismatch, InvariantError
from .graph import Multigraph, block_cut_decomposition, find_matching_across

SLACK_CASE2 = Fraction(1, 36)
SLACK_CASE3 = Fraction(1, 6)


@dataclass(frozen=True)
class ShortcutPair:
    """``path`` is a ``u``-``v`` Hamiltonian path of ``G[V(C)]`` whose end edges
    lie on ``C``; ``ux`` and ``vy`` are the matching edges."""

    cycle: frozenset
    u: int
    v: int
    path: tuple
    x: int
    y: int

    @property
    def matching(self) -> tuple:
        return (self.u, self.x), (self.v, self.y)

    def path_edges(self, G: Multigraph) -> frozenset:
        return frozenset(G.edge_id(self.path[i], self.path[i + 1]) for i in range(len(self.path) - 1))

    def matching_edges(self, G: Multigraph) -> frozenset:
        return frozenset((G.edge_id(self.u, self.x), G.edge_id(self.v, self.y)))

    def to_dict(self) -> dict:
        return {"pair": [self.u, self.v], "path": list(self.path), "matching": [[self.u, self.x], [self.v, self.y]]}


def _is_cycle_component(comp, sizes=(4, 5, 6)) -> bool:
    return comp.is_cycle and len(comp.edges) in sizes


def shortcut_candidates(G: Multigraph, comp):
    """All shortcut pairs of a small cycle component in ``(u, v, path, x, y)``
    order."""
    verts = comp.vertices
    on_cycle = set()
    for e in comp.edges:
        a, b = G.edges[e]
        on_cycle.add((a, b))
        on_cycle.add((b, a))
    nb = G.neighbors
    out = []
    for u in sorted(verts):
        for v in sorted(verts):
            if u == v:
                continue
            middle = sorted(verts - {u, v})
            paths = []
            for perm in permutations(middle):
                seq = (u,) + perm + (v,)
                if (seq[0], seq[1]) not in on_cycle or (seq[-2], seq[-1]) not in on_cycle:
                    continue
                if all(seq[i + 1] in nb[seq[i]] for i in range(len(seq) - 1)):
                    paths.append(seq)
            if not paths:
                continue
            xs = sorted(nb[u] - verts)
            ys = sorted(nb[v] - verts)
            for p in paths:
                for x in xs:
                    for y in ys:
                        if x != y:
                            out.append(ShortcutPair(verts, u, v, p, x, y))
    return out


def find_shortcut_pair(G: Multigraph, S, comp, anchor_x: int) -> ShortcutPair:
    """First shortcut pair of a 4/5-cycle whose matching has an edge ``ux``
    with ``x = anchor_x``."""
    if not _is_cycle_component(comp, (4, 5)):
        raise CaseMismatch("shortcut pairs via enumeration need a 4- or 5-cycle component")
    for sp in shortcut_candidates(G, comp):
        if sp.x == anchor_x:
            return sp
    raise InvariantError(f"no shortcut pair anchored at {anchor_x}")


def find_shortcut_pair_distinct(G: Multigraph, S, comp, comp_of: dict) -> ShortcutPair:
    """First shortcut pair of a 4/5-cycle whose matching lands in two distinct
    other components."""
    if not _is_cycle_component(comp, (4, 5)):
        raise CaseMismatch("needs a 4- or 5-cycle component")
    own = comp_of[min(comp.vertices)]
    others = {comp_of[x] for v in comp.vertices for x in G.neighbors[v] if comp_of[x] != own}
    if len(others) < 2:
        raise CaseMismatch("component is adjacent to fewer than two components")
    for sp in shortcut_candidates(G, comp):
        if comp_of[sp.x] != comp_of[sp.y]:
            return sp
    raise InvariantError("no shortcut pair reaching two distinct components")


def _cycle_order(G: Multigraph, comp) -> tuple:
    start = min(comp.vertices)
    inc = {v: [] for v in comp.vertices}
    for e in comp.edges:
        a, b = G.edges[e]
        inc[a].append(b)
        inc[b].append(a)
    seq = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in inc[cur] if w != prev)
        if nxt == start:
            break
        seq.append(nxt)
        prev, cur = cur, nxt
    return tuple(seq)


def _path_around(order: tuple, a: int, b: int) -> tuple:
    """The Hamiltonian path of the cycle ``order`` obtained by deleting the
    cycle edge ``ab``, running from ``a`` to ``b``."""
    k = len(order)
    i, j = order.index(a), order.index(b)
    step = -1 if (i + 1) % k == j else 1
    seq = [a]
    t = i
    while True:
        t = (t + step) % k
        seq.append(order[t])
        if order[t] == b:
            break
    return tuple(seq)


def find_shortcut_pair_6cycle(G: Multigraph, S, comp) -> ShortcutPair:
    """Constructive shortcut pair of a 6-cycle component that is not a 6-cycle
    with an isolated triple."""
    if not _is_cycle_component(comp, (6,)):
        raise CaseMismatch("needs a 6-cycle component")
    verts = comp.vertices
    M = find_matching_across(G, verts, set(range(G.n)) - verts, 3)
    if M is None:
        raise InvariantError("no 3-matching leaves the 6-cycle")
    mate = {}
    for e in M:
        a, b = G.edges[e]
        if a in verts:
            mate[a] = b
        else:
            mate[b] = a
    order = _cycle_order(G, comp)
    k = len(order)

    def adjacent(p, q):
        i, j = order.index(p), order.index(q)
        return (i - j) % k in (1, k - 1)

    matched = sorted(mate)
    for i, p in enumerate(matched):
        for q in matched[i + 1:]:
            if adjacent(p, q):
                return ShortcutPair(verts, p, q, _path_around(order, p, q), mate[p], mate[q])
    others = sorted(verts - set(mate))
    for a in others:
        ys = sorted(G.neighbors[a] - set(mate))
        if not ys:
            continue
        y = ys[0]
        ia = order.index(a)
        nbrs = sorted((order[(ia - 1) % k], order[(ia + 1) % k]))
        if y not in verts:
            ui = next(u for u in nbrs if mate[u] != y)
            return ShortcutPair(verts, ui, a, _path_around(order, ui, a), mate[ui], y)
        # y is the other unmatched vertex adjacent to q; zig-zag path p..q
        q = next(u for u in nbrs if adjacent(u, y))
        p = next(u for u in nbrs if u != q)
        z = next(w for w in others if w not in (a, y))
        u3 = next(u for u in matched if u not in nbrs)
        path = (p, z, u3, y, a, q)
        if not all(path[i + 1] in G.neighbors[path[i]] for i in range(5)):
            raise InvariantError("zig-zag shortcut path is not a path of the host")
        return ShortcutPair(verts, p, q, path, mate[p], mate[q])
    raise InvariantError("6-cycle has an isolated triple")


def shortest_path_in(G: Multigraph, S, members: frozenset, x: int, y: int) -> tuple:
    """Lexicographically first shortest ``x``-``y`` vertex sequence in ``(V, S)``
    restricted to ``members``."""
    adj = {v: [] for v in members}
    for e in S:
        a, b = G.edges[e]
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)
    dist = {y: 0}
    dq = deque([y])
    while dq:
        v = dq.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                dq.append(w)
    if x not in dist:
        raise InvariantError(f"{x} and {y} are not connected")
    seq = [x]
    while seq[-1] != y:
        v = seq[-1]
        seq.append(min(w for w in adj[v] if dist.get(w) == dist[v] - 1))
    return tuple(seq)


@dataclass
class MergingPath:
    """Vertex sequence ``u_L, u_1..u_k, u_R`` with the witnesses for the
    endpoint conditions."""

    seq: list
    left: ShortcutPair | None = None
    right: ShortcutPair | None = None
    rounds: int = 0

    @property
    def length(self) -> int:
        return len(self.seq) - 1

    def edges(self, G: Multigraph) -> frozenset:
        return frozenset(G.edge_id(self.seq[i], self.seq[i + 1]) for i in range(len(self.seq) - 1))

    def to_dict(self) -> dict:
        return {"sequence": list(self.seq), "length": self.length,
                "left": self.left.to_dict() if self.left else None,
                "right": self.right.to_dict() if self.right else None}


def _end_condition(G, dec, comp_of, seq, side: str):
    """``(holds, witness, candidates)`` for the left or right endpoint."""
    if side == "left":
        end, nxt, inner, far = seq[0], seq[1], seq[2:-1], seq[-1]
    else:
        end, nxt, inner, far = seq[-1], seq[-2], seq[1:-2], seq[0]
    comp = dec.components[comp_of[end]]
    if not _is_cycle_component(comp, (4, 5)):
        return True, None, []
    target = set(inner) | dec.components[comp_of[far]].vertices
    cands = [sp for sp in shortcut_candidates(G, comp) if sp.x == nxt]
    for sp in cands:
        if sp.u == end and sp.y in target:
            return True, sp, cands
    return False, None, (cands, target)


def build_merging_path(G: Multigraph, S, seed: ShortcutPair, dec=None) -> MergingPath:
    """Extend or re-anchor the seed path until both endpoint conditions
    hold."""
    if dec is None:
        dec = block_cut_decomposition(G, S)
    comp_of = dec.component_of()
    if comp_of[seed.x] == comp_of[seed.y]:
        raise CaseMismatch("seed matching lands in a single component")
    mp = MergingPath([seed.x] + list(seed.path) + [seed.y])
    for _ in range(4 * G.n + 4):
        mp.rounds += 1
        okL, witL, infoL = _end_condition(G, dec, comp_of, mp.seq, "left")
        if not okL:
            cands, target = infoL
            if not cands:
                raise InvariantError("left endpoint has no anchored shortcut pair")
            re = [sp for sp in cands if sp.y in target]
            if re:
                mp.seq[0] = re[0].u
            else:
                sp = cands[0]
                mp.seq = [sp.y] + list(reversed(sp.path)) + mp.seq[1:]
            continue
        okR, witR, infoR = _end_condition(G, dec, comp_of, mp.seq, "right")
        if not okR:
            cands, target = infoR
            if not cands:
                raise InvariantError("right endpoint has no anchored shortcut pair")
            re = [sp for sp in cands if sp.y in target]
            if re:
                mp.seq[-1] = re[0].u
            else:
                sp = cands[0]
                mp.seq = mp.seq[:-1] + list(sp.path) + [sp.y]
            continue
        mp.left, mp.right = witL, witR
        _check_merging_path(G, dec, comp_of, mp)
        return mp
    raise InvariantError("merging path construction did not terminate")


def _check_merging_path(G, dec, comp_of, mp: MergingPath):
    seq = mp.seq
    inner = seq[1:-1]
    if len(set(seq)) != len(seq):
        raise InvariantError("merging path repeats a vertex")
    cl, cr = comp_of[seq[0]], comp_of[seq[-1]]
    if cl == cr:
        raise InvariantError("merging path endpoints share a component")
    used = {comp_of[v] for v in inner}
    if cl in used or cr in used:
        raise InvariantError("merging path endpoint component is internal")
    for c in used:
        comp = dec.components[c]
        if len(comp.edges) > 6 or not comp.vertices <= set(inner):
            raise InvariantError("internal vertices are not whole small components")
    e2 = G.edge_id(seq[1], seq[2])
    e3 = G.edge_id(seq[-3], seq[-2])
    if e2 not in dec.components[comp_of[seq[1]]].edges or e3 not in dec.components[comp_of[seq[-2]]].edges:
        raise InvariantError("second or second-to-last path edge is not a cover edge")


@dataclass
class ReductionStep:
    case: str
    component: int
    cover: frozenset
    delta: Fraction
    bound: Fraction
    size_change: int
    comps_before: int
    comps_after: int
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"case": self.case, "component": self.component,
                "delta": [self.delta.numerator, self.delta.denominator],
                "bound": [self.bound.numerator, self.bound.denominator],
                "size_change": self.size_change,
                "components_before": self.comps_before, "components_after": self.comps_after,
                **self.detail}


def _cr_small(comp) -> Fraction:
    return SMALL_RATE * len(comp.edges)


def _delta_cr(comp) -> Fraction:
    """Credit change of an endpoint component once it joins a merged large
    component."""
    if len(comp.edges) > 6:
        return Fraction(-1)
    return 1 - _cr_small(comp)


def _finish(G, S, S_new, case, comp, bound, detail) -> ReductionStep:
    S_new = frozenset(S_new)
    before = block_cut_decomposition(G, S).comp_count
    after = block_cut_decomposition(G, S_new).comp_count
    delta = cost(G, S_new) - cost(G, S)
    if after >= before:
        raise InvariantError(f"{case}: component count did not drop ({before} -> {after})")
    if delta > 0:
        raise InvariantError(f"{case}: cost increased by {delta}")
    if delta > bound:
        raise InvariantError(f"{case}: cost change {delta} exceeds its bound {bound}")
    if not is_strongly_canonical(G, S_new):
        raise InvariantError(f"{case}: result is not strongly canonical")
    return ReductionStep(case, min(comp.vertices), S_new, delta, bound, len(S_new) - len(S),
                         before, after, detail)


def _classify_path(G, dec, comp_of, seq):
    comp = dec.components[comp_of[seq[0]]]
    edges = [G.edge_id(seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
    bridges = sum(1 for e in edges if e in comp.bridges)
    return edges, bridges, bridges < len(edges)


def reduce_case1(G: Multigraph, S, comp=None) -> ReductionStep:
    """A 4/5-cycle whose only neighbouring component is large."""
    S = frozenset(S)
    dec = block_cut_decomposition(G, S)
    comp_of = dec.component_of()
    if comp is None:
        comp = _pick(G, dec, comp_of, "case1")
    own = comp_of[min(comp.vertices)]
    nbc = {comp_of[x] for v in comp.vertices for x in G.neighbors[v] if comp_of[x] != own}
    if not _is_cycle_component(comp, (4, 5)) or len(nbc) != 1:
        raise CaseMismatch("case 1 needs a 4/5-cycle adjacent to exactly one component")
    other = dec.components[nbc.pop()]
    if len(other.edges) <= 6:
        raise CaseMismatch("case 1 needs the neighbouring component to be large")
    cr_c = _cr_small(comp)
    EC = comp.edges
    for sp in shortcut_candidates(G, comp):
        P = shortest_path_in(G, S, other.vertices, sp.x, sp.y)
        edges, nbr, has_block = _classify_path(G, dec, comp_of, P)
        add = sp.path_edges(G) | sp.matching_edges(G)
        detail = {"shortcut": sp.to_dict(), "host_path": list(P)}
        if has_block or nbr >= 3:
            return _finish(G, S, (S - EC) | add, "case1.1", comp, 2 - Fraction(3, 4) - cr_c, detail)
        if nbr == 2 and len(EC) == 5:
            return _finish(G, S, (S - EC) | add, "case1.2", comp, 2 - Fraction(1, 2) - cr_c, detail)
        if nbr == 1:
            return _finish(G, S, (S - EC - {edges[0]}) | add, "case1.3", comp,
                           (BRIDGE_CREDIT - SMALL_RATE) * len(EC), detail)
    if len(EC) != 4:
        raise InvariantError("5-cycle with only two-bridge shortcut paths")
    M = find_matching_across(G, comp.vertices, other.vertices, 3)
    if M is None:
        raise InvariantError("no 3-matching between the 4-cycle and its neighbour")
    mate = {}
    for e in M:
        a, b = G.edges[e]
        if a in comp.vertices:
            mate[a] = b
        else:
            mate[b] = a
    order = _cycle_order(G, comp)
    (u4,) = comp.vertices - set(mate)
    i4 = order.index(u4)
    u2 = order[(i4 + 2) % 4]
    u1, u3 = sorted((order[(i4 + 1) % 4], order[(i4 - 1) % 4]))
    x1, x2, x3 = mate[u1], mate[u2], mate[u3]
    P12 = shortest_path_in(G, S, other.vertices, x1, x2)
    P23 = shortest_path_in(G, S, other.vertices, x2, x3)
    if len(P12) == 3 and len(P23) == 3 and P12[1] == P23[1]:
        y = P12[1]
        S_new = (S - {G.edge_id(u1, u2), G.edge_id(x2, y)}) | {G.edge_id(u1, x1), G.edge_id(u2, x2)}
        return _finish(G, S, S_new, "case1.4a", comp, 1 - cr_c,
                       {"matching": [[u1, x1], [u2, x2], [u3, x3]], "shared": [x2, y]})
    raise InvariantError("4-cycle with edge-disjoint two-bridge paths admits no shortcut pair")


def _splice(G, S, dec, comp_of, sp: ShortcutPair, a: int, b: int, cL):
    """Replace the cover edge ``ab`` of a small component and the cycle ``cL``
    by one cycle through ``sp``'s shortcut path."""
    ci = dec.components[comp_of[a]]
    e_ab = G.edge_id(a, b)
    if e_ab not in ci.edges:
        raise InvariantError("splice edge is not a cover edge")
    cyc = (ci.edges - {e_ab}) | sp.path_edges(G) | {G.edge_id(sp.u, a), G.edge_id(sp.v, b)}
    deg = {}
    for e in cyc:
        for v in G.edges[e]:
            deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()) or block_cut_decomposition(G, cyc).comp_count != 1:
        raise InvariantError("spliced edges do not form a single cycle")
    return (S - ci.edges - cL.edges) | cyc, ci


def _merge(G, S, comp, seed: ShortcutPair, case: str, slack: Fraction) -> ReductionStep:
    dec = block_cut_decomposition(G, S)
    comp_of = dec.component_of()
    mp = build_merging_path(G, S, seed, dec)
    seq = mp.seq
    cL = dec.components[comp_of[seq[0]]]
    cR = dec.components[comp_of[seq[-1]]]
    detail = {"seed": seed.to_dict(), "merging_path": mp.to_dict()}
    if mp.left is not None and mp.left.y == seq[2]:
        S2, ci = _splice(G, S, dec, comp_of, mp.left, seq[1], seq[2], cL)
        detail["repair"] = "splice-left"
        return _finish(G, S, S2, case, comp, 2 - _cr_small(ci) - _cr_small(cL), detail)
    if mp.right is not None and mp.right.y == seq[-3]:
        S2, cj = _splice(G, S, dec, comp_of, mp.right, seq[-2], seq[-3], cR)
        detail["repair"] = "splice-right"
        return _finish(G, S, S2, case, comp, 2 - _cr_small(cj) - _cr_small(cR), detail)
    inner = {comp_of[v] for v in seq[1:-1]}
    removed = frozenset().union(*(dec.components[c].edges for c in inner))
    S1 = (S - removed) | mp.edges(G)
    bound = 2 - slack + _delta_cr(cL) + _delta_cr(cR)
    repairs = []
    for side, cx, wit in (("left", cL, mp.left), ("right", cR, mp.right)):
        if wit is None:
            continue
        S1 = (S1 - cx.edges) | wit.path_edges(G) | {G.edge_id(wit.v, wit.y)}
        bound -= Fraction(3, 4)
        repairs.append(side)
    detail["repair"] = "+".join(repairs) if repairs else "none"
    return _finish(G, S, S1, case, comp, bound, detail)


def reduce_case2(G: Multigraph, S, comp=None) -> ReductionStep:
    """A 4/5-cycle adjacent to at least two other components."""
    S = frozenset(S)
    dec = block_cut_decomposition(G, S)
    comp_of = dec.component_of()
    if comp is None:
        comp = _pick(G, dec, comp_of, "case2")
    if any(_is_cycle_component(c, (6,)) for c in dec.components):
        raise CaseMismatch("case 2 needs no 6-cycle component")
    seed = find_shortcut_pair_distinct(G, S, comp, comp_of)
    return _merge(G, S, comp, seed, "case2", SLACK_CASE2)


def reduce_case3(G: Multigraph, S, comp=None) -> ReductionStep:
    """A 6-cycle component."""
    S = frozenset(S)
    dec = block_cut_decomposition(G, S)
    comp_of = dec.component_of()
    if comp is None:
        comp = _pick(G, dec, comp_of, "case3")
    seed = find_shortcut_pair_6cycle(G, S, comp)
    if comp_of[seed.x] != comp_of[seed.y]:
        return _merge(G, S, comp, seed, "case3", SLACK_CASE3)
    other = dec.components[comp_of[seed.x]]
    add = seed.path_edges(G) | seed.matching_edges(G)
    S_new = (S - comp.edges) | add
    cr_c = _cr_small(comp)
    detail = {"seed": seed.to_dict()}
    if len(other.edges) > 6:
        return _finish(G, S, S_new, "case3.same-large", comp, 1 - cr_c - BRIDGE_CREDIT + 1, detail)
    return _finish(G, S, S_new, "case3.same-small", comp, 1 - cr_c - _cr_small(other) + 2, detail)


def _adjacent_count(G, comp, comp_of) -> int:
    own = comp_of[min(comp.vertices)]
    return len({comp_of[x] for v in comp.vertices for x in G.neighbors[v] if comp_of[x] != own})


def _pick(G, dec, comp_of, case):
    six = [c for c in dec.components if _is_cycle_component(c, (6,))]
    if case == "case3":
        if not six:
            raise CaseMismatch("no 6-cycle component")
        return six[0]
    if six:
        raise CaseMismatch("a 6-cycle component takes priority")
    small = [c for c in dec.components if _is_cycle_component(c, (4, 5))]
    two = [c for c in small if _adjacent_count(G, c, comp_of) >= 2]
    if case == "case2":
        if not two:
            raise CaseMismatch("no 4/5-cycle adjacent to two components")
        return two[0]
    if two or not small:
        raise CaseMismatch("case 1 conditions do not hold")
    return small[0]


def next_case(G: Multigraph, S) -> str | None:
    dec = block_cut_decomposition(G, S)
    comp_of = dec.component_of()
    small = [c for c in dec.components if len(c.edges) <= 6]
    if not small:
        return None
    for c in small:
        if not _is_cycle_component(c):
            raise InvariantError("small component that is not a 4-, 5- or 6-cycle")
    if any(_is_cycle_component(c, (6,)) for c in small):
        return "case3"
    if any(_adjacent_count(G, c, comp_of) >= 2 for c in small):
        return "case2"
    return "case1"


def reduce_step(G: Multigraph, S) -> ReductionStep | None:
    case = next_case(G, S)
    if case is None:
        return None
    return {"case1": reduce_case1, "case2": reduce_case2, "case3": reduce_case3}[case](G, S)


def remove_all_small(G: Multigraph, S: Iterable[int], trace: list | None = None) -> frozenset:
    """Apply reduction steps until no component has six or fewer edges."""
    S = frozenset(S)
    if not is_strongly_canonical(G, S):
        raise InvariantError("input is not strongly canonical")
    limit = block_cut_decomposition(G, S).comp_count
    for _ in range(limit + 1):
        step = reduce_step(G, S)
        if step is None:
            return S
        if trace is not None:
            trace.append(step)
        S = step.cover
    raise InvariantError("reduction did not terminate")
