"""Rewriting cycle-restricted 2-edge-covers into strongly canonical ones of
the same size, and greedy pruning to a minimal strongly canonical cover.

Every rewrite swaps one cover edge for one non-cover edge.  The pair
``(component count, bridge count)`` never increases, and the triple that adds
the block count strictly decreases.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from .errors import InvariantError, NotA2EdgeCover
from .graph import BlockDecomposition, Multigraph, block_cut_decomposition, degrees
from .structure import is_cycle_restricted

SMALL_EDGES = 6


def potential(dec: BlockDecomposition) -> tuple[int, int]:
    return dec.comp_count, dec.bridge_count


def block_count(dec: BlockDecomposition) -> int:
    return sum(len(c.blocks) for c in dec.components)


def extended_potential(dec: BlockDecomposition) -> tuple[int, int, int]:
    """``(comp, br, blocks)``.  A leaf-block rewrite inside a bridgeless
    complex component keeps ``(comp, br)`` fixed but merges two blocks, so
    termination is measured on this triple."""
    return dec.comp_count, dec.bridge_count, block_count(dec)


@dataclass
class CanonicalState:
    host: Multigraph
    cover: frozenset
    decomposition: BlockDecomposition

    @classmethod
    def of(cls, G: Multigraph, S: Iterable[int]) -> "CanonicalState":
        S = frozenset(S)
        return cls(G, S, block_cut_decomposition(G, S))

    @property
    def potential(self) -> tuple[int, int]:
        return potential(self.decomposition)

    @property
    def extended_potential(self) -> tuple[int, int, int]:
        return extended_potential(self.decomposition)


@dataclass(frozen=True)
class Rewrite:
    rule: str
    key: int
    removed: int
    added: int

    def apply(self, S: frozenset) -> frozenset:
        return (S - {self.removed}) | {self.added}


def hamiltonian_cycle(G: Multigraph, S: Iterable[int], vertices: Iterable[int],
                      start: int | None = None) -> tuple | None:
    """Lexicographically first Hamiltonian cycle of ``(vertices, S)`` as a
    vertex tuple beginning at ``start`` (default the smallest vertex)."""
    vs = sorted(vertices)
    if start is None:
        start = vs[0]
    adj = {v: set() for v in vs}
    for e in S:
        a, b = G.edges[e]
        if a in adj and b in adj:
            adj[a].add(b)
            adj[b].add(a)
    rest = [v for v in vs if v != start]
    for perm in permutations(rest):
        seq = (start,) + perm
        if all(seq[i + 1] in adj[seq[i]] for i in range(len(seq) - 1)) and start in adj[seq[-1]]:
            return seq
    return None


def _edge_in(G: Multigraph, S, a: int, b: int) -> int:
    for e in G.edges_between(a, b):
        if e in S:
            return e
    raise InvariantError(f"no cover edge between {a} and {b}")


def _escape(G: Multigraph, ws: Iterable[int], inside: frozenset):
    """Smallest ``(w, z, edge)`` over host edges ``wz`` with ``w`` in ``ws`` and
    ``z`` outside ``inside``."""
    best = None
    for w in ws:
        for e in G.incidence[w]:
            z = G.other(e, w)
            if z not in inside:
                cand = (w, z, e)
                if best is None or cand < best:
                    best = cand
    return best


def rewrite_small_noncycle(G: Multigraph, S: frozenset, comp) -> Rewrite | None:
    """Chorded cycle, bowtie or K_{2,3} rule for a small non-cycle component."""
    nv, ne = len(comp.vertices), len(comp.edges)
    if ne > SMALL_EDGES or comp.is_cycle:
        return None
    if (nv, ne) not in ((4, 5), (4, 6), (5, 6)):
        raise InvariantError(f"small non-cycle component with {nv} vertices and {ne} edges")
    inside = comp.vertices
    ham = hamiltonian_cycle(G, comp.edges, inside)
    if ham is not None:
        k = len(ham)
        on = {_edge_in(G, comp.edges, ham[i], ham[(i + 1) % k]) for i in range(k)}
        chord = min(comp.edges - on)
        f = min((e for v in inside for e in G.incidence[v] if G.other(e, v) not in inside), default=None)
        if f is None:
            raise InvariantError("component has no escaping host edge")
        return Rewrite("chord", comp.key, chord, f)
    deg = degrees(G, comp.edges)
    hubs = sorted(v for v in inside if deg[v] == 4)
    if hubs:
        u = hubs[0]
        esc = _escape(G, sorted(v for v in inside if v != u), inside)
        if esc is None:
            raise InvariantError(f"bowtie apex {u} separates the host")
        w, _, f = esc
        return Rewrite("bowtie", comp.key, _edge_in(G, comp.edges, w, u), f)
    big = sorted(v for v in inside if deg[v] == 3)
    if len(big) != 2:
        raise InvariantError("small component is neither chorded cycle, bowtie nor K_{2,3}")
    u1 = big[0]
    esc = _escape(G, sorted(v for v in inside if deg[v] == 2), inside)
    if esc is None:
        raise InvariantError(f"K_{{2,3}} side {tuple(big)} is a non-isolating cut")
    w, _, f = esc
    return Rewrite("k23", comp.key, _edge_in(G, comp.edges, w, u1), f)


def rewrite_small_leaf_block(G: Multigraph, S: frozenset, comp, block) -> Rewrite | None:
    """Swap a cut-vertex edge of a leaf-block with at most four vertices for an
    edge escaping the block."""
    k = len(block.vertices)
    if k > 4:
        return None
    (v1,) = block.vertices & comp.cut_vertices
    ham = hamiltonian_cycle(G, block.edges, block.vertices, start=v1)
    if ham is None or k < 3:
        raise InvariantError(f"leaf-block {sorted(block.vertices)} is not a short cycle")
    ws = sorted((ham[1], ham[-1]))
    rule = "leaf3" if k == 3 else "leaf4"
    # any escaping edge is valid; take the one with the smallest resulting
    # potential so that (comp, br) drops whenever some choice makes it drop
    best = None
    for w in ws:
        for f in G.incidence[w]:
            z = G.other(f, w)
            if z in block.vertices or f in S:
                continue
            r = Rewrite(rule, comp.key, _edge_in(G, block.edges, w, v1), f)
            key = (extended_potential(block_cut_decomposition(G, r.apply(S))), w, z, f)
            if best is None or key < best[0]:
                best = (key, r)
    if best is None:
        raise InvariantError(f"leaf-block {sorted(block.vertices)} cannot escape")
    return best[1]


def next_rewrite(G: Multigraph, S: frozenset, dec: BlockDecomposition) -> Rewrite | None:
    for comp in dec.components:
        r = rewrite_small_noncycle(G, S, comp)
        if r is not None:
            return r
        if comp.is_complex:
            for b in comp.leaf_blocks:
                r = rewrite_small_leaf_block(G, S, comp, b)
                if r is not None:
                    return r
    return None


def _shape_ok(dec: BlockDecomposition, small_edges: int) -> bool:
    for comp in dec.components:
        if len(comp.edges) <= small_edges and not comp.is_cycle:
            return False
        if comp.is_complex and any(len(b.vertices) < 5 for b in comp.leaf_blocks):
            return False
    return True


def is_strongly_canonical(G: Multigraph, S: Iterable[int]) -> bool:
    """Cycle-restricted, every component with at most six edges is a cycle,
    and every leaf-block of a complex component has at least five vertices."""
    S = frozenset(S)
    if min(degrees(G, S), default=2) < 2:
        return False
    try:
        if not is_cycle_restricted(G, S):
            return False
    except NotA2EdgeCover:
        return False
    return _shape_ok(block_cut_decomposition(G, S), SMALL_EDGES)


def is_canonical(G: Multigraph, S: Iterable[int]) -> bool:
    """The weaker form: components with at most five edges are cycles and
    leaf-blocks of complex components have at least five vertices."""
    S = frozenset(S)
    if min(degrees(G, S), default=2) < 2:
        return False
    return _shape_ok(block_cut_decomposition(G, S), 5)


def to_strongly_canonical(G: Multigraph, F: Iterable[int], trace: list | None = None) -> frozenset:
    """Apply rewrites until none applies.  ``trace`` collects one dict per
    rewrite with the potentials before and after."""
    state = CanonicalState.of(G, F)
    if not is_cycle_restricted(G, state.cover):
        raise InvariantError("input is not cycle-restricted")
    size = len(state.cover)
    while True:
        r = next_rewrite(G, state.cover, state.decomposition)
        if r is None:
            break
        before = state.extended_potential
        new = CanonicalState.of(G, r.apply(state.cover))
        after = new.extended_potential
        if not after < before or after[:2] > before[:2]:
            raise InvariantError(f"rewrite {r.rule} did not decrease the potential {before} -> {after}")
        if len(new.cover) != size:
            raise InvariantError("rewrite changed the cover size")
        if not is_cycle_restricted(G, new.cover):
            raise InvariantError(f"rewrite {r.rule} broke cycle-restrictedness")
        if trace is not None:
            trace.append({"rule": r.rule, "component": r.key, "removed": r.removed, "added": r.added,
                          "potential_before": list(before[:2]), "potential_after": list(after[:2]),
                          "blocks_before": before[2], "blocks_after": after[2]})
        state = new
    if not is_strongly_canonical(G, state.cover):
        raise InvariantError("no rewrite applies but the cover is not strongly canonical")
    return state.cover


def prune_to_minimal(G: Multigraph, S: Iterable[int]) -> frozenset:
    """Drop edges in ascending id order while the cover stays strongly
    canonical, repeating until no single removal is possible."""
    S = frozenset(S)
    if not is_strongly_canonical(G, S):
        raise InvariantError("prune_to_minimal needs a strongly canonical cover")
    changed = True
    while changed:
        changed = False
        deg = degrees(G, S)
        for e in sorted(S):
            a, b = G.edges[e]
            if deg[a] <= 2 or deg[b] <= 2:
                continue
            T = S - {e}
            if is_strongly_canonical(G, T):
                S = T
                deg[a] -= 1
                deg[b] -= 1
                changed = True
    return S


def check_minimal_blocks(G: Multigraph, S: Iterable[int]) -> bool:
    """Every block of every large complex component has at least four edges."""
    dec = block_cut_decomposition(G, S)
    for comp in dec.components:
        if len(comp.edges) > SMALL_EDGES and comp.is_complex:
            if any(len(b.edges) < 4 for b in comp.blocks):
                return False
    return True
