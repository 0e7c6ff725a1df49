"""Undirected multigraphs with stable edge ids, edge-set queries, and
block/bridge decomposition.

Edge sets are plain ``frozenset`` (or ``set``) objects holding edge ids of a
host :class:`Multigraph`; every query takes the host explicitly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import GraphFormatError

EdgeSet = frozenset


class Multigraph:
    """Undirected graph on vertices ``0..n-1``; edge ``i`` is ``edges[i]``.

    Parallel edges are distinct ids with identical endpoints.  Self-loops are
    rejected; callers that contract vertices must drop them first.
    Instances are treated as immutable; derived data is cached lazily.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = []
        for i, (a, b) in enumerate(edges):
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge {i} endpoint out of range: ({a}, {b})")
            if a == b:
                raise ValueError(f"edge {i} is a self-loop at {a}")
            es.append((a, b))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(es)

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def all_edges(self) -> frozenset:
        return frozenset(range(self.m))

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.n)]
        for i, (a, b) in enumerate(self.edges):
            inc[a].append(i)
            inc[b].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        nb = [set() for _ in range(self.n)]
        for a, b in self.edges:
            nb[a].add(b)
            nb[b].add(a)
        return tuple(frozenset(x) for x in nb)

    @cached_property
    def _pair_index(self) -> dict:
        idx: dict[tuple[int, int], list[int]] = {}
        for i, (a, b) in enumerate(self.edges):
            idx.setdefault((a, b) if a < b else (b, a), []).append(i)
        return idx

    @cached_property
    def is_simple(self) -> bool:
        return all(len(v) == 1 for v in self._pair_index.values())

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    def edges_between(self, u: int, v: int) -> tuple[int, ...]:
        key = (u, v) if u < v else (v, u)
        return tuple(self._pair_index.get(key, ()))

    def edge_id(self, u: int, v: int) -> int:
        """The unique edge ``uv``; raises ``KeyError`` if absent or parallel."""
        ids = self.edges_between(u, v)
        if len(ids) != 1:
            raise KeyError(f"no unique edge between {u} and {v}")
        return ids[0]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.edges_between(u, v))

    def has_parallel(self, e: int) -> bool:
        a, b = self.edges[e]
        return len(self.edges_between(a, b)) > 1

    def induced_edges(self, W: Iterable[int]) -> frozenset:
        W = set(W)
        return frozenset(i for i, (a, b) in enumerate(self.edges) if a in W and b in W)


def degrees(G: Multigraph, S: Iterable[int]) -> list[int]:
    deg = [0] * G.n
    for e in S:
        a, b = G.edges[e]
        deg[a] += 1
        deg[b] += 1
    return deg


def is_2_edge_cover(G: Multigraph, S: Iterable[int]) -> bool:
    return min(degrees(G, S), default=2) >= 2


def is_2_matching(G: Multigraph, S: Iterable[int]) -> bool:
    return max(degrees(G, S), default=0) <= 2


def boundary(G: Multigraph, S: Iterable[int], W: Iterable[int]) -> frozenset:
    """Edges of ``S`` with exactly one endpoint in ``W``."""
    W = set(W)
    out = []
    for e in S:
        a, b = G.edges[e]
        if (a in W) != (b in W):
            out.append(e)
    return frozenset(out)


@dataclass(frozen=True)
class Component:
    vertices: frozenset
    edges: frozenset

    @property
    def key(self) -> int:
        return min(self.vertices)


def components(G: Multigraph, S: Iterable[int]) -> tuple[list[Component], list[int]]:
    """Connected components of ``(V, S)`` and the vertices untouched by ``S``.

    Components are sorted by smallest vertex.
    """
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    S = list(S)
    touched = [False] * G.n
    for e in S:
        a, b = G.edges[e]
        touched[a] = touched[b] = True
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    verts: dict[int, list[int]] = {}
    for v in range(G.n):
        if touched[v]:
            verts.setdefault(find(v), []).append(v)
    edges: dict[int, list[int]] = {r: [] for r in verts}
    for e in S:
        edges[find(G.edges[e][0])].append(e)
    comps = [Component(frozenset(verts[r]), frozenset(edges[r])) for r in verts]
    comps.sort(key=lambda c: c.key)
    isolated = [v for v in range(G.n) if not touched[v]]
    return comps, isolated


def is_connected(G: Multigraph, S: Iterable[int] | None = None, removed: Iterable[int] = ()) -> bool:
    """Whether ``(V - removed, S)`` is connected (``S`` defaults to all edges)."""
    removed = set(removed)
    alive = [v for v in range(G.n) if v not in removed]
    if not alive:
        return True
    if S is None:
        adj = G.neighbors
    else:
        nb = [set() for _ in range(G.n)]
        for e in S:
            a, b = G.edges[e]
            nb[a].add(b)
            nb[b].add(a)
        adj = nb
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(alive)


@dataclass(frozen=True)
class Block:
    vertices: frozenset
    edges: frozenset

    @property
    def key(self) -> int:
        return min(self.edges)


@dataclass(frozen=True)
class ComponentBlocks:
    vertices: frozenset
    edges: frozenset
    blocks: tuple
    bridges: frozenset
    cut_vertices: frozenset
    leaf_blocks: tuple

    @property
    def key(self) -> int:
        return min(self.vertices)

    @property
    def is_2vc(self) -> bool:
        return len(self.vertices) > 3 and not self.bridges and len(self.blocks) == 1

    @property
    def is_complex(self) -> bool:
        return not self.is_2vc

    @property
    def is_cycle(self) -> bool:
        return len(self.edges) == len(self.vertices) >= 3 and len(self.blocks) == 1


@dataclass(frozen=True)
class BlockDecomposition:
    components: tuple
    isolated: tuple = field(default=())

    @property
    def comp_count(self) -> int:
        return len(self.components)

    @property
    def bridge_count(self) -> int:
        return sum(len(c.bridges) for c in self.components)

    def component_of(self) -> dict:
        """Map vertex -> index into :attr:`components`."""
        out = {}
        for i, c in enumerate(self.components):
            for v in c.vertices:
                out[v] = i
        return out


def _biconnected_edge_groups(G: Multigraph, S: list[int], root: int, inc) -> tuple[list[list[int]], set[int]]:
    """Iterative Hopcroft-Tarjan over the component of ``root``.

    Returns the edge groups of the biconnected components and the
    articulation points.  Parallel edges are distinguished by id.
    """
    disc = {root: 0}
    low = {root: 0}
    counter = 1
    groups: list[list[int]] = []
    cuts: set[int] = set()
    edge_stack: list[int] = []
    root_children = 0
    # frames: (vertex, parent edge id, iterator index)
    stack = [(root, -1, 0)]
    while stack:
        v, pe, i = stack[-1]
        lst = inc[v]
        if i < len(lst):
            stack[-1] = (v, pe, i + 1)
            e = lst[i]
            if e == pe:
                continue
            w = G.other(e, v)
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append(e)
                stack.append((w, e, 0))
            elif disc[w] < disc[v]:
                edge_stack.append(e)
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                if u == root:
                    root_children += 1
                else:
                    cuts.add(u)
                grp = []
                while True:
                    x = edge_stack.pop()
                    grp.append(x)
                    if x == pe:
                        break
                groups.append(grp)
    if root_children > 1:
        cuts.add(root)
    return groups, cuts


def block_cut_decomposition(G: Multigraph, S: Iterable[int]) -> BlockDecomposition:
    """Blocks, bridges, cut vertices and leaf-blocks of every component of ``S``.

    A single-edge biconnected group is a bridge; any larger group is a block
    (for simple hosts that means at least three vertices).
    """
    S = sorted(S)
    inc = [[] for _ in range(G.n)]
    for e in S:
        a, b = G.edges[e]
        inc[a].append(e)
        inc[b].append(e)
    comps, isolated = components(G, S)
    out = []
    for comp in comps:
        groups, cuts = _biconnected_edge_groups(G, S, comp.key, inc)
        blocks, bridges = [], []
        for grp in groups:
            if len(grp) == 1:
                bridges.append(grp[0])
            else:
                vs = set()
                for e in grp:
                    vs.update(G.edges[e])
                blocks.append(Block(frozenset(vs), frozenset(grp)))
        blocks.sort(key=lambda b: b.key)
        leaf = []
        if cuts:
            for b in blocks:
                if len(b.vertices & cuts) == 1:
                    leaf.append(b)
        out.append(
            ComponentBlocks(
                vertices=comp.vertices,
                edges=comp.edges,
                blocks=tuple(blocks),
                bridges=frozenset(bridges),
                cut_vertices=frozenset(cuts),
                leaf_blocks=tuple(leaf),
            )
        )
    return BlockDecomposition(tuple(out), tuple(isolated))


def is_2vc(G: Multigraph, S: Iterable[int] | None = None) -> bool:
    """2-vertex-connectivity of ``(V, S)``: more than three vertices, connected,
    and no vertex whose removal disconnects it."""
    if G.n <= 3:
        return False
    if S is None:
        S = range(G.m)
    S = list(S)
    if not is_connected(G, S):
        return False
    dec = block_cut_decomposition(G, S)
    return dec.comp_count == 1 and not dec.components[0].cut_vertices and not dec.isolated


def find_matching_across(G: Multigraph, V1: Iterable[int], V2: Iterable[int], k: int,
                         allowed: Iterable[int] | None = None) -> frozenset | None:
    """A matching of ``k`` edges between ``V1`` and ``V2``, or ``None``.

    Kuhn's augmenting-path algorithm over the crossing edges, scanning in
    ascending id order so the answer is deterministic.
    """
    V1, V2 = set(V1), set(V2)
    cand = range(G.m) if allowed is None else sorted(allowed)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in sorted(V1)}
    for e in cand:
        a, b = G.edges[e]
        if a in V1 and b in V2:
            adj[a].append((b, e))
        elif b in V1 and a in V2:
            adj[b].append((a, e))
    match_right: dict[int, tuple[int, int]] = {}

    def augment(v, seen):
        for w, e in adj[v]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_right or augment(match_right[w][0], seen):
                match_right[w] = (v, e)
                return True
        return False

    for v in sorted(V1):
        if len(match_right) >= k:
            break
        augment(v, set())
    if len(match_right) < k:
        return None
    chosen = sorted(match_right.values())[:k]
    return frozenset(e for _, e in chosen)


_WS = re.compile(r"\s+")


def load_graph(text: str) -> Multigraph:
    """Parse the line-oriented format: ``p <n> <m>``, then ``e <a> <b>`` lines
    in edge-id order; lines starting with ``c`` are comments."""
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = _WS.split(line)
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("header must read 'p <vertices> <edges>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative count in header", lineno)
        elif tag == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(parts) not in (3, 4):
                raise GraphFormatError("edge must read 'e <a> <b> [id]'", lineno)
            try:
                a, b = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer endpoint", lineno) from None
            if len(parts) == 4:
                try:
                    eid = int(parts[3])
                except ValueError:
                    raise GraphFormatError("non-integer edge id", lineno) from None
                if eid < len(edges):
                    raise GraphFormatError(f"duplicate edge id {eid}", lineno)
                if eid != len(edges):
                    raise GraphFormatError(f"edge id {eid} out of order", lineno)
            if not (0 <= a < n and 0 <= b < n):
                raise GraphFormatError(f"endpoint out of range for {n} vertices", lineno)
            if a == b:
                raise GraphFormatError("self-loop", lineno)
            edges.append((a, b))
        else:
            raise GraphFormatError(f"unknown line tag {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Multigraph(n, edges)


def save_graph(G: Multigraph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {G.n} {G.m}")
    lines.extend(f"e {a} {b}" for a, b in G.edges)
    return "\n".join(lines) + "\n"


def save_edges(G: Multigraph, S: Iterable[int]) -> str:
    """The edge-list section for a subset, with each edge's host id appended."""
    return "".join(f"e {G.edges[e][0]} {G.edges[e][1]} {e}\n" for e in sorted(S))


def load_edge_ids(G: Multigraph, text: str) -> frozenset:
    """Read an edge subset written by :func:`save_edges` (or bare ``a b`` pairs
    when the host is simple)."""
    out = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("p"):
            continue
        parts = _WS.split(line)
        if parts[0] == "e":
            parts = parts[1:]
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise GraphFormatError("non-integer field", lineno) from None
        if len(nums) == 3:
            e = nums[2]
            if not (0 <= e < G.m) or set(G.edges[e]) != {nums[0], nums[1]}:
                raise GraphFormatError(f"edge id {e} does not match endpoints", lineno)
        elif len(nums) == 2:
            try:
                e = G.edge_id(nums[0], nums[1])
            except KeyError:
                raise GraphFormatError("no unique host edge for endpoints", lineno) from None
        else:
            raise GraphFormatError("expected 'e a b id'", lineno)
        out.add(e)
    return frozenset(out)
