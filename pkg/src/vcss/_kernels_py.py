"""Pure-Python branch-and-bound kernel; the reference for ``_kernels.pyx``.

Both implementations explore the same tree in the same order, so they
return identical solutions and node counts for identical inputs.
"""

UNDECIDED, IN, OUT = 0, 1, 2


def _lowbit_index(x):
    return (x & -x).bit_length() - 1


def _reach(start, allowed, adj):
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            nxt |= adj[b.bit_length() - 1]
            f ^= b
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _is_2vc_masks(n, adj, full):
    if n <= 3:
        return False
    if _reach(0, full, adj) != full:
        return False
    for c in range(n):
        rest = full & ~(1 << c)
        s = 0 if c != 0 else 1
        if _reach(s, rest, adj) != rest:
            return False
    return True


class _Exhausted(Exception):
    pass


def cover_search(n, eu, ev, forb_masks, forb_counts, bnd_masks, bnd_reqs,
                 limit, budget, require_2vc=False):
    """Find an edge set of size <= ``limit`` with every vertex degree >= 2 that
    satisfies the side constraints, or prove none exists.

    Side constraints:
      * no component whose vertex set is ``forb_masks[i]`` and which holds
        exactly ``forb_counts[i]`` edges;
      * at least ``bnd_reqs[i]`` chosen edges cross ``bnd_masks[i]``;
      * if ``require_2vc``, the chosen edges span a 2-vertex-connected graph.

    Returns ``(solution, nodes, exhausted)`` where ``solution`` is a sorted
    tuple of edge indices or ``None``.
    """
    m = len(eu)
    full = (1 << n) - 1
    inc = [[] for _ in range(n)]
    for e in range(m):
        inc[eu[e]].append(e)
        inc[ev[e]].append(e)
    state = [UNDECIDED] * m
    deg = [0] * n
    avail = [len(inc[v]) for v in range(n)]
    ctx = {"inc": 0, "deficit": 2 * n, "nodes": 0}
    for v in range(n):
        if avail[v] < 2:
            return None, 0, False

    def include(e):
        state[e] = IN
        ctx["inc"] += 1
        for v in (eu[e], ev[e]):
            if deg[v] < 2:
                ctx["deficit"] -= 1
            deg[v] += 1

    def uninclude(e):
        state[e] = UNDECIDED
        ctx["inc"] -= 1
        for v in (eu[e], ev[e]):
            deg[v] -= 1
            if deg[v] < 2:
                ctx["deficit"] += 1

    def exclude(e):
        state[e] = OUT
        a, b = eu[e], ev[e]
        avail[a] -= 1
        avail[b] -= 1
        return avail[a] >= 2 and avail[b] >= 2

    def unexclude(e):
        state[e] = UNDECIDED
        avail[eu[e]] += 1
        avail[ev[e]] += 1

    def masks(which):
        adj = [0] * n
        for e in range(m):
            if which(state[e]):
                a, b = eu[e], ev[e]
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        return adj

    def violation():
        """(cut mask, forbidden-side mask, edges still needed) or None."""
        if not forb_masks and not bnd_masks and not require_2vc:
            return None
        adj = masks(lambda s: s == IN)
        for i in range(len(forb_masks)):
            W = forb_masks[i]
            if _reach(_lowbit_index(W), full, adj) == W:
                cnt = 0
                for e in range(m):
                    if state[e] == IN and (W >> eu[e]) & 1 and (W >> ev[e]) & 1:
                        cnt += 1
                if cnt == forb_counts[i]:
                    return W, 0, 1
        for i in range(len(bnd_masks)):
            W = bnd_masks[i]
            cnt = 0
            for e in range(m):
                if state[e] == IN and ((W >> eu[e]) & 1) != ((W >> ev[e]) & 1):
                    cnt += 1
            if cnt < bnd_reqs[i]:
                return W, 0, bnd_reqs[i] - cnt
        if require_2vc:
            W = _reach(0, full, adj)
            if W != full:
                return W, 0, 2
            for c in range(n):
                rest = full & ~(1 << c)
                s = 0 if c != 0 else 1
                W = _reach(s, rest, adj)
                if W != rest:
                    return W, 1 << c, 1
        return None

    def available_2vc():
        return _is_2vc_masks(n, masks(lambda s: s != OUT), full)

    def branch(cands, extra_check):
        """Include ``cands[i]`` with ``cands[:i]`` excluded, for each i."""
        excluded = []
        for e in cands:
            include(e)
            found = rec(extra_check or bool(excluded))
            if found:
                return True
            uninclude(e)
            excluded.append(e)
            if not exclude(e):
                break
        for e in excluded:
            unexclude(e)
        return False

    def rec(after_exclusion):
        ctx["nodes"] += 1
        if ctx["nodes"] > budget:
            raise _Exhausted
        if ctx["inc"] + (ctx["deficit"] + 1) // 2 > limit:
            return False
        if require_2vc and after_exclusion and not available_2vc():
            return False
        best = -1
        for v in range(n):
            if deg[v] < 2 and (best < 0 or deg[v] < deg[best]):
                best = v
        if best >= 0:
            v = best
            cands = [e for e in inc[v] if state[e] == UNDECIDED]
            if deg[v] + len(cands) < 2:
                return False
            return branch(cands, False)
        viol = violation()
        if viol is None:
            ctx["solution"] = tuple(e for e in range(m) if state[e] == IN)
            return True
        W, skip, need = viol
        if ctx["inc"] + need > limit:
            return False
        other = full & ~W & ~skip
        cands = []
        for e in range(m):
            if state[e] != UNDECIDED:
                continue
            a, b = eu[e], ev[e]
            if ((W >> a) & 1 and (other >> b) & 1) or ((W >> b) & 1 and (other >> a) & 1):
                cands.append(e)
        return branch(cands, False)

    try:
        rec(require_2vc)
    except _Exhausted:
        return None, ctx["nodes"], True
    return ctx.get("solution"), ctx["nodes"], False


def is_2vc_masks(n, adj):
    return _is_2vc_masks(n, list(adj), (1 << n) - 1)
