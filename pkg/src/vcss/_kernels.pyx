# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound kernel.

Mirrors ``_kernels_py.cover_search`` step for step (same branching order,
same node accounting), with vertex sets packed into 64-bit masks.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

cdef enum:
    UNDECIDED = 0
    IN = 1
    OUT = 2

cdef enum:
    MAXN = 64


cdef struct Ctx:
    int n
    int m
    int *eu
    int *ev
    int *inc_start
    int *inc_list
    char *state
    int *deg
    int *avail
    int inc
    int deficit
    long long nodes
    long long budget
    int limit
    int require_2vc
    int nforb
    uint64_t *forb_masks
    int *forb_counts
    int nbnd
    uint64_t *bnd_masks
    int *bnd_reqs
    int *pool
    int pool_top
    uint64_t full
    int exhausted


cdef inline int lowbit(uint64_t x) noexcept:
    cdef int i = 0
    while not (x >> i) & 1:
        i += 1
    return i


cdef uint64_t reach(int start, uint64_t allowed, uint64_t *adj, int n) noexcept:
    cdef uint64_t seen = (<uint64_t>1) << start
    cdef uint64_t frontier = seen
    cdef uint64_t nxt, f
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= adj[lowbit(f)]
            f &= f - 1
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


cdef int is_2vc_adj(int n, uint64_t *adj, uint64_t full) noexcept:
    cdef int c, s
    cdef uint64_t rest
    if n <= 3:
        return 0
    if reach(0, full, adj, n) != full:
        return 0
    for c in range(n):
        rest = full & ~((<uint64_t>1) << c)
        s = 1 if c == 0 else 0
        if reach(s, rest, adj, n) != rest:
            return 0
    return 1


cdef void build_adj(Ctx *c, uint64_t *adj, int want_in) noexcept:
    cdef int e, a, b
    for a in range(c.n):
        adj[a] = 0
    for e in range(c.m):
        if (want_in and c.state[e] == IN) or (not want_in and c.state[e] != OUT):
            a = c.eu[e]
            b = c.ev[e]
            adj[a] |= (<uint64_t>1) << b
            adj[b] |= (<uint64_t>1) << a


cdef inline void take(Ctx *c, int e) noexcept:
    cdef int v
    c.state[e] = IN
    c.inc += 1
    v = c.eu[e]
    if c.deg[v] < 2:
        c.deficit -= 1
    c.deg[v] += 1
    v = c.ev[e]
    if c.deg[v] < 2:
        c.deficit -= 1
    c.deg[v] += 1


cdef inline void untake(Ctx *c, int e) noexcept:
    cdef int v
    c.state[e] = UNDECIDED
    c.inc -= 1
    v = c.eu[e]
    c.deg[v] -= 1
    if c.deg[v] < 2:
        c.deficit += 1
    v = c.ev[e]
    c.deg[v] -= 1
    if c.deg[v] < 2:
        c.deficit += 1


cdef inline int drop(Ctx *c, int e) noexcept:
    c.state[e] = OUT
    c.avail[c.eu[e]] -= 1
    c.avail[c.ev[e]] -= 1
    return c.avail[c.eu[e]] >= 2 and c.avail[c.ev[e]] >= 2


cdef inline void undrop(Ctx *c, int e) noexcept:
    c.state[e] = UNDECIDED
    c.avail[c.eu[e]] += 1
    c.avail[c.ev[e]] += 1


cdef int violation(Ctx *c, uint64_t *W_out, uint64_t *skip_out, int *need_out) noexcept:
    """1 and the cut if some side constraint fails, else 0."""
    cdef uint64_t adj[MAXN]
    cdef int i, e, cnt, ci, s
    cdef uint64_t W, rest
    if c.nforb == 0 and c.nbnd == 0 and not c.require_2vc:
        return 0
    build_adj(c, adj, 1)
    for i in range(c.nforb):
        W = c.forb_masks[i]
        if reach(lowbit(W), c.full, adj, c.n) == W:
            cnt = 0
            for e in range(c.m):
                if c.state[e] == IN and (W >> c.eu[e]) & 1 and (W >> c.ev[e]) & 1:
                    cnt += 1
            if cnt == c.forb_counts[i]:
                W_out[0] = W
                skip_out[0] = 0
                need_out[0] = 1
                return 1
    for i in range(c.nbnd):
        W = c.bnd_masks[i]
        cnt = 0
        for e in range(c.m):
            if c.state[e] == IN and ((W >> c.eu[e]) & 1) != ((W >> c.ev[e]) & 1):
                cnt += 1
        if cnt < c.bnd_reqs[i]:
            W_out[0] = W
            skip_out[0] = 0
            need_out[0] = c.bnd_reqs[i] - cnt
            return 1
    if c.require_2vc:
        W = reach(0, c.full, adj, c.n)
        if W != c.full:
            W_out[0] = W
            skip_out[0] = 0
            need_out[0] = 2
            return 1
        for ci in range(c.n):
            rest = c.full & ~((<uint64_t>1) << ci)
            s = 1 if ci == 0 else 0
            W = reach(s, rest, adj, c.n)
            if W != rest:
                W_out[0] = W
                skip_out[0] = (<uint64_t>1) << ci
                need_out[0] = 1
                return 1
    return 0


cdef int available_2vc(Ctx *c) noexcept:
    cdef uint64_t adj[MAXN]
    build_adj(c, adj, 0)
    return is_2vc_adj(c.n, adj, c.full)


cdef int branch(Ctx *c, int *cands, int k, int extra_check) noexcept:
    cdef int i, j, e, found
    cdef int nexcl = 0
    for i in range(k):
        e = cands[i]
        take(c, e)
        found = rec(c, extra_check or nexcl > 0)
        if found != 0:
            return found
        untake(c, e)
        nexcl += 1
        if not drop(c, e):
            break
    for j in range(nexcl):
        undrop(c, cands[j])
    return 0


cdef int rec(Ctx *c, int after_exclusion) noexcept:
    """1 = solution found, 0 = subtree exhausted, -1 = budget exceeded."""
    cdef int v, best, k, e, a, b, p, need, res, saved_top
    cdef uint64_t W, skip, other
    cdef int *cands
    c.nodes += 1
    if c.nodes > c.budget:
        c.exhausted = 1
        return -1
    if c.inc + (c.deficit + 1) // 2 > c.limit:
        return 0
    if c.require_2vc and after_exclusion and not available_2vc(c):
        return 0
    best = -1
    for v in range(c.n):
        if c.deg[v] < 2 and (best < 0 or c.deg[v] < c.deg[best]):
            best = v
    saved_top = c.pool_top
    cands = c.pool + c.pool_top
    k = 0
    if best >= 0:
        for p in range(c.inc_start[best], c.inc_start[best + 1]):
            e = c.inc_list[p]
            if c.state[e] == UNDECIDED:
                cands[k] = e
                k += 1
        if c.deg[best] + k < 2:
            return 0
    else:
        if not violation(c, &W, &skip, &need):
            return 1
        if c.inc + need > c.limit:
            return 0
        other = c.full & ~W & ~skip
        for e in range(c.m):
            if c.state[e] != UNDECIDED:
                continue
            a = c.eu[e]
            b = c.ev[e]
            if ((W >> a) & 1 and (other >> b) & 1) or ((W >> b) & 1 and (other >> a) & 1):
                cands[k] = e
                k += 1
    c.pool_top += k
    res = branch(c, cands, k, 0)
    c.pool_top = saved_top
    return res


def cover_search(n, eu, ev, forb_masks, forb_counts, bnd_masks, bnd_reqs,
                 limit, budget, require_2vc=False):
    """Same contract as ``_kernels_py.cover_search``; requires ``n <= 64``."""
    cdef Ctx c
    cdef int m = len(eu)
    cdef int i, v, e, res
    if n > MAXN:
        raise ValueError("compiled kernel supports at most 64 vertices")
    c.n = n
    c.m = m
    c.full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    c.eu = <int *>malloc(max(m, 1) * sizeof(int))
    c.ev = <int *>malloc(max(m, 1) * sizeof(int))
    c.inc_start = <int *>malloc((n + 1) * sizeof(int))
    c.inc_list = <int *>malloc(max(2 * m, 1) * sizeof(int))
    c.state = <char *>malloc(max(m, 1) * sizeof(char))
    c.deg = <int *>malloc(max(n, 1) * sizeof(int))
    c.avail = <int *>malloc(max(n, 1) * sizeof(int))
    c.nforb = len(forb_masks)
    c.forb_masks = <uint64_t *>malloc(max(c.nforb, 1) * sizeof(uint64_t))
    c.forb_counts = <int *>malloc(max(c.nforb, 1) * sizeof(int))
    c.nbnd = len(bnd_masks)
    c.bnd_masks = <uint64_t *>malloc(max(c.nbnd, 1) * sizeof(uint64_t))
    c.bnd_reqs = <int *>malloc(max(c.nbnd, 1) * sizeof(int))
    c.pool = <int *>malloc(max((m + 2) * (m + 2), 1) * sizeof(int))
    try:
        for v in range(n + 1):
            c.inc_start[v] = 0
        for e in range(m):
            c.eu[e] = eu[e]
            c.ev[e] = ev[e]
            c.state[e] = UNDECIDED
            c.inc_start[c.eu[e] + 1] += 1
            c.inc_start[c.ev[e] + 1] += 1
        for v in range(n):
            c.avail[v] = c.inc_start[v + 1]
            c.deg[v] = 0
            c.inc_start[v + 1] += c.inc_start[v]
        # fill incidence lists in ascending edge order, like the reference
        for v in range(n):
            c.deg[v] = c.inc_start[v]
        for e in range(m):
            c.inc_list[c.deg[c.eu[e]]] = e
            c.deg[c.eu[e]] += 1
            c.inc_list[c.deg[c.ev[e]]] = e
            c.deg[c.ev[e]] += 1
        for v in range(n):
            c.deg[v] = 0
        for i in range(c.nforb):
            c.forb_masks[i] = forb_masks[i]
            c.forb_counts[i] = forb_counts[i]
        for i in range(c.nbnd):
            c.bnd_masks[i] = bnd_masks[i]
            c.bnd_reqs[i] = bnd_reqs[i]
        for v in range(n):
            if c.avail[v] < 2:
                return None, 0, False
        c.inc = 0
        c.deficit = 2 * n
        c.nodes = 0
        c.budget = budget
        c.limit = limit
        c.require_2vc = 1 if require_2vc else 0
        c.pool_top = 0
        c.exhausted = 0
        res = rec(&c, c.require_2vc)
        if res < 0:
            return None, c.nodes, True
        if res == 0:
            return None, c.nodes, False
        sol = tuple(e for e in range(m) if c.state[e] == IN)
        return sol, c.nodes, False
    finally:
        free(c.eu)
        free(c.ev)
        free(c.inc_start)
        free(c.inc_list)
        free(c.state)
        free(c.deg)
        free(c.avail)
        free(c.forb_masks)
        free(c.forb_counts)
        free(c.bnd_masks)
        free(c.bnd_reqs)
        free(c.pool)


def is_2vc_masks(n, adj):
    cdef uint64_t a[MAXN]
    cdef int i
    if n > MAXN:
        raise ValueError("compiled kernel supports at most 64 vertices")
    for i in range(n):
        a[i] = adj[i]
    full = ((1 << n) - 1)
    return bool(is_2vc_adj(n, a, <uint64_t>full))
