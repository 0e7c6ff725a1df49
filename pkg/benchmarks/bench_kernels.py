"""Time the compiled and pure-Python cover-search kernels on the same inputs.

    python3 benchmarks/bench_kernels.py --sizes 10 12 14 --seeds 3
"""

import argparse
import time
from fractions import Fraction

from vcss import kernels
from vcss.cover import min_2_edge_cover, vertex_mask
from vcss.generators import GeneratorSpec, generate
from vcss.oracle import cycle_restricted_constraints


def workload(G, opt_search):
    eu = [a for a, _ in G.edges]
    ev = [b for _, b in G.edges]
    if opt_search:
        return dict(n=G.n, eu=eu, ev=ev, limit=G.n, require_2vc=True)
    forb, bnd = cycle_restricted_constraints(G)
    return dict(n=G.n, eu=eu, ev=ev, forb_masks=[vertex_mask(W) for W, _ in forb],
                forb_counts=[k for _, k in forb], bnd_masks=[vertex_mask(W) for W, _ in bnd],
                bnd_reqs=[k for _, k in bnd], limit=len(min_2_edge_cover(G)))


def deepen(impl, job):
    """Raise the size limit until a solution appears, as the oracles do."""
    job = dict(job)
    total = 0
    while True:
        sol, nodes, _ = kernels.cover_search(impl=impl, budget=10**8, **job)
        total += nodes
        if sol is not None:
            return sol, total
        job["limit"] += 1


def run(impl, job, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = deepen(impl, job)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return out, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", type=int, default=[10, 12, 14])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--family", default="gadget-rich")
    ap.add_argument("--density", default="1/4")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled kernel not built; run `python3 setup.py build_ext --inplace`")
        return
    print(f"{'n':>3} {'seed':>4} {'search':>6} {'nodes':>9} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for n in args.sizes:
        for seed in range(args.seeds):
            G = generate(GeneratorSpec(args.family, n, Fraction(args.density), seed))
            for opt_search in (False, True):
                job = workload(G, opt_search)
                (sp, nodes), tp = run(impls["python"], job, args.repeat)
                (sc, nodes_c), tc = run(impls["cython"], job, args.repeat)
                assert sp == sc and nodes == nodes_c, "kernels disagree"
                tag = "opt" if opt_search else "cover"
                print(f"{n:>3} {seed:>4} {tag:>6} {nodes:>9} {tp:>9.4f} {tc:>9.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
