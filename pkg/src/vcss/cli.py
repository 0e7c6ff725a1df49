"""Command-line entry point.

Graph and edge-subset files use the ``p``/``e`` line format.  JSON records go
to stdout unless an output path is given.  ``VCSS_BUDGET`` sets the default
node budget of every exact search.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import kernels
from .canonical import prune_to_minimal, to_strongly_canonical
from .cover import (DEFAULT_BUDGET, TriangleSet, all_triangles, exact_min_tfree_2_edge_cover,
                    get_backend, heuristic_tfree_2_edge_cover)
from .credits import assign_credits
from .errors import VCSSError
from .gadget import build_gprime, compute_cycle_restricted_cover
from .generators import FAMILIES, GeneratorSpec, generate_instance
from .graph import load_edge_ids, load_graph, save_edges, save_graph
from .harness import BenchOptions, Corpus, bench, to_dot, write_report
from .oracle import exact_min_cycle_restricted_cover, exact_opt_2vcss
from .pipeline import COMPLETION_MODES, run_pipeline
from .reducer import remove_all_small
from .structure import analyze_structure, is_cycle_restricted


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _load(path: str):
    return load_graph(_read(path))


def _load_cover(G, path: str | None):
    return None if path is None else load_edge_ids(G, _read(path))


def _dot_dir(path: str | None, name: str, G, S) -> None:
    if path is None:
        return
    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, f"{name}.dot"), "w") as fh:
        fh.write(to_dot(G, S, name))


def _initial_cover(G, budget):
    """A cycle-restricted cover, canonicalized and pruned."""
    cr = compute_cycle_restricted_cover(G, 0, get_backend("exact", budget))
    return prune_to_minimal(G, to_strongly_canonical(G, cr.edges))


def cmd_gen(args) -> int:
    spec = GeneratorSpec(args.family, args.n, Fraction(args.density), args.seed)
    inst = generate_instance(spec, args.retries)
    _write(args.output, save_graph(inst.graph, inst.comments()))
    if args.cover and inst.planted_cover is not None:
        _write(args.cover, save_edges(inst.graph, inst.planted_cover))
    return 0


def cmd_oracle(args) -> int:
    G = _load(args.graph)
    if args.kind == "opt":
        S = exact_opt_2vcss(G, args.budget, args.cap or 14)
    elif args.kind == "cover":
        S = exact_min_cycle_restricted_cover(G, args.budget, args.cap or 13)
    else:
        S = exact_min_tfree_2_edge_cover(G, None, args.budget).edges
    _write(args.output, save_edges(G, S))
    sys.stderr.write(_json({"kind": args.kind, "size": len(S), "kernel": kernels.BACKEND}))
    return 0


def cmd_validate(args) -> int:
    G = _load(args.graph)
    rep = analyze_structure(G).to_dict()
    S = _load_cover(G, args.cover)
    if S is not None:
        cr = is_cycle_restricted(G, S)
        rep["cover"] = {"size": len(S), "cycle_restricted": bool(cr),
                        "credits": assign_credits(G, S).to_dict()}
    _write(args.output, _json({"schema": 1, **rep}))
    return 0 if rep["is_structured"] else 1


def cmd_cover(args) -> int:
    G = _load(args.graph)
    if args.tfree == "auto":
        T = TriangleSet(G, all_triangles(G))
    elif args.tfree == "none":
        T = TriangleSet.empty(G)
    else:
        T = TriangleSet(G, [tuple(int(x) for x in ln.split()) for ln in _read(args.tfree).splitlines()
                            if ln.strip() and not ln.startswith("c")])
    if args.heuristic:
        res = heuristic_tfree_2_edge_cover(G, T)
    else:
        res = exact_min_tfree_2_edge_cover(G, T, args.budget)
    _write(args.output, save_edges(G, res.edges))
    _write(args.stats, _json({"size": res.size, "nodes": res.nodes, "optimal": res.optimal,
                              "backend": res.backend, "triangles": len(T)}))
    return 0


def cmd_reduce_gadget(args) -> int:
    G = _load(args.graph)
    Gp, T, gm = build_gprime(G)
    _write(args.output, save_graph(Gp, [f"triangles {len(T)} offset {gm.offset}"]))
    _write(args.map, _json(gm.to_dict()))
    return 0


def cmd_canonicalize(args) -> int:
    G = _load(args.graph)
    F = _load_cover(G, args.cover)
    if F is None:
        F = compute_cycle_restricted_cover(G, 0, get_backend("exact", args.budget)).edges
    trace: list = []
    S = to_strongly_canonical(G, F, trace)
    if args.prune:
        S = prune_to_minimal(G, S)
    _write(args.output, save_edges(G, S))
    if args.trace:
        _write(args.trace, _json(trace))
    _dot_dir(args.dot, "canonical", G, S)
    return 0


def cmd_reduce(args) -> int:
    G = _load(args.graph)
    S = _load_cover(G, args.cover)
    if S is None:
        S = _initial_cover(G, args.budget)
    trace: list = []
    S2 = remove_all_small(G, S, trace)
    _write(args.output, save_edges(G, S2))
    if args.trace:
        _write(args.trace, _json([st.to_dict() for st in trace]))
    if args.dot:
        _dot_dir(args.dot, "step0", G, S)
        for i, st in enumerate(trace, 1):
            _dot_dir(args.dot, f"step{i}", G, st.cover)
    return 0


def cmd_solve(args) -> int:
    G = _load(args.graph)
    res = run_pipeline(G, Fraction(args.epsilon), args.backend, args.force_pipeline,
                       args.completion, not args.no_oracle, args.budget, _load_cover(G, args.cover))
    _write(args.output, save_edges(G, res.solution))
    if args.report:
        write_report({"schema": 1, **res.to_dict()}, args.report)
    _dot_dir(args.dot, "solution", G, res.solution)
    return 0 if res.feasible else 1


def cmd_bench(args) -> int:
    corpus = Corpus(tuple(args.families), tuple(args.sizes), tuple(range(args.seed, args.seed + args.count)),
                    Fraction(args.density))
    opts = BenchOptions(Fraction(args.epsilon), args.backend, args.force_pipeline, args.completion,
                        not args.no_oracle, args.budget, args.workers, not args.ignore_planted)
    rep = bench(corpus, opts)
    if args.report:
        write_report(rep, args.report)
    summary = {k: rep[k] for k in ("instances", "feasible", "ratio", "checks", "cases", "tight")}
    summary["failures"] = len(rep["failures"])
    sys.stdout.write(_json(summary))
    return 0 if not rep["failures"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vcss", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version="vcss 0.1.0 (kernel %s)" % kernels.BACKEND)
    sub = p.add_subparsers(dest="command", required=True)

    def budget(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="node budget for exact searches (default: $VCSS_BUDGET or 10^7)")

    def pipeline_opts(sp):
        sp.add_argument("--epsilon", default="0")
        sp.add_argument("--backend", choices=("exact", "heuristic", "auto"), default="exact")
        sp.add_argument("--force-pipeline", action="store_true",
                        help="run every stage even below the oracle-routing size")
        sp.add_argument("--completion", choices=COMPLETION_MODES, default="ear-heuristic")
        sp.add_argument("--no-oracle", action="store_true", help="skip the OPT comparison")
        budget(sp)

    sp = sub.add_parser("gen", help="generate a structured graph")
    sp.add_argument("--family", choices=FAMILIES, default="hamiltonian-plus-chords")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--density", default="3/10")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--retries", type=int, default=200)
    sp.add_argument("-o", "--output")
    sp.add_argument("--cover", help="also write the planted cover here (planted families)")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("oracle", help="exact optimum by branch and bound")
    sp.add_argument("graph")
    sp.add_argument("--kind", choices=("opt", "cover", "tfree"), default="opt")
    sp.add_argument("--cap", type=int)
    sp.add_argument("-o", "--output")
    budget(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("validate", help="structure report, plus cover checks if given")
    sp.add_argument("graph")
    sp.add_argument("--cover")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("cover", help="minimum T-free 2-edge-cover")
    sp.add_argument("graph")
    sp.add_argument("--tfree", default="auto", help="auto, none, or a file of vertex triples")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True)
    g.add_argument("--heuristic", action="store_true")
    sp.add_argument("-o", "--output")
    sp.add_argument("--stats", default="-")
    budget(sp)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("reduce-gadget", help="emit the gadget graph and its map")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output")
    sp.add_argument("--map", default="-")
    sp.set_defaults(func=cmd_reduce_gadget)

    sp = sub.add_parser("canonicalize", help="rewrite a cycle-restricted cover")
    sp.add_argument("graph")
    sp.add_argument("--cover", help="cover to rewrite (default: build one)")
    sp.add_argument("--prune", action="store_true", help="prune to a minimal cover afterwards")
    sp.add_argument("--trace")
    sp.add_argument("--dot")
    sp.add_argument("-o", "--output")
    budget(sp)
    sp.set_defaults(func=cmd_canonicalize)

    sp = sub.add_parser("reduce", help="remove every small component")
    sp.add_argument("graph")
    sp.add_argument("--cover", help="minimal strongly canonical cover (default: build one)")
    sp.add_argument("--trace")
    sp.add_argument("--dot")
    sp.add_argument("-o", "--output")
    budget(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("solve", help="run the full pipeline")
    sp.add_argument("graph")
    sp.add_argument("--cover", help="seed cover used when cycle-restricted and no larger than computed")
    sp.add_argument("--report")
    sp.add_argument("--dot")
    sp.add_argument("-o", "--output")
    pipeline_opts(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("bench", help="run the pipeline over a generated corpus")
    sp.add_argument("--families", nargs="+", choices=FAMILIES, default=["hamiltonian-plus-chords"])
    sp.add_argument("--sizes", nargs="+", type=int, default=[12])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10, help="seeds per family and size")
    sp.add_argument("--density", default="3/10")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--report")
    sp.add_argument("--ignore-planted", action="store_true",
                    help="never seed the pipeline with a generator's planted cover")
    pipeline_opts(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VCSSError as exc:
        sys.stderr.write(f"vcss {args.command}: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
