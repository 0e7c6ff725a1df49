"""Batch benchmarking over generated corpora, JSON reports and DOT snapshots."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .credits import COST_RATIO
from .errors import VCSSError
from .generators import GeneratorSpec, generate_instance
from .graph import Multigraph, block_cut_decomposition, is_2vc
from .pipeline import run_pipeline

SCHEMA = 1


@dataclass
class BenchOptions:
    epsilon: Fraction = Fraction(0)
    backend: str = "exact"
    force_pipeline: bool = False
    completion_mode: str = "ear-heuristic"
    with_oracle: bool = True
    budget: int | None = None
    workers: int = 1
    use_planted: bool = True


@dataclass
class Corpus:
    """Every ``(family, n, density, seed)`` combination, in that nesting order."""

    families: tuple = ("hamiltonian-plus-chords",)
    sizes: tuple = (12,)
    seeds: tuple = tuple(range(10))
    density: Fraction = Fraction(3, 10)

    def specs(self) -> list[GeneratorSpec]:
        return [GeneratorSpec(f, n, self.density, s)
                for f in self.families for n in self.sizes for s in self.seeds]


@dataclass
class InstanceRecord:
    spec: dict
    ok: bool
    error: str | None = None
    n: int = 0
    m: int = 0
    route: str | None = None
    size: int | None = None
    opt: int | None = None
    ratio: Fraction | None = None
    feasible: bool | None = None
    completion_check: bool | None = None
    within_bound: bool | None = None
    cases: dict = field(default_factory=dict)
    rewrites: dict = field(default_factory=dict)
    tight_steps: int = 0
    seconds: float = 0.0

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ratio"] = None if self.ratio is None else [self.ratio.numerator, self.ratio.denominator]
        return d


def _frac(x: Fraction | None):
    return None if x is None else [x.numerator, x.denominator]


def run_instance(spec: GeneratorSpec, opts: BenchOptions) -> InstanceRecord:
    """Generate, solve and check one instance.  Failures are recorded, never raised."""
    sd = {"family": spec.family, "n": spec.n, "density": _frac(spec.density), "seed": spec.seed}
    t0 = time.perf_counter()
    try:
        inst = generate_instance(spec)
        G = inst.graph
        res = run_pipeline(G, opts.epsilon, opts.backend, opts.force_pipeline,
                           opts.completion_mode, opts.with_oracle, opts.budget,
                           inst.planted_cover if opts.use_planted else None)
    except VCSSError as exc:
        return InstanceRecord(sd, False, f"{type(exc).__name__}: {exc}",
                              seconds=time.perf_counter() - t0)
    rec = InstanceRecord(sd, True, n=G.n, m=G.m, route=res.route, size=res.size, opt=res.opt,
                         ratio=res.ratio_vs_oracle, feasible=is_2vc(G, res.solution),
                         completion_check=res.completion_check)
    if res.opt is not None:
        rec.within_bound = res.size <= COST_RATIO * res.opt - 2
    for st in res.reduction_trace:
        rec.cases[st.case] = rec.cases.get(st.case, 0) + 1
        if st.delta == 0:
            rec.tight_steps += 1
    for r in res.canonical_trace:
        rec.rewrites[r["rule"]] = rec.rewrites.get(r["rule"], 0) + 1
    rec.seconds = time.perf_counter() - t0
    return rec


def _run_one(args):
    return run_instance(*args)


def bench(corpus: Corpus | Iterable[GeneratorSpec], opts: BenchOptions | None = None) -> dict:
    """Run the pipeline over every corpus instance and aggregate a report."""
    opts = opts or BenchOptions()
    specs = corpus.specs() if isinstance(corpus, Corpus) else list(corpus)
    jobs = [(s, opts) for s in specs]
    if opts.workers > 1:
        with ProcessPoolExecutor(opts.workers) as pool:
            records = list(pool.map(_run_one, jobs))
    else:
        records = [_run_one(j) for j in jobs]
    return summarize(records, opts)


def summarize(records: list[InstanceRecord], opts: BenchOptions) -> dict:
    ok = [r for r in records if r.ok]
    ratios = [r.ratio for r in ok if r.ratio is not None]
    cases: dict = {}
    rewrites: dict = {}
    for r in ok:
        for k, v in r.cases.items():
            cases[k] = cases.get(k, 0) + v
        for k, v in r.rewrites.items():
            rewrites[k] = rewrites.get(k, 0) + v
    piped = [r for r in ok if r.route == "pipeline"]
    return {
        "schema": SCHEMA,
        "options": {"epsilon": _frac(Fraction(opts.epsilon)), "backend": opts.backend,
                    "force_pipeline": opts.force_pipeline, "completion_mode": opts.completion_mode,
                    "use_planted": opts.use_planted},
        "instances": len(records),
        "failures": [{"spec": r.spec, "error": r.error} for r in records if not r.ok],
        "feasible": sum(1 for r in ok if r.feasible),
        "ratio": {"max": _frac(max(ratios, default=None)),
                  "mean": _frac(sum(ratios, Fraction(0)) / len(ratios) if ratios else None),
                  "count": len(ratios)},
        "checks": {
            "within_bound": sum(1 for r in ok if r.within_bound),
            "outside_bound": sum(1 for r in ok if r.within_bound is False),
            "completion_pass": sum(1 for r in piped if r.completion_check),
            "completion_fail": sum(1 for r in piped if r.completion_check is False),
        },
        "cases": dict(sorted(cases.items())),
        "rewrites": dict(sorted(rewrites.items())),
        "tight": {"instances": sum(1 for r in ok if r.tight_steps), "steps": sum(r.tight_steps for r in ok)},
        "runtime": {"total": sum(r.seconds for r in records),
                    "max": max((r.seconds for r in records), default=0.0)},
        "records": [r.to_dict() for r in records],
    }


def write_report(report: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def to_dot(G: Multigraph, S: Iterable[int] = (), name: str = "G") -> str:
    """Graphviz source: host edges dashed grey, ``S`` edges solid, bridges of
    ``S`` red.  Vertices are clustered by component of ``S``."""
    S = frozenset(S)
    dec = block_cut_decomposition(G, S)
    bridges = {e for c in dec.components for e in c.bridges}
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i, comp in enumerate(dec.components):
        lines.append(f"  subgraph cluster_{i} {{ label=\"{len(comp.edges)} edges\"; "
                     + " ".join(str(v) for v in sorted(comp.vertices)) + "; }")
    for v in range(G.n):
        lines.append(f"  {v};")
    for e, (a, b) in enumerate(G.edges):
        if e in bridges:
            attr = 'color=red, penwidth=2'
        elif e in S:
            attr = 'penwidth=2'
        else:
            attr = 'style=dashed, color=grey'
        lines.append(f"  {a} -- {b} [id=e{e}, {attr}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
