import json
from fractions import Fraction

from vcss.generators import GeneratorSpec, generate
from vcss.harness import BenchOptions, Corpus, bench, run_instance, to_dot, write_report


def test_bench_report_schema(tmp_path):
    rep = bench(Corpus(("hamiltonian-plus-chords",), (12,), tuple(range(4))),
                BenchOptions(force_pipeline=True))
    assert rep["schema"] == 1 and rep["instances"] == 4 and rep["feasible"] == 4
    assert rep["checks"]["completion_fail"] == 0 and rep["checks"]["outside_bound"] == 0
    assert Fraction(*rep["ratio"]["max"]) <= Fraction(95, 72)
    path = tmp_path / "r.json"
    write_report(rep, str(path))
    assert json.loads(path.read_text())["instances"] == 4


def test_oracle_route_ratios_are_one():
    rep = bench(Corpus(("gadget-rich",), (10,), tuple(range(3)), Fraction(1, 4)))
    assert rep["ratio"]["max"] == [1, 1] and rep["ratio"]["count"] == 3


def test_tight_family_records_equality_steps():
    rep = bench([GeneratorSpec("tight-6cycle-chain", 18), GeneratorSpec("tight-6cycle-chain", 24)],
                BenchOptions(force_pipeline=True, with_oracle=False))
    assert rep["tight"]["instances"] == 2 and rep["cases"]


def test_failures_are_recorded_not_raised():
    rec = run_instance(GeneratorSpec("random-structured", 12, Fraction(1, 100), 0), BenchOptions())
    assert not rec.ok and rec.error.startswith("GenerationFailed")


def test_deterministic_records():
    c = Corpus(("planted-cycles",), (12,), (0, 1), Fraction(1, 4))
    strip = lambda r: [{k: v for k, v in x.items() if k != "seconds"} for x in r["records"]]
    assert strip(bench(c, BenchOptions(force_pipeline=True))) == strip(bench(c, BenchOptions(force_pipeline=True)))


def test_parallel_matches_serial():
    c = Corpus(("hamiltonian-plus-chords",), (10,), (0, 1, 2))
    a = bench(c, BenchOptions(force_pipeline=True))
    b = bench(c, BenchOptions(force_pipeline=True, workers=2))
    assert [r["size"] for r in a["records"]] == [r["size"] for r in b["records"]]


def test_dot_output():
    G = generate(GeneratorSpec("hamiltonian-plus-chords", 8, Fraction(3, 10), 0))
    dot = to_dot(G, range(4))
    assert dot.startswith("graph G {") and dot.count(" -- ") == G.m
    assert "color=red" in dot and "cluster_0" in dot
