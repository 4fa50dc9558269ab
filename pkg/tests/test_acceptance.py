"""Acceptance criteria; each test prints one pass/fail line in the terminal summary."""

import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import L, random_filtration
from hyperbar import contacts, oracle
from hyperbar.engine import Bar, compute_barcodes, rank_function
from hyperbar.filtration import INF, ZERO, write_filtration
from hyperbar.hypergraph import _homology_dim, inf_chain_space, sup_chain_space
from hyperbar.report import StatsSummary, stats
from hyperbar.rips import PointCloud, rips_filtration
from hyperbar.synth import format_contacts, generate_contacts

COUNTEREXAMPLES = Path(__file__).parent / "counterexamples"
LOG43, LOG2, LOG4 = L(4, 3), L(2, 1), L(4, 1)
acceptance = pytest.mark.acceptance


def _random_hypergraph_filtrations(count=200, seed=2024):
    rng = random.Random(seed)
    return [random_filtration(rng, max_vertices=6, top_dim=2) for _ in range(count)]


def _archive(f, name):
    COUNTEREXAMPLES.mkdir(exist_ok=True)
    path = COUNTEREXAMPLES / f"{name}.csv"
    path.write_text(write_filtration(f))
    return path


@acceptance(1, "worked-example ingest reproduces T and grades exactly")
def test_sample_ingest(sample_contacts):
    start = time.perf_counter()
    tally, f = contacts.ingest(sample_contacts.read_text())
    elapsed = time.perf_counter() - start
    assert {"".join(e): t for e, t in tally.counts.items()} == {
        "AB": 4, "DF": 3, "CD": 2, "CF": 2, "AC": 1, "BC": 1, "ABC": 3, "DEF": 2}
    got = {"".join(f.roster[i] for i in e): g for e, g in f.grades.items() if len(e) > 1}
    want = {"AB": ZERO, "DF": LOG43, "CD": LOG2, "CF": LOG2, "AC": LOG4, "BC": LOG4,
            "ABC": LOG43, "DEF": LOG2}
    assert got == want
    # exact integer-ratio keys, not floats
    assert {k: g.key for k, g in got.items()} == {
        k: Fraction(4, t) - 1 for k, t in
        {"AB": 4, "DF": 3, "CD": 2, "CF": 2, "AC": 1, "BC": 1, "ABC": 3, "DEF": 2}.items()}
    assert elapsed < 1.0


@acceptance(2, "worked-example barcodes match in dimensions 0 and 1")
def test_sample_barcodes(sample):
    start = time.perf_counter()
    bars = compute_barcodes(sample, 1)
    elapsed = time.perf_counter() - start
    dim1 = sorted((b.kind, b.birth, b.death) for b in bars if b.dim == 1)
    assert dim1 == sorted([("inf", LOG2, INF), ("hat", LOG43, LOG4), ("hat", LOG2, INF)])
    dim0 = sorted((b.kind, b.birth, b.death) for b in bars if b.dim == 0)
    assert dim0 == sorted(("inf", ZERO, d) for d in (LOG43, LOG2, LOG4, INF, INF))
    assert elapsed < 1.0


@acceptance(3, "engine rank function equals oracle tables on 200 random hypergraphs")
def test_oracle_equivalence():
    start = time.perf_counter()
    mismatches = []
    for idx, f in enumerate(_random_hypergraph_filtrations()):
        bars = compute_barcodes(f, 1)
        for n in (0, 1):
            table = oracle.betti_table(f, n)
            extra = table.additional()
            g = table.grades
            bad = [(i, j) for (i, j) in table.inf
                   if rank_function(bars, n, "inf", g[i], g[j]) != table.inf[i, j]
                   or rank_function(bars, n, "hat", g[i], g[j]) != extra[i, j]]
            if bad:
                mismatches.append((idx, n, _archive(f, f"random_{idx}_dim{n}")))
    assert not mismatches, f"counterexamples archived: {mismatches}"
    assert time.perf_counter() - start < 300


@acceptance(4, "Rips filtrations give classical barcodes and no hat bars")
def test_simplicial_consistency():
    rng = random.Random(99)
    for _ in range(100):
        n = rng.randint(1, 8)
        cloud = PointCloud([[rng.uniform(0, 2), rng.uniform(0, 2)] for _ in range(n)])
        f = rips_filtration(cloud, r_max=1.5, max_dim=2)
        bars = compute_barcodes(f, 1)
        assert not [b for b in bars if b.kind == "hat"]
        assert oracle.compare(bars, oracle.classical_persistence(f, 1)).empty
        assert oracle.compare(bars, oracle.oracle_barcodes(f, 1)).empty
    square = PointCloud([[0, 0], [1, 0], [1, 1], [0, 1]])
    dim1 = [b for b in compute_barcodes(rips_filtration(square, 2, 2), 1) if b.dim == 1]
    assert [(b.kind, b.birth.value, b.death.value) for b in dim1] == [("inf", 1.0, math.sqrt(2))]


@acceptance(5, "inf-side and sup-side homology agree at every grade, dims 0-2")
def test_inf_sup_agreement():
    for f in _random_hypergraph_filtrations():
        for g in f.critical_grades():
            h = f.at(g)
            for n in (0, 1, 2):
                assert _homology_dim(h, n, inf_chain_space) == _homology_dim(h, n, sup_chain_space)


@acceptance(6, "two never-interacting clusters give exactly two infinite dim-0 bars")
def test_two_components():
    recs = generate_contacts(60, 6000, seed=5, clusters=2)
    _, f = contacts.ingest(format_contacts(recs))
    bars = compute_barcodes(f, 0)
    assert sum(1 for b in bars if b.dim == 0 and b.kind == "inf" and b.infinite) == 2


PUBLISHED_COUNTS = [
    ("Baboon", (78, 14, 0, 0), 0.1795, 0.0),
    ("Malawi", (332, 270, 10, 4), 0.7895, 0.0117),
    ("Conference", (7733, 7290, 1363, 1072), 0.8015, 0.1179),
    ("Workplace", (4048, 3537, 142, 112), 0.8442, 0.0267),
    ("High school", (5096, 3797, 473, 281), 0.6818, 0.0505),
]


@acceptance(7, "proportions from published counts within 5e-4")
@pytest.mark.parametrize("name, counts, prop_inf, prop_hat", PUBLISHED_COUNTS, ids=[r[0] for r in PUBLISHED_COUNTS])
def test_published_proportions(name, counts, prop_inf, prop_hat):
    s = StatsSummary(1, *counts)
    assert abs(float(s.prop_inf) - prop_inf) <= 5e-4
    assert abs(float(s.prop_hat) - prop_hat) <= 5e-4
    # counting from bars gives the same summary
    bars = ([Bar(1, "inf", ZERO, INF)] * counts[1] + [Bar(1, "inf", ZERO, LOG2)] * (counts[0] - counts[1])
            + [Bar(1, "hat", ZERO, INF)] * counts[3] + [Bar(1, "hat", ZERO, LOG2)] * (counts[2] - counts[3]))
    assert stats(bars, 1) == s


@acceptance(8, "400 individuals / 70,000 contacts: ingest + dims 0-1 under 60 s")
@pytest.mark.slow
def test_performance():
    text = format_contacts(generate_contacts(400, 70_000, seed=0))
    start = time.perf_counter()
    _, f = contacts.ingest(text)
    bars = compute_barcodes(f, 1)
    elapsed = time.perf_counter() - start
    assert bars and elapsed < 60, f"took {elapsed:.1f} s"


def _pipeline(workdir: Path, sample_contacts: Path, seed_env: str) -> dict[str, bytes]:
    env = dict(os.environ, PYTHONHASHSEED=seed_env)

    def cli(*args):
        subprocess.run([sys.executable, "-m", "hyperbar", *map(str, args)],
                       check=True, cwd=workdir, env=env, capture_output=True)

    synth = workdir / "synth.txt"
    cli("synth", "--individuals", "30", "--contacts", "2000", "--clusters", "2", "--seed", "3", "-o", synth)
    for name, src in (("sample", sample_contacts), ("synth", synth)):
        cli("ingest", src, "-o", workdir / f"{name}_filt.csv")
        cli("compute", workdir / f"{name}_filt.csv", "-o", workdir / f"{name}_bars.csv")
        cli("compute", workdir / f"{name}_filt.csv", "--format", "json", "-o", workdir / f"{name}_bars.json")
        cli("plot", workdir / f"{name}_bars.csv", "-o", workdir / f"{name}_bars.svg")
    square = workdir / "square.txt"
    square.write_text("0 0\n1 0\n1 1\n0 1\n")
    cli("rips", square, "--rmax", "2", "-o", workdir / "rips_filt.csv")
    cli("report", sample_contacts, synth, "-o", workdir / "report", "--names", "sample", "synth")
    return {str(p.relative_to(workdir)): p.read_bytes()
            for p in sorted(workdir.rglob("*")) if p.is_file()}


@acceptance(9, "two runs produce byte-identical output files")
def test_determinism(tmp_path, sample_contacts):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    first = _pipeline(a, sample_contacts, "1")
    second = _pipeline(b, sample_contacts, "2")
    assert len(first) >= 12
    assert first.keys() == second.keys()
    differ = [k for k in first if first[k] != second[k]]
    assert not differ, f"outputs differ: {differ}"
