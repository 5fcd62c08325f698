"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` (or ``python tests/test_acceptance.py``)
to see the lines inline; a summary is also printed at the end of any pytest run.
"""
import json
import os
import random
import subprocess
import sys
import tempfile
import time

sys.path.insert(0, os.path.dirname(__file__))

from ehrchow import (  # noqa: E402
    chow,
    corpus,
    ehrhart,
    geometry,
    ibip,
    regularity as rg,
    triangulation as tr,
)
from oracles import brute_lattice_points, monomials  # noqa: E402

RESULTS = []
ALL = corpus.NAMES
UNIMODULAR = [n for n in ALL if corpus.fixture(n).expected["unimodular"]]
REGULAR = [n for n in ALL if corpus.fixture(n).expected["regular"]]


def report(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def T_(name):
    return corpus.fixture(name).triangulation


def test_criterion_01_dimensions_equal_delta():
    names = ["SEG2", "SQ1", "SQ2STAR", "GRID2UNI", "RECT32", "SIMPLEX_2", "SIMPLEX_3", "SIMPLEX_4"]
    chow.quotient_of.cache_clear()
    start = time.perf_counter()
    bad = []
    for n in names:
        T = T_(n)
        dims = chow.chow_dims(T)
        if dims[:T.dim + 1] != ehrhart.delta_vector(T.polytope) or dims[T.dim + 1] != 0:
            bad.append(n)
    elapsed = time.perf_counter() - start
    report(1, "dim A^i = delta_i on 8 fixtures", not bad and elapsed < 5,
           f"{elapsed:.2f}s" + (f", mismatched: {bad}" if bad else ""))


def test_criterion_02_delta_identities():
    bad = []
    for n in ALL:
        T = T_(n)
        P = T.polytope
        d = P.dim
        delta = ehrhart.delta_vector(P)
        ok = (delta[0] == 1
              and delta[1] == geometry.count_lattice_points(P) - (d + 1)
              and delta[d] == geometry.count_interior_points(P)
              and sum(delta) == geometry.normalized_volume(P))
        if tr.is_unimodular(T):
            ok = ok and sum(delta) == len(T.maximal)
        if not ok:
            bad.append(n)
    report(2, "delta_0, delta_1, delta_d and sum identities", not bad, f"{len(ALL)} fixtures")


def test_criterion_03_h_equals_delta():
    bad = [n for n in UNIMODULAR if not ehrhart.h_equals_delta_check(T_(n))]
    report(3, "h-vector equals delta-vector", not bad, f"{len(UNIMODULAR)} unimodular fixtures")


def test_criterion_04_reciprocity():
    bad = [n for n in ALL if not ehrhart.reciprocity_check(T_(n).polytope)]
    report(4, "Ehrhart reciprocity", not bad, f"{len(ALL)} fixtures")


def test_criterion_05_regularity():
    rng = random.Random(5)
    bad = []
    for n in REGULAR:
        T = T_(n)
        w = rg.find_regularity_witness(T)
        if w is None or not rg.verify_witness(T, w):
            bad.append(n)
            continue
        folds = rg.fold_constraints(T)
        for _ in range(3):
            lin = [rng.randint(-5, 5) for _ in range(T.ambient_dim)]
            w2 = rg.add_affine(T, w, lin, rng.randint(-5, 5))
            if not rg.verify_witness(T, w2) or [f.value(w) for f in folds] != [f.value(w2) for f in folds]:
                bad.append(n)
    nonreg_ok = rg.find_regularity_witness(T_("NONREGULAR")) is None
    report(5, "regularity witnesses and affine invariance", not bad and nonreg_ok,
           f"{len(REGULAR)} regular fixtures, non-regular fixture rejected: {nonreg_ok}")


def test_criterion_06_ibip_classification():
    expect = {"SQ2STAR": None, "RECT32": None, "SEG2": None,
              "GRID2UNI": "boundary_connectivity", "SQ1": "boundary_connectivity",
              "NONCONVEX_CLSTAR": "polytopial", "EDGE_ONLY_OVERLAP": "cech"}
    bad = []
    for n, failure in expect.items():
        rep = ibip.is_ibip(T_(n))
        meta = corpus.fixture(n).expected
        if rep.failures() != ([failure] if failure else []) or rep.is_ibip != meta["ibip"]:
            bad.append(n)
    report(6, "ibip classification, each failing exactly its intended condition", not bad)


def test_criterion_07_injectivity_into_covering():
    out = []
    for n in ["SQ2STAR", "RECT32"]:
        T = T_(n)
        for i in range(T.dim + 1):
            out.append(chow.injectivity_into_covering_check(T, i))
    report(7, "A^i(T) injects into the covering, degrees 0..d", all(out), "SQ2STAR, RECT32")


def test_criterion_08_cech_exactness():
    ok = True
    lengths = {}
    for n in ["SQ2STAR", "RECT32"]:
        T = T_(n)
        for i in range(T.dim + 1):
            c = chow.cech_complex(T, i)
            ok = ok and c.exact and c.squares_to_zero()
            lengths[n] = len(c.subsets)
    ok = ok and lengths == {"SQ2STAR": 1, "RECT32": 2}
    report(8, "Cech complex exact in degrees 0..d", ok, f"lengths {lengths}")


def test_criterion_09_lefschetz_and_monotonicity():
    ok = True
    for n in ["SEG2", "SQ2STAR", "RECT32"]:
        T = T_(n)
        w = rg.find_regularity_witness(T)
        delta = ehrhart.delta_vector(T.polytope)
        for k in range(1, (T.dim + 1) // 2 + 1):
            e = chow.lefschetz_entry(T, w, k)
            ok = ok and chow.lefschetz_check(T, w, k) and delta[e.source_degree] <= delta[e.target_degree]
        ok = ok and ehrhart.increasing_to_middle(delta)
    ibip_names = [n for n in ALL if corpus.fixture(n).expected["ibip"]]
    ok = ok and all(ehrhart.is_unimodal(ehrhart.delta_vector(T_(n).polytope)) for n in ibip_names)
    report(9, "Lefschetz injectivity, delta increasing to the middle, unimodal", ok,
           f"unimodality on {ibip_names}")


def test_criterion_10_embedding_invariance():
    rng = random.Random(10)
    bad = []
    for n in ALL:
        T = T_(n)
        N = T.ambient_dim
        base = chow.chow_dims(T)
        for _ in range(3):
            a = geometry.random_saturated_embedding(N, N + 2, rng)
            shift = [rng.randint(-4, 4) for _ in range(N + 2)]
            if chow.chow_dims(chow.embed(T, a, shift)) != base:
                bad.append(n)
    report(10, "Chow dimensions unchanged by 3 saturated embeddings into Z^(N+2)", not bad,
           f"{len(ALL)} fixtures")


def test_criterion_11_oracle_equivalence():
    bad = []
    for n in ALL:
        T = T_(n)
        P = T.polytope
        for k in range(P.dim + 3):
            if geometry.enumerate_lattice_points(P, k) != brute_lattice_points(list(P.vertices), k):
                bad.append((n, "points", k))
        for i in range(T.dim + 3):
            if chow.sr_dimension(T, i) != len(monomials(T, i)):
                bad.append((n, "sr", i))
    report(11, "lattice points vs brute force (k <= d+2), SR dims vs enumeration (i <= d+2)", not bad,
           f"{len(ALL)} fixtures")


def test_criterion_12_determinism():
    doc = corpus.as_document(T_("RECT32"))
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "rect32.json")
        with open(path, "w") as fh:
            json.dump(doc, fh)
        outs = [subprocess.run([sys.executable, "-m", "ehrchow", "verify", path],
                               capture_output=True, check=False) for _ in range(2)]
    ok = outs[0].returncode == 0 and outs[0].stdout == outs[1].stdout and len(outs[0].stdout) > 0
    report(12, "two verify runs on RECT32 give byte-identical JSON", ok, f"{len(outs[0].stdout)} bytes")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
