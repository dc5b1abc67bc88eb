"""End-to-end acceptance runs with wall-clock limits.

Each test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.
"""

import json
import time

import pytest

from uoplab import checks
from uoplab.cli import main
from uoplab.hecke import hecke_algebra
from uoplab.rootdata import PRESETS, affine_weyl, preset
from uoplab.uops import integrality_certificate

pytestmark = pytest.mark.acceptance


def cold():
    """Drop shared algebra caches so timings do not profit from earlier tests."""
    hecke_algebra.cache_clear()
    affine_weyl.cache_clear()


def failures(results):
    return [r.line() for r in results if not r.passed]


@pytest.fixture(scope="module")
def tree_runs():
    return {q: checks.tree_suite(q, 8) for q in (2, 3, 5)}


def pick(results, *suffixes):
    chosen = [r for r in results if any(r.name.endswith(s) for s in suffixes)]
    assert len(chosen) == len(suffixes)
    return chosen


def test_1_gl2_certificate(verdict, capsys):
    cold()
    start = time.perf_counter()
    code = main(["integrality", "--group", "gl2", "--lambda", "1,0", "--output", "json"])
    elapsed = time.perf_counter() - start
    doc = json.loads(capsys.readouterr().out)
    coeffs = {c["power"]: c["spherical"] for c in doc["certificates"][0]["coefficients"]}
    ok = code == 0 and coeffs == {
        2: [{"coweight": [0, 0], "weight": "1"}],
        1: [{"coweight": [1, 0], "weight": "-1"}],
        0: [{"coweight": [1, 1], "weight": "q"}],
    }
    with capsys.disabled():
        assert verdict(1, "gl2 certificate u^2 - T u + q S = 0", ok, elapsed, 1)


def test_2_tree_identities(verdict, tree_runs, capsys):
    names = ("v o u = q", "T = u + v", "u^2 - T o u + q = 0", "v^2 - v o T + q = 0", "T o u != u o T witness")
    bad, worst = [], 0.0
    for q, results in tree_runs.items():
        chosen = pick(results, *names)
        bad += failures(chosen)
        worst = max(worst, sum(r.seconds for r in chosen))
    with capsys.disabled():
        assert verdict(2, "tree identities at q = 2, 3, 5 (slowest q)", not bad, worst, 5, "; ".join(bad))


def test_3_theta_additivity(verdict, capsys):
    cold()
    start = time.perf_counter()
    bad = []
    for name in ("gl2", "sl2", "gl3", "sl3", "sp4"):
        ok, detail = checks.theta_additivity(preset(name), 2)
        if not ok:
            bad.append(f"{name}: {detail}")
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        assert verdict(3, "theta additivity on |coords| <= 2", not bad, elapsed, 60, "; ".join(bad))


def test_4_satake(verdict, capsys):
    cold()
    start = time.perf_counter()
    bad = []
    for name in ("gl2", "gl3"):
        bad += failures(checks.satake_suite(preset(name), 2))
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        assert verdict(4, "Satake invariance, multiplicativity, inverse", not bad, elapsed, 120, "; ".join(bad))


@pytest.mark.parametrize("name, lam, degree", [("gl3", (1, 0, 0), 3), ("sp4", (1, 0), 4)])
def test_5_integrality(verdict, capsys, name, lam, degree):
    cold()
    start = time.perf_counter()
    cert = integrality_certificate(preset(name), lam, strict=False)
    elapsed = time.perf_counter() - start
    ok = cert.degree == degree and cert.checks["hecke_identity"] and cert.checks["projected_identity"] and cert.passed
    with capsys.disabled():
        assert verdict(5, f"integrality in H_I for {name} {lam}", ok, elapsed, 120)


def test_6_centre(verdict, capsys):
    cold()
    start = time.perf_counter()
    bad = []
    for name in sorted(PRESETS):
        bad += failures(checks.hecke_suite(preset(name), 2, only=("centre",)))
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        assert verdict(6, "dot-invariant thetas are central", not bad, elapsed, 60, "; ".join(bad))


def test_7_fibers(verdict, tree_runs, capsys):
    bad, total = [], 0.0
    for q in (2, 3):
        chosen = pick(tree_runs[q], "fiber operators equal successor iterates", "beta filtration equals fiber operators")
        bad += failures(chosen)
        total += sum(r.seconds for r in chosen)
    with capsys.disabled():
        assert verdict(7, "fiber operators, successor iterates and beta agree", not bad, total, 5, "; ".join(bad))


def test_8_traces(verdict, tree_runs, capsys):
    bad, total = [], 0.0
    for q in (2, 3):
        chosen = pick(tree_runs[q], "Tr(z) = T(z') - z''")
        bad += failures(chosen)
        total += sum(r.seconds for r in chosen)
    with capsys.disabled():
        assert verdict(8, "trace relation, three configurations", not bad, total, 5, "; ".join(bad))


def randomized_layer(seed):
    out = list(checks.coeffs_suite(seed, 500))
    for name in sorted(PRESETS):
        out += checks.hecke_suite(preset(name), 2, seed, only=("associativity", "roundtrip"))
    return out


def test_9_randomized_layer(verdict, capsys):
    cold()
    start = time.perf_counter()
    first = randomized_layer(7)
    elapsed = time.perf_counter() - start
    second = randomized_layer(7)
    strip = lambda rs: [(r.name, r.passed, r.detail) for r in rs]
    bad = failures(first)
    same = strip(first) == strip(second)
    if not same:
        bad.append("two runs with the same seed differ")
    with capsys.disabled():
        assert verdict(9, "randomized properties, reproducible under a fixed seed", not bad, elapsed, 60, "; ".join(bad))
