"""Acceptance criteria, one test each, printing one status line per criterion.

The order-4 exact-value criterion is budgeted: ``CUBECROSS_ACCEPT_BUDGET``
(seconds per graph, default 60) caps each search.  When a search does not
close, the test still requires a certified bracket around the target value
and reports the shortfall as DEGRADED.
"""

import os
import random
import time

import pytest

import conftest
from conftest import complete, complete_bipartite, petersen
from cubecross.arrangement import arrangement
from cubecross.cubes import FAMILIES, CubeSpec, generate, parse_spec
from cubecross.geometry import crossing_count, cycle_parity_check, nu_partition, validate_good
from cubecross.graph import boundary_and_counts, complement, edges_within, is_connected, subset_list
from cubecross.heuristic import cr_upper_bound
from cubecross.iso import automorphisms, is_isomorphic, verify_mapping
from cubecross.lemmas import CHECKS, ORDER3, ORDER4, check_lemma_2_4, check_obs_4_1
from cubecross.planarization import verify_certificate
from cubecross.solver import Budget, cr_decide, crossing_number, euler_girth_bound
from oracle import fixture_graphs, load_or_build
from test_geometry import random_straight_drawing

DRAWINGS = []  # every accepted drawing produced here, re-checked by criterion 8


def report(crit, status, text):
    line = f"[{status}] criterion {crit}: {text}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_generator_counts():
    t = time.perf_counter()
    specs = [
        CubeSpec(fam, n, v)
        for fam in FAMILIES
        for n in range(1, 6)
        for v in ((0, 1) if fam == "MQ" else (0,))
        if not (fam == "LTQ" and n < 2)
    ]
    for s in specs:
        g = generate(s)
        assert (g.n, g.m) == (2**s.order, s.order * 2 ** (s.order - 1)), s.name
        assert g.is_regular(s.order) and is_connected(g), s.name
    dt = time.perf_counter() - t
    assert dt < 1.0
    report(1, "PASS", f"{len(specs)} graphs, counts/regularity/connectivity exact, {dt:.2f}s")


def test_criterion_2_isomorphisms():
    t = time.perf_counter()
    claims = [("CQ3", "LTQ3"), ("CQ3", "0-MQ3"), ("CQ3", "1-MQ3"), ("LTQ3", "0-MQ3"), ("0-MQ3", "1-MQ3"),
              ("0-MQ4", "LTQ4")]
    for a, b in claims:
        g, h = generate(parse_spec(a)), generate(parse_spec(b))
        mp = is_isomorphic(g, h)
        assert mp is not None and verify_mapping(g, h, mp), (a, b)
    assert is_isomorphic(generate("CQ", 4), generate("LTQ", 4)) is None
    dt = time.perf_counter() - t
    assert dt < 10
    report(2, "PASS", f"{len(claims)} verified mappings, CQ4 not isomorphic to LTQ4, {dt:.2f}s")


def test_criterion_3_lemma_lab():
    t = time.perf_counter()
    cq3, ltq3, ltq4 = generate("CQ", 3), generate("LTQ", 3), generate("LTQ", 4)
    reports = [CHECKS[k](cq3) for k in ORDER3 if k != "obs4.1"]
    reports.append(check_obs_4_1(ltq3))
    reports += [CHECKS[k](ltq4) for k in ORDER4]
    for r in reports:
        print(r.line())
        assert r.passed, r.line()
    neg = check_lemma_2_4(complete(4))
    assert not neg.passed and neg.witness is not None
    dt = time.perf_counter() - t
    assert dt < 30
    report(3, "PASS", f"{len(reports)} checks pass, K4 control fails with witness {neg.witness['X']}, {dt:.2f}s")


SMALL_VALUES = {
    **{s: 0 for s in ("Q1", "Q2", "Q3", "CQ1", "CQ2", "LTQ2", "0-MQ1", "1-MQ1", "0-MQ2", "1-MQ2")},
    **{s: 1 for s in ("CQ3", "LTQ3", "0-MQ3", "1-MQ3")},
}


def test_criterion_4_exact_small_values():
    t = time.perf_counter()
    for name, value in SMALL_VALUES.items():
        g = generate(parse_spec(name))
        res = crossing_number(g, effort=8)
        assert res.exact and res.value == value, (name, res.lower, res.upper)
        assert verify_certificate(g, res.certificate)
        DRAWINGS.append(res.drawing)
    dt = time.perf_counter() - t
    assert dt < 60
    report(4, "PASS", f"{len(SMALL_VALUES)} exact values (0 x10, 1 x4), {dt:.1f}s")


UPPER_TARGETS = {"Q4": 8, "CQ4": 8, "LTQ4": 10, "0-MQ4": 10, "1-MQ4": 10}


def test_criterion_5_upper_bounds():
    t = time.perf_counter()
    got = {}
    for name, target in UPPER_TARGETS.items():
        g = generate(parse_spec(name))
        ub = cr_upper_bound(g, effort=256)
        assert ub.k <= target, (name, ub.k)
        assert verify_certificate(g, ub.planarization)
        assert validate_good(ub.drawing).good and crossing_count(ub.drawing) == ub.k
        DRAWINGS.append(ub.drawing)
        got[name] = ub.k
    dt = time.perf_counter() - t
    assert dt < 300
    report(5, "PASS", ", ".join(f"{k} <= {v}" for k, v in got.items()) + f", {dt:.0f}s")


EXACT_TARGETS = {"Q4": 8, "CQ4": 8, "LTQ4": 10, "0-MQ4": 10, "1-MQ4": 10}


@pytest.mark.parametrize("name", list(EXACT_TARGETS))
def test_criterion_6_exact_order4_values(name):
    target = EXACT_TARGETS[name]
    wall = float(os.environ.get("CUBECROSS_ACCEPT_BUDGET", "60"))
    g = generate(parse_spec(name))
    res = crossing_number(g, Budget(wall=wall), effort=256)
    assert res.lower >= euler_girth_bound(g)
    assert res.lower <= target and res.upper <= target
    assert verify_certificate(g, res.certificate) and res.certificate.k == res.upper
    if res.drawing is not None:
        assert crossing_count(res.drawing) == res.upper
        DRAWINGS.append(res.drawing)
    if res.exact:
        assert res.value == target
        report(6, "PASS", f"cr({name}) = {target} ({res.lower_source}, {res.elapsed:.0f}s)")
    else:
        report(6, "DEGRADED",
               f"{name}: certified {res.lower} <= cr <= {res.upper} within {wall:.0f}s "
               f"(lower: {res.lower_source}; target {target} not closed)")


def test_criterion_7_oracle_equivalence():
    t = time.perf_counter()
    oracle = load_or_build()
    graphs = fixture_graphs()
    checked = 0
    for name, g in graphs.items():
        truth = oracle[name]
        group = automorphisms(g)
        for k in range(4):
            want = truth is not None and truth <= k
            for grp in (None, group):
                res = cr_decide(g, k, group=grp)
                assert res.status in ("YES", "NO"), (name, k)
                assert res.yes == want, (name, k, grp is not None)
                if res.yes:
                    assert verify_certificate(g, res.certificate)
                checked += 1
    dt = time.perf_counter() - t
    assert dt < 600
    report(7, "PASS", f"{len(graphs)} graphs x k=0..3, with and without symmetry: {checked} decisions agree, {dt:.0f}s")


def test_criterion_8_property_suites():
    t = time.perf_counter()
    # cut identity over every subset of the cubic fixtures
    cubic = [generate(parse_spec(s)) for s in ("Q3", "CQ3", "LTQ3", "0-MQ3", "1-MQ3")] + [petersen()]
    subsets = 0
    for g in cubic:
        for mask in range(1 << g.n):
            xs = subset_list(g, mask)
            assert boundary_and_counts(g, xs, complement(g, xs))[1] == 3 * len(xs) - 2 * edges_within(g, xs)
            subsets += 1
    # additivity of crossing counts over edge partitions
    rng = random.Random(8)
    pool = [generate("CQ", 3), generate("LTQ", 3), complete(6), complete_bipartite(3, 4)]
    for trial in range(100):
        g = pool[trial % len(pool)]
        d = random_straight_drawing(g, rng)
        k = rng.randint(2, 4)
        owner = [rng.randrange(k) for _ in range(g.m)]
        nu = nu_partition(d, [[e for e in range(g.m) if owner[e] == p] for p in range(k)])
        split = sum(nu.within(i) for i in range(k)) + sum(nu.between(i, j) for i in range(k) for j in range(i + 1, k))
        assert split == crossing_count(d)
        DRAWINGS.append(d)
    # arrangement Euler identity and cycle parity on every accepted drawing
    for d in DRAWINGS:
        assert validate_good(d).good
        assert arrangement(d).euler_holds()
        if d.graph.n <= 16:
            assert cycle_parity_check(d).ok
    # invariance under relabeling
    cq3 = generate("CQ", 3)
    rng = random.Random(20)
    for _ in range(20):
        perm = list(range(8))
        rng.shuffle(perm)
        assert crossing_number(cq3.relabel(perm), effort=4).value == 1
    dt = time.perf_counter() - t
    assert dt < 300
    report(8, "PASS", f"{subsets} subsets, 100 partitioned drawings, {len(DRAWINGS)} drawings Euler+parity, "
                      f"20 relabelings, {dt:.0f}s")
