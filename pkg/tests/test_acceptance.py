"""Acceptance gate: one test per shipped criterion, at stated tolerance.

Each test runs the relevant verification suite (or recomputes values
with the brute-force oracles from util), asserts the criterion exactly,
and prints a one-line verdict.  Run with -s to see the lines.
"""

from __future__ import annotations

import re
import time

from anodyne.fincat import enumerate_squares
from anodyne.lattice import make_chain
from anodyne.report import RunConfig
from anodyne.shapes import HornSpec, enumerate_horn, enumerate_simplex
from anodyne.suites import run_suites
from util import all_maps, brute_const_count, brute_fillers, brute_horn_points, brute_simplex_points

_ID = re.compile(r"-n(\d+)-k(\d+)$")


def _suite(name: str, **kwargs):
    t0 = time.perf_counter()
    report = run_suites(RunConfig(suites=(name,), **kwargs))
    return report, time.perf_counter() - t0


def test_criterion_1_retract_theorem():
    report, dt = _suite("retract")
    assert report.summary["fail"] == 0
    sources = set()
    chain3_ns = set()
    inner = outer = 0
    for c in report.checks:
        m = _ID.search(c.check_id)
        n, k = int(m.group(1)), int(m.group(2))
        source = c.check_id[: m.start()]
        sources.add(source)
        if source == "chain:3":
            chain3_ns.add(n)
        if 0 < k < n:
            inner += 1
            assert c.status == "pass", c.check_id
        else:
            outer += 1
            assert c.status in ("pass", "xfail"), c.check_id
    assert sources == {"chain:2", "chain:3", "chain:4", "boolean:2"}
    assert max(chain3_ns) >= 5
    assert inner > 0 and dt < 60.0
    print(
        f"\n[criterion 1] PASS - {inner} inner retract instances verified over "
        f"{len(sources)} lattices, {outer} outer indices behaved, {dt:.1f}s < 60s"
    )


def test_criterion_2_symbolic_certification():
    report, dt = _suite("symbolic")
    assert report.summary["fail"] == 0
    ns = set()
    inner = outer = 0
    for c in report.checks:
        m = _ID.search("-" + c.check_id)
        n, k = int(m.group(1)), int(m.group(2))
        ns.add(n)
        if 0 < k < n:
            inner += 1
            assert c.status == "pass", c.check_id
        else:
            outer += 1
            assert c.status == "xfail", c.check_id
            predicted = "r_dom-horn-case-y1" if k == 0 else "r_dom-horn-case-y2"
            assert predicted in (c.witness or ""), c.check_id
    assert ns == set(range(2, 13))
    assert inner == 66 and outer == 22
    assert dt < 10.0
    print(
        f"\n[criterion 2] PASS - {inner} inner identities proved over all bounded "
        f"distributive lattices up to n=12, {outer} outer indices failed exactly "
        f"as predicted, {dt:.1f}s < 10s"
    )


def test_criterion_3_adjunction():
    report, dt = _suite("adjunction")
    assert report.summary["fail"] == 0
    catalog = [c for c in report.checks if c.check_id.startswith("catalog-")]
    randoms = [c for c in report.checks if c.check_id.startswith("random-")]
    assert len(catalog) == 6 ** 3 and all(c.status == "pass" for c in catalog)
    assert len(randoms) >= 100 and all(c.status == "pass" for c in randoms)
    print(
        f"\n[criterion 3] PASS - {len(catalog)} exhaustive catalog triples and "
        f"{len(randoms)} random instances: cardinalities, inverses, naturality "
        f"all exact ({dt:.1f}s)"
    )


def test_criterion_4_fiberwise_join_and_preservation():
    report, dt = _suite("fiberwise-join")
    assert report.summary["fail"] == 0
    first_factors = len(all_maps(3))
    joins = [c for c in report.checks if c.check_id.startswith("pushout-product-")]
    homs = [c for c in report.checks if c.check_id.startswith("pullback-hom-")]
    assert len(joins) == first_factors
    assert all(c.status == "pass" for c in joins)
    assert all(c.witness == f"{first_factors} second factors" for c in joins)
    assert len(homs) == 8 and all(c.status == "pass" for c in homs)
    print(
        f"\n[criterion 4] PASS - fiberwise join exact on all "
        f"{first_factors * first_factors} map pairs with sets of size <= 3, "
        f"preservation exact on {len(homs)} catalog pairs ({dt:.1f}s)"
    )


def test_criterion_5_oracle_agreement():
    report, dt = _suite("orthogonality")
    assert report.summary["fail"] == 0
    small = len(all_maps(2))
    exhaustive = [c for c in report.checks if c.check_id.startswith("exhaustive-")]
    randoms = [c for c in report.checks if c.check_id.startswith("random-")]
    assert len(exhaustive) == small
    assert all(c.witness.startswith(f"{small} targets") for c in exhaustive)
    pairs = small * small + len(randoms)
    assert pairs >= 200
    assert all(c.status == "pass" for c in report.checks)
    print(
        f"\n[criterion 5] PASS - gap-map bijectivity matched exhaustive filler "
        f"counting on {pairs} pairs (>= 200) ({dt:.1f}s)"
    )


def test_criterion_6_closure_lemmas():
    report, dt = _suite("closure")
    assert report.summary["fail"] == 0
    by_prefix = {}
    for c in report.checks:
        by_prefix.setdefault(c.check_id.split("-")[0], []).append(c)

    bijections = by_prefix["bijection"]
    assert len(bijections) >= 50 and all(c.status == "pass" for c in bijections)

    maps = all_maps(2)
    orthogonal_pairs = sum(
        all(len(brute_fillers(sq)) == 1 for sq in enumerate_squares(i, f))
        for i in maps
        for f in maps
    )
    derivations = by_prefix["derivation"]
    assert len(derivations) == orthogonal_pairs
    assert all(c.status == "pass" for c in derivations)

    demos = {c.check_id: c for c in by_prefix["demo"]}
    wanted = {
        f"demo-{n}-{k}-{t}" for n, k in ((2, 1), (3, 1), (3, 2)) for t in ("swap", "empty")
    }
    assert wanted <= set(demos)
    assert all(demos[w].status == "pass" for w in wanted)
    assert demos["demo-precondition"].status == "xfail"
    print(
        f"\n[criterion 6] PASS - {len(bijections)} bijections orthogonal both ways, "
        f"closure derivation on all {orthogonal_pairs} orthogonal pairs from the "
        f"exhaustive search, {len(wanted)} end-to-end horn demos ({dt:.1f}s)"
    )


def test_criterion_7_counting_regressions():
    chain2, chain3 = make_chain(2), make_chain(3)

    brute_tri = brute_simplex_points(chain3, 2)
    assert len(brute_tri) == 6
    assert [p.coords for p in enumerate_simplex(chain3, 2)] == brute_tri

    brute_arc = brute_horn_points(chain3, 2, 1)
    assert len(brute_arc) == 5
    assert [p.coords for p in enumerate_horn(chain3, HornSpec(2, 1))] == brute_arc

    for n in range(0, 9):
        pts = brute_simplex_points(chain2, n)
        assert len(pts) == n + 1
        assert [p.coords for p in enumerate_simplex(chain2, n)] == pts

    from anodyne.fincat import FinMap, FinSet, const_values
    import itertools

    checked = 0
    for s in range(0, 4):
        for t in range(0, 4):
            if s > 0 and t == 0:
                continue
            total = 0
            for table in itertools.product(range(t), repeat=s):
                f = FinMap(FinSet(s), FinSet(t), table)
                cnt = brute_const_count(f)
                assert cnt == len(const_values(f))
                total += cnt
            assert total == t, (s, t)
            checked += 1
    print(
        "\n[criterion 7] PASS - |simplex(2)| = 6, |horn(2,1)| = 5 over the "
        "3-chain, |simplex(n)| = n+1 over the 2-chain for n <= 8, and the "
        f"constant-set sum law on {checked} hom-sets, all against brute force"
    )
