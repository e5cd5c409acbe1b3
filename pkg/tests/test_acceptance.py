"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Every tolerance here is exact (integer arithmetic); the runtime
limits come from the criteria themselves and are generous on any modern
machine.
"""

import json
import random
import time
from itertools import combinations
from math import gcd

from corpus import bibd_corpus, cyclic_corpus
from nestkit import (
    AbelianGroup,
    CyclicBibd,
    DifferenceFamily,
    GroupSubset,
    bad_translations,
    blocking_translations,
    brute_force_matching,
    build_nesting_hypergraph,
    check_orbit_bounds,
    codegree_table,
    develop_with_anchor,
    is_perfect_nesting,
    levi_graph,
    nesting_to_coloring,
    order2_count,
    pair_coverage,
    parse_group_spec,
    solve,
    verify_bdf,
    verify_bibd,
    verify_df,
    verify_exact,
    verify_harmonious,
    verify_packing,
)
from nestkit.cli import EXIT_OK, run
from nestkit.designs import alpha_beta, apply_nesting
from nestkit.hypergraph import left_degrees, right_degrees

from test_matching import random_hypergraph

from pathlib import Path

DATA = Path(__file__).parent / "data"


def report(criterion: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{criterion} failed: {detail}"


def test_c1_z13_bdf_reproduction(capsys, tmp_path):
    start = time.perf_counter()
    res = run(["verify-bdf", "--group", "Z13", "--blocks", "7,8,11", "4,10,12"])
    fam = DifferenceFamily(parse_group_spec("Z13"), [[7, 8, 11], [4, 10, 12]], lam=1)
    df_ok = verify_df(fam).ok
    bdf_ok = verify_bdf(fam).ok
    cert = develop_with_anchor(fam)
    nested = cert.nested
    cov = pair_coverage(nested)
    pair_ok = int(cov.counts.max()) <= 2
    # independent recount by direct enumeration
    recount = {}
    for block in nested.blocks:
        for p, q in combinations(block, 2):
            recount[(p, q)] = recount.get((p, q), 0) + 1
    oracle_ok = max(recount.values()) <= 2
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    report(
        "C1",
        res.code == EXIT_OK
        and df_ok
        and bdf_ok
        and (nested.v, nested.k, nested.lam) == (13, 4, 2)
        and nested.block_count == 26
        and pair_ok
        and oracle_ok
        and elapsed < 1.0,
        f"verify-bdf exit={res.code}, nested=(13,4,2) blocks={nested.block_count}, "
        f"max pair count={int(cov.counts.max())}, {elapsed:.3f}s",
    )


def test_c2_fano_perfect_nesting(capsys, tmp_path):
    start = time.perf_counter()
    cert_path = tmp_path / "fano-nest.json"
    res = run([
        "nest-find", str(DATA / "fano.design"), "--mode", "exact", "--out", str(cert_path)
    ])
    doc = json.loads(cert_path.read_text())
    from nestkit.cli import _design_from_json

    base = _design_from_json(doc["design"], "cert")
    cert = apply_nesting(base, doc["anchors"])
    nested_rep = verify_bibd(cert.nested)
    exact_two = nested_rep.ok and cert.nested.lam == 2 and cert.nested.k == 4
    coloring = nesting_to_coloring(cert)
    graph = levi_graph(base)
    harmonious = verify_harmonious(graph, coloring)
    exact = verify_exact(graph, coloring)
    perfect = is_perfect_nesting(cert)
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    report(
        "C2",
        res.code == EXIT_OK
        and exact_two
        and harmonious
        and exact
        and perfect
        and (perfect == exact)
        and elapsed < 1.0,
        f"nest-find exit={res.code}, nested (7,4,2)-BIBD={nested_rep.ok}, "
        f"harmonious={harmonious}, exact={exact}, {elapsed:.3f}s",
    )


def test_c3_13_4_1_nesting(capsys, tmp_path):
    start = time.perf_counter()
    cert_path = tmp_path / "c13-nest.json"
    res = run([
        "nest-find", str(DATA / "c13_4_1.design"), "--mode", "exact", "--out", str(cert_path)
    ])
    doc = json.loads(cert_path.read_text())
    from nestkit.cli import _design_from_json

    base = _design_from_json(doc["design"], "cert")
    cert = apply_nesting(base, doc["anchors"])
    packing = verify_packing(cert.nested)
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    report(
        "C3",
        res.code == EXIT_OK
        and (cert.nested.v, cert.nested.k, cert.nested.lam) == (13, 5, 2)
        and packing.ok
        and elapsed < 10.0,
        f"nest-find exit={res.code}, nested (13,5,2)-packing ok={packing.ok}, "
        f"{elapsed:.3f}s",
    )


def test_c4_degree_formula_suite(capsys):
    designs = bibd_corpus()
    violations = 0
    checked = 0
    for label, design in designs:
        if design.v > 31:
            continue
        checked += 1
        h = build_nesting_hypergraph(design)
        v, k, lam = design.v, design.k, design.lam
        a_deg = set(left_degrees(h).tolist())
        r_deg = set(right_degrees(h).tolist())
        if a_deg != {v - k}:
            violations += 1
        if r_deg != {2 * lam * (v - k) // (k - 1)}:
            violations += 1
        for (u, w), count in codegree_table(h).items():
            if u[0] == "A" and w[0] == "R" and count > 1:
                violations += 1
            if u[0] == "R" and w[0] == "R":
                pu, pw = h.right_labels[u[1]], h.right_labels[w[1]]
                if count > lam or not set(pu) & set(pw):
                    violations += 1
    capsys.readouterr()
    report(
        "C4",
        checked >= 20 and violations == 0,
        f"{checked} developed BIBDs with v<=31, degree/codegree violations={violations}",
    )


def test_c5_bound_lemma_suite(capsys):
    violations = 0
    randomized = 0

    # translation/negation bound: |bad translations| <= 2^C * k^2
    rng = random.Random(20240817)
    orders_pool = [(7,), (9,), (11,), (13,), (15,), (12,), (8,), (2, 4), (2, 2, 3), (5, 5), (2, 6), (21,)]
    for _ in range(300):
        group = AbelianGroup(rng.choice(orders_pool))
        size = rng.randint(1, min(4, group.order))
        subset = GroupSubset(group, rng.sample(list(group.elements()), size))
        if len(bad_translations(subset)) > 2 ** order2_count(group) * size**2:
            violations += 1
        randomized += 1
    # tight witness: Z2 with B={0} meets the bound 2^1 * 1^2 exactly
    z2 = AbelianGroup((2,))
    if len(bad_translations(GroupSubset(z2, [0]))) != 2:
        violations += 1

    # forbidden-set bound: |blocking translations| <= k * |X|
    for _ in range(300):
        v = rng.randint(4, 40)
        g = AbelianGroup((v,))
        els = list(g.elements())
        b = GroupSubset(g, rng.sample(els, rng.randint(1, min(5, v))))
        x = GroupSubset(g, rng.sample(els, rng.randint(0, min(5, v))))
        if len(blocking_translations(b, x)) > len(b) * len(x):
            violations += 1
        randomized += 1
    # tight witness: singleton X always blocks exactly k translations
    g7 = AbelianGroup((7,))
    tight = blocking_translations(GroupSubset(g7, [0, 1, 3]), GroupSubset(g7, [0]))
    if len(tight) != 3:
        violations += 1

    # orbit-count window: h <= 2*lam*sqrt(k), m within its window
    variants = 0
    for label, c in cyclic_corpus():
        units = [u for u in range(1, c.v) if gcd(u, c.v) == 1]
        picks = [1] + random.Random(hash(label) & 0xFFFF).sample(units, min(4, len(units)))
        for u in picks:
            bases = tuple(tuple((u * x) % c.v for x in b) for b in c.base_blocks)
            variant = CyclicBibd(c.v, c.k, c.lam, bases)
            if not check_orbit_bounds(variant).ok:
                violations += 1
            variants += 1
    # tight witness: a single full orbit meets m = lam(v-1)/(k(k-1)) exactly
    rep7 = check_orbit_bounds(CyclicBibd(7, 3, 1, ((0, 1, 3),)))
    if not (rep7.ok and rep7.m == rep7.m_upper == 1 and rep7.h == 0):
        violations += 1

    capsys.readouterr()
    report(
        "C5",
        randomized >= 500 and violations == 0,
        f"{randomized} randomized instances + {variants} cyclic variants + tight "
        f"witnesses, violations={violations}",
    )


def test_c6_novak_selections(capsys, tmp_path):
    results = []
    for name in ("sts13", "sts15", "sts19", "sts21"):
        start = time.perf_counter()
        cert = tmp_path / f"{name}.json"
        res = run([
            "novak-select", str(DATA / f"{name}.cyclic"), "--mode", "exact",
            "--out", str(cert),
        ])
        verify = run(["novak-verify", str(cert)])
        elapsed = time.perf_counter() - start
        results.append((name, res.code, verify.code, elapsed))
    capsys.readouterr()
    ok = all(r == EXIT_OK and w == EXIT_OK and t < 10.0 for _, r, w, t in results)
    report(
        "C6",
        ok,
        "; ".join(f"{n} find={r} verify={w} {t:.3f}s" for n, r, w, t in results),
    )


def test_c7_solver_oracle_equivalence(capsys):
    rng = random.Random(424242)
    disagreements = 0
    trials = 0
    for _ in range(250):
        h = random_hypergraph(rng, max_a=6)
        oracle = brute_force_matching(h)
        result = solve(h)
        if (oracle is None) != (result.matching is None):
            disagreements += 1
        trials += 1
    capsys.readouterr()
    report(
        "C7",
        trials >= 200 and disagreements == 0,
        f"{trials} random hypergraphs with |A|<=6, disagreements={disagreements}",
    )


def test_c8_alpha_beta_arithmetic(capsys):
    def scan_oracle(k1, lam1, k2, lam2, limit=10**4):
        alpha = next(
            t for t in range(1, limit)
            if t * lam1 % (k1 - 1) == 0 and t * lam2 % (k2 - 1) == 0
        )
        beta = next(m for m in range(1, limit) if m * lam1 % (k1 * (k1 - 1)) == 0)
        return alpha, beta

    mismatches = 0
    tuples = 0
    for k2 in range(3, 13):
        for k1 in range(2, k2):
            g = gcd(k1 * (k1 - 1), k2 * (k2 - 1))
            l1_min = k1 * (k1 - 1) // g
            l2_min = k2 * (k2 - 1) // g
            for t in range(1, 4):  # first three lambda multiples of each shape
                k1l, l1, k2l, l2 = k1, t * l1_min, k2, t * l2_min
                if alpha_beta(k1l, l1, k2l, l2) != scan_oracle(k1l, l1, k2l, l2):
                    mismatches += 1
                tuples += 1
    pinned = alpha_beta(3, 1, 4, 2)
    congruence_ok = all(
        ((v - 1) % pinned[0] == 0) == (v % 6 == 1) for v in range(2, 200)
    )
    capsys.readouterr()
    report(
        "C8",
        mismatches == 0 and pinned == (6, 6) and congruence_ok,
        f"{tuples} admissible tuples with k2<=12 match the scan oracle, "
        f"(3,1,4,2) -> alpha=beta=6, alpha | v-1 iff v=1 mod 6",
    )


def test_c9_certificate_round_trips(capsys, tmp_path):
    trips = []

    def trip(find_args, verify_args, name):
        cert = tmp_path / f"{name}.json"
        found = run([*find_args, "--out", str(cert)])
        verify_argv = [a if a != "CERT" else str(cert) for a in verify_args]
        verified = run(verify_argv) if found.code == EXIT_OK else None
        trips.append((name, found.code, None if verified is None else verified.code))

    trip(["nest-find", str(DATA / "fano.design")], ["nest-verify", "CERT"], "nest-fano")
    trip(["nest-find", str(DATA / "c13_4_1.design")], ["nest-verify", "CERT"], "nest-c13")
    for spec, k, lam in (("Z7", 3, 1), ("Z13", 3, 1), ("Z13", 4, 1), ("Z19", 3, 1), ("Z21", 5, 1)):
        trip(
            ["search-df", "--group", spec, "--k", str(k), "--lam", str(lam)],
            ["verify-df", "--cert", "CERT"],
            f"df-{spec}-{k}-{lam}",
        )
    trip(
        ["bdf-from-df", "--group", "Z7", "--blocks", "0,1,3"],
        ["verify-bdf", "--cert", "CERT"],
        "bdf-z7",
    )
    trip(
        ["bdf-from-df", "--group", "Z13", "--blocks", "0,1,4", "0,2,7"],
        ["verify-bdf", "--cert", "CERT"],
        "bdf-z13",
    )
    for name in ("sts13", "sts15", "sts19", "sts21"):
        trip(
            ["novak-select", str(DATA / f"{name}.cyclic")],
            ["novak-verify", "CERT"],
            f"novak-{name}",
        )
    # nesting certificate -> coloring certificate -> re-verify through levi-color
    nest_cert = tmp_path / "nest-fano.json"
    color_cert = tmp_path / "color-fano.json"
    c1 = run(["levi-color", str(nest_cert), "--out", str(color_cert)])
    c2 = run(["levi-color", str(color_cert)])
    trips.append(("levi-color", c1.code, c2.code))

    capsys.readouterr()
    ok = all(f == EXIT_OK and v == EXIT_OK for _, f, v in trips)
    report(
        "C9",
        ok,
        f"{len(trips)} emit/re-verify round trips, all exit 0: "
        + "; ".join(f"{n}={f}/{v}" for n, f, v in trips),
    )
