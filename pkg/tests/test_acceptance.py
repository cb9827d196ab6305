"""End-to-end acceptance suite: one test per criterion, each printing a
single pass/fail line (collected again in the terminal summary)."""

import contextlib
import io
import json
import random
import time
from math import gcd

import pytest

from ternary_cyclic.cli import GOLDEN, golden_rows, main
from ternary_cyclic.codes import build_code
from ternary_cyclic.cosets import coset, coset_size_predicted
from ternary_cyclic.distance import (
    Shape,
    Verdict as BoundVerdict,
    exact_min_distance,
    find_low_weight,
    optimality_bound,
    reduced_check,
    reduced_says_low_weight,
)
from ternary_cyclic.field import ctx_default, frobenius
from ternary_cyclic.polyf3 import TritPoly, factor, is_irreducible, monic_polys, parse_poly, product
from ternary_cyclic.theorems import TheoremId, elimination_poly_1e, elimination_poly_2e, inequivalence_checks

T = TheoremId

LISTED = (
    [(T.T1, m, None) for m in (4, 6, 8, 10, 12)]
    + [(T.C1, m, None) for m in (4, 6, 8, 10, 12)]
    + [(T.T2, m, None) for m in (4, 8, 12)]
    + [(T.C2, m, None) for m in (4, 8, 12)]
    + [(T.T3, m, None) for m in (6, 10)]
    + [(T.T5, m, None) for m in (7, 11)]
    + [(T.T6, m, None) for m in (7, 13)]
)
T4_MS = (3, 5, 7, 9, 11)


@pytest.fixture(scope="module")
def sweep(tmp_path_factory):
    """``verify --all --max-m 13`` run once through the CLI; JSON reports parsed back."""
    out_dir = tmp_path_factory.mktemp("sweep")
    buf = io.StringIO()
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(["verify", "--all", "--max-m", "13", "--out", str(out_dir), "--json"])
    data = json.loads(buf.getvalue())
    data["exit_code"] = code
    data["elapsed"] = time.perf_counter() - t0
    data["out_dir"] = out_dir
    return data


def test_criterion_1_golden_table(criterion):
    t0 = time.perf_counter()
    rows = golden_rows()
    elapsed = time.perf_counter() - t0
    mismatches = [r["example"] for r in rows if r["params"] != r["expected_params"] or r["generator"] != r["expected_generator"]]
    ok = len(rows) == len(GOLDEN) == 5 and not mismatches and elapsed < 10
    params = ", ".join(r["params"] for r in rows)
    criterion(1, ok, f"golden examples {params}; mismatches {mismatches}; {elapsed:.2f}s (limit 10s)")
    assert ok


def test_criterion_2_theorem_sweep(sweep, criterion):
    reports = sweep["reports"]
    by_key = {(r["id"], r["m"], r["h"]): r for r in reports if not r["explore"]}
    missing, not_verified = [], []
    for tid, m, h in LISTED:
        r = by_key.get((tid.value, m, h))
        if r is None:
            missing.append(f"{tid.value} m={m}")
        elif r["verdict"] != "Verified":
            not_verified.append(f"{tid.value} m={m}: {r['verdict']}")
    t4_counts = {}
    for m in T4_MS:
        n = 3**m - 1
        hs = [h for h in range(1, m) if gcd(n, 3**h - 2) == 1]
        rows = [r for (tid, mm, h), r in by_key.items() if tid == "T4" and mm == m]
        skipped = {s["h"] for s in sweep["summary"]["skipped"] if s["id"] == "T4" and s["m"] == m}
        for h in hs:
            r = by_key.get(("T4", m, h))
            if r is None and h not in skipped:
                missing.append(f"T4 m={m} h={h}")
            elif r is not None and r["verdict"] != "Verified":
                not_verified.append(f"T4 m={m} h={h}: {r['verdict']}")
        t4_counts[m] = len(rows)
    refuted = [k for k, r in by_key.items() if r["verdict"] == "Refuted"]
    ok = sweep["exit_code"] == 0 and not missing and not not_verified and not refuted
    n_ver = sum(r["verdict"] == "Verified" for r in by_key.values())
    criterion(
        2,
        ok,
        f"{n_ver}/{len(by_key)} instances Verified (T4 per m: {t4_counts}); "
        f"missing {missing}; not verified {not_verified}; refuted {len(refuted)}; {sweep['elapsed']:.0f}s",
    )
    assert ok


def test_criterion_3_factorizations(criterion):
    t0 = time.perf_counter()
    f = elimination_poly_2e()
    f_ok = f == parse_poly("x^17-x^16+x^15+x^14+x^11+x^10-x^9+x^8-x^7-x^6-x^3-x^2+x-1")
    ff = factor(f)
    want17 = {(parse_poly(s), k) for s, k in
              [("x-1", 5), ("x^4+x-1", 1), ("x^4-x^3-1", 1), ("x^4-x^3+x^2-x+1", 1)]}
    ok17 = f_ok and set(ff.factors) == want17 and ff.unit == 1

    h = elimination_poly_1e()
    fh = factor(h)
    lin = sorted((str(p), k) for p, k in fh.factors if p.degree == 1)
    nines = {p for p, k in fh.factors if p.degree == 9 and k == 1}
    thirteens = [p for p, k in fh.factors if p.degree == 13 and k == 1]
    printed = {parse_poly("x^9-x^7-x^5+x^4+x^3+x^2-1"), parse_poly("x^9-x^7-x^6-x^5+x^4+x^2-1")}
    ok107 = (
        h.degree == 107
        and fh.expand() == h
        and lin == sorted([("x", 1), ("x+1", 1), ("x+2", 9)])
        and nines == printed
        and len(thirteens) == 6
        and len(fh.factors) == 3 + 2 + 6
        and all(is_irreducible(p) and p.lead == 1 for p, _ in fh.factors)
    )
    elapsed = time.perf_counter() - t0
    ok = ok17 and ok107
    criterion(3, ok, f"degree-17 -> {ff.format(signed=True)}; degree-107 -> "
                     f"{[(p.degree, k) for p, k in fh.factors]}; {elapsed:.2f}s")
    assert ok


def test_criterion_4_bound_exclusions(sweep, criterion):
    pairs = [(80, 73), (728, 718), (6560, 6547), (728, 716)]
    fixed = {p: optimality_bound(p[0], 5, k=p[1]).verdict for p in pairs}
    verified = {(r["code"]["n"], r["code"]["k"]) for r in sweep["reports"] if r["verdict"] == "Verified"}
    swept = {p: optimality_bound(p[0], 5, k=p[1]).verdict for p in verified}
    bad = [p for p, v in {**fixed, **swept}.items() if v is not BoundVerdict.EXCLUDED]
    ok = not bad and len(verified) > 0
    criterion(4, ok, f"d=5 excluded for {len(pairs)} example pairs and {len(verified)} distinct verified (n,k); "
                     f"not excluded: {bad}")
    assert ok


def test_criterion_5_oracle_equivalence(criterion):
    rng = random.Random(20240517)
    compared = mismatches = exact_checked = exact_bad = 0
    details = []
    for m in range(2, 7):
        ctx = ctx_default(m)
        pool = range(1, ctx.n)
        for shape in Shape:
            es = list(pool) if len(pool) <= 200 else rng.sample(pool, 200)
            for e in es:
                code = build_code(ctx, shape.zeros(e, m))
                reduced = reduced_says_low_weight(reduced_check(shape, ctx, e))
                w = find_low_weight(code)
                compared += 1
                if reduced != (w is not None):
                    mismatches += 1
                    details.append((m, shape.value, e))
                if m <= 3 and code.k > 0:
                    d = exact_min_distance(code, allow_dual=True)
                    exact_checked += 1
                    if (d <= 3) != (w is not None) or (w is not None and w.weight != d):
                        exact_bad += 1
                        details.append(("exact", m, shape.value, e, d))
    ok = mismatches == 0 and exact_bad == 0 and exact_checked > 0
    criterion(5, ok, f"{compared} (m, shape, e) comparisons, {mismatches} disagreements; "
                     f"exact distance checked on {exact_checked} codes (m <= 3), {exact_bad} disagreements {details[:5]}")
    assert ok


def test_criterion_6_coset_and_root_structure(criterion):
    size_checked = size_bad = 0
    for m in range(1, 9):
        n = 3**m - 1
        for e in range(1, n):
            pred = coset_size_predicted(e, m)
            if pred is not None:
                size_checked += 1
                size_bad += pred[0] != coset(e, m).size
    prod_ok = all(
        product(p for d in range(1, r + 1) if r % d == 0 for p in monic_polys(d) if is_irreducible(p))
        == TritPoly.monomial(3**r) - TritPoly.x()
        for r in (1, 2, 3)
    )
    rng = random.Random(8)
    pool = [p for r in range(1, 5) for p in monic_polys(r) if is_irreducible(p)]
    orbit_bad = 0
    for p in (rng.choice(pool) for _ in range(50)):
        ctx = ctx_default(p.degree)
        roots = {x for x in ctx.all_elements() if ctx.evaluate(p, x).is_zero()}
        x0 = min(roots, key=lambda x: x.index) if roots else None
        orbit = [frobenius(x0, k) for k in range(p.degree)] if x0 is not None else []
        if len(roots) != p.degree or len(set(orbit)) != p.degree or set(orbit) != roots:
            orbit_bad += 1
    ok = size_bad == 0 and size_checked > 0 and prod_ok and orbit_bad == 0
    criterion(6, ok, f"coset-size predictions {size_checked} checked for m <= 8, {size_bad} wrong; "
                     f"product identity r <= 3: {prod_ok}; Frobenius orbits: 50 irreducibles, {orbit_bad} bad")
    assert ok


def test_criterion_7_inequivalence(sweep, criterion):
    fams = {T.T1, T.T2, T.C1, T.C2, T.T3}
    rows = [r for r in sweep["reports"]
            if r["verdict"] == "Verified" and not r["explore"] and T(r["id"]) in fams and r["m"] <= 10]
    failures, total = [], 0
    for r in rows:
        checks = inequivalence_checks(T(r["id"]), r["m"])
        total += len(checks)
        failures += [f"{r['id']} m={r['m']}: {c.label}" for c in checks if not c.ok]
    t3 = inequivalence_checks(T.T3, 6)
    anchor = t3[0].same_coset and t3[0].b == 106 and t3[0].a == 2 * pow(29, -1, 728) % 728
    ok = not failures and len(rows) == 14 and anchor
    criterion(7, ok, f"{total} coset comparisons over {len(rows)} verified instances (m <= 10); "
                     f"m=6 T3 anchor 2*29^-1 ~ 106: {anchor}; failures {failures}")
    assert ok
