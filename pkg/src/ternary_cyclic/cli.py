"""Command-line interface.

Exit codes: 0 success, 1 computation error or failed check, 2 usage error.
``mindist`` exits 0 whether or not a low-weight word is found.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .codes import CoefficientEscape, build_code, minimal_poly
from .cosets import RULE_NUMBER, coset, coset_size_predicted
from .distance import (
    PARITY_FAIL,
    BudgetExceeded,
    Shape,
    exact_min_distance,
    find_low_weight,
    find_weight4,
    optimality_bound,
    reduced_check,
)
from .field import EXHAUSTIVE_CAP, CapExceeded, FieldError, parse_field_spec
from .polyf3 import DEFAULT_SEED, factor, format_poly, parse_poly
from .theorems import (
    SHAPE,
    ConditionViolation,
    NoInstance,
    TheoremId,
    Verdict,
    admissible_instances,
    inequivalence_checks,
    run_instance,
    verify,
)


class CommandFailed(Exception):
    """A check ran to completion and failed (exit code 1)."""


# ----------------------------------------------------------------------
# argument types


def _poly_arg(text):
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _field_arg(text):
    try:
        return parse_field_spec(text)
    except (ValueError, FieldError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _zeros_arg(text):
    try:
        return tuple(int(z) for z in text.replace(" ", "").split(",") if z)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad zero list {text!r}") from None


def _field_from(args):
    if args.field is not None:
        return args.field
    if args.m is None:
        raise argparse.ArgumentTypeError("give --field or --m")
    return parse_field_spec(f"m={args.m}")


# ----------------------------------------------------------------------
# output


def emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _rule(e, m):
    pred = coset_size_predicted(e, m)
    if pred is None:
        return None
    return {"size": pred[0], "rule": pred[1], "rule_number": RULE_NUMBER[pred[1]]}


# ----------------------------------------------------------------------
# subcommands


def cmd_coset(args):
    c = coset(args.j, args.m)
    payload = {"j": args.j, "m": args.m, "leader": c.leader, "size": c.size, "members": list(c.members),
               "predicted": _rule(args.j, args.m)}
    pred = payload["predicted"]
    rule = "none" if pred is None else f"rule {pred['rule_number']} ({pred['rule']}) predicts {pred['size']}"
    text = f"C_{args.j} (m={args.m}): leader {c.leader}, size {c.size}\nmembers: {list(c.members)}\nsize rule: {rule}"
    emit(args, payload, text)
    return 0


def cmd_minpoly(args):
    ctx = _field_from(args)
    p = minimal_poly(ctx, args.i)
    payload = {"field": ctx.spec(), "i": args.i, "minpoly": str(p), "machine": p.machine(), "degree": p.degree}
    emit(args, payload, str(p))
    return 0


def cmd_gencode(args):
    ctx = _field_from(args)
    code = build_code(ctx, args.zeros)
    payload = code.summary()
    text = f"[{code.n},{code.k}] g = {code.generator}\nmachine: {code.generator.machine()}"
    text += "\ncosets: " + ", ".join(f"C_{l} ({s})" for l, s in zip(code.leaders, code.coset_sizes))
    if code.collapsed:
        text += f"\ncollapsed zeros: {list(code.collapsed)}"
    emit(args, payload, text)
    return 0


def _shape_for(zeros, m):
    s = (3**m - 1) // 2
    z = tuple(sorted(zeros))
    if len(z) == 3 and z[:2] == (0, 1):
        return Shape.C01E, z[2]
    if len(z) == 3 and 1 in z and s in z:
        rest = [x for x in z if x not in (1, s)]
        if len(rest) == 1:
            return Shape.C1ES, rest[0]
    if len(z) == 2 and z[0] == 1:
        return Shape.C1E, z[1]
    if len(z) == 2 and z[0] == 2:
        return Shape.C2E, z[1]
    raise argparse.ArgumentTypeError(f"zeros {list(zeros)} do not match (0,1,e), (1,e,s), (1,e) or (2,e)")


def cmd_mindist(args):
    ctx = _field_from(args)
    code = build_code(ctx, args.zeros)
    payload = {"field": ctx.spec(), "zeros": list(code.zeros), "n": code.n, "k": code.k}
    if args.mode == "exact":
        d = exact_min_distance(code, allow_dual=args.dual)
        payload.update(method="exact", distance=d)
        text = f"[{code.n},{code.k},{d}] (exhaustive)"
    elif args.mode == "reduced":
        shape, e = _shape_for(code.zeros, ctx.m)
        r = reduced_check(shape, ctx, e, args.cap, args.force_large)
        found = r is not None
        payload.update(method="reduced", shape=shape.value, e=e,
                       result=None if r is None else ("ParityFail" if r is PARITY_FAIL else r.to_json()),
                       weight_le_3=found)
        if r is None:
            text = f"({shape.value}) e={e}: reduced equations have no root outside F_3, d >= 4"
        elif r is PARITY_FAIL:
            text = f"({shape.value}) e={e}: parity condition fails, weight-2 words exist"
        else:
            text = f"({shape.value}) e={e}: root x = {r!r}, weight-3 word exists"
    else:
        if args.max_weight > 3:
            w = find_low_weight(code, 3, args.cap, args.force_large)
            if w is None:
                w = find_weight4(code, force=args.force_large)
        else:
            w = find_low_weight(code, args.max_weight, args.cap, args.force_large)
        payload.update(method="oracle", max_weight=args.max_weight, witness=None if w is None else w.to_dict())
        if w is None:
            text = f"[{code.n},{code.k}] no codeword of weight <= {args.max_weight}"
        else:
            terms = " + ".join(f"{c}x^{s}" for s, c in zip(w.support_exponents, w.coefficients))
            text = f"[{code.n},{code.k}] weight-{w.weight} codeword: {terms}"
    emit(args, payload, text)
    return 0


def cmd_bound(args):
    b = optimality_bound(args.n, args.d, k=args.k)
    payload = b.to_dict()
    text = f"n={b.n} d={b.d} t={b.t} r={b.r} denominator={b.denominator}"
    if b.verdict is not None:
        text += f"\n{b.verdict.value}"
    else:
        big = b.bound.bit_length() > 4000
        text += f"\nA_3(n,d) <= {payload['bound'] if big else b.bound}"
    emit(args, payload, text)
    return 0


def cmd_factor(args):
    f = factor(args.poly, seed=args.seed)
    payload = {
        "poly": str(args.poly),
        "unit": f.unit,
        "factors": [{"factor": str(p), "multiplicity": k, "degree": p.degree} for p, k in f.factors],
        "text": f.format(args.signed),
    }
    emit(args, payload, f.format(args.signed))
    return 0


# -- verify --------------------------------------------------------------


def _report_payload(rep):
    d = rep.to_dict()
    if rep.verdict is Verdict.VERIFIED and SHAPE[rep.id] in (Shape.C01E, Shape.C1ES, Shape.C2E):
        d["inequivalence"] = [c.to_dict() for c in inequivalence_checks(rep.id, rep.m)]
    return d


def _bad(d) -> bool:
    if d["explore"]:
        return False
    if d["verdict"] == Verdict.REFUTED.value:
        return True
    return not all(c["ok"] for c in d.get("inequivalence", []))


def _row(d):
    code = d["code"]
    nk = "-" if code is None else f"[{code['n']},{code['k']}]"
    label = f"{d['id']} m={d['m']}" + (f" h={d['h']}" if d["h"] is not None else "")
    verdict = d["verdict"] + (" (explore)" if d["explore"] else "")
    ineq = d.get("inequivalence")
    ineq_s = "-" if ineq is None else ("ok" if all(c["ok"] for c in ineq) else "FAIL")
    return f"{label:<14} | e={d['e']} | {nk} | {verdict} | ineq {ineq_s} | {d['seconds']:.2f}s"


def cmd_verify(args):
    if args.all:
        return _verify_all(args)
    if args.theorem is None or args.m is None:
        raise argparse.ArgumentTypeError("verify needs --theorem and --m, or --all")
    tid = TheoremId(args.theorem)
    rep = verify(tid, args.m, args.h, cap=args.cap, force=args.force_large,
                 explore=args.relaxed)
    d = _report_payload(rep)
    text = _row(d)
    for c in rep.hypothesis_checks:
        text += f"\n  [{'pass' if c.passed else 'FAIL'}] {c.name}" + (f" ({c.detail})" if c.detail else "")
    for note in rep.notes:
        text += f"\n  note: {note}"
    emit(args, d, text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{_slug(rep.label)}.json").write_text(json.dumps(d, indent=2))
    if _bad(d):
        raise CommandFailed(f"{rep.label}: {rep.verdict.value}")
    return 0


def _slug(label: str) -> str:
    return label.replace(" ", "_").replace("=", "")


def _verify_all(args):
    insts, skipped = admissible_instances(args.max_m, relaxed=args.relaxed)
    jobs = max(1, args.jobs)
    t0 = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_instance, insts, [args.cap] * len(insts), [args.force_large] * len(insts)))
    else:
        reports = [run_instance(i, args.cap, args.force_large) for i in insts]
    dicts = [_report_payload(r) for r in reports]
    failures = [d for d in dicts if _bad(d)]
    counts = {}
    for d in dicts:
        if not d["explore"]:
            counts[d["verdict"]] = counts.get(d["verdict"], 0) + 1
    summary = {
        "max_m": args.max_m,
        "instances": len([d for d in dicts if not d["explore"]]),
        "verdicts": counts,
        "failures": [f"{d['id']} m={d['m']} h={d['h']}" for d in failures],
        "skipped": [{"id": s.id.value, "m": s.m, "h": s.h, "reason": s.reason} for s in skipped],
        "seconds": round(time.perf_counter() - t0, 2),
    }
    if args.out:
        from .plotting import plot_bound_margins

        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for rep, d in zip(reports, dicts):
            (out / f"{_slug(rep.label)}.json").write_text(json.dumps(d, indent=2))
        (out / "summary.json").write_text(json.dumps(summary, indent=2))
        fig = plot_bound_margins([r for r in reports if not r.explore], out / "bound_margin.png")
        summary["figure"] = str(fig)
    lines = ["instance       | exponent | [n,k] | verdict | inequivalence | time", "-" * 72]
    lines += [_row(d) for d in dicts]
    for s in skipped:
        lines.append(f"{s.id.value} m={s.m} h={s.h:<5} | skipped: {s.reason}")
    lines.append("-" * 72)
    lines.append(f"verdicts: {counts}; failures: {len(failures)}; {summary['seconds']}s")
    if args.json:
        print(json.dumps({"summary": summary, "reports": dicts}, indent=2))
    else:
        print("\n".join(lines))
    if failures:
        raise CommandFailed(f"{len(failures)} instance(s) failed")
    return 0


# -- table ---------------------------------------------------------------


@dataclass(frozen=True)
class GoldenExample:
    name: str
    modulus: str
    zeros: tuple[int, ...]
    n: int
    k: int
    d: int
    generator: str


GOLDEN = (
    GoldenExample("C(0,1,50) m=4", "x^4+2x^3+2", (0, 1, 50), 80, 73, 4, "x^7+2x^6+x^5+x^3+2x+2"),
    GoldenExample("C(1,336,364) m=6", "x^6+2x^4+x^2+2x+2", (1, 336, 364), 728, 718, 4,
                  "x^10+2x^9+2x^6+2x^5+2x^4+2x^3+2x^2+2x+1"),
    GoldenExample("C(0,1,3362) m=8", "x^8-x^5+x^4-x^2-x-1", (0, 1, 3362), 6560, 6547, 4,
                  "x^13+2x^11+2x^10+2x^8+x^7+x^5+2x^4+2x^3+2"),
    GoldenExample("C(1,82,3280) m=8", "x^8-x^5+x^4-x^2-x-1", (1, 82, 3280), 6560, 6547, 4,
                  "x^13+2x^11+2x^10+x^7+2x^3+2x^2+2x+1"),
    GoldenExample("C(2,29) m=6", "x^6+2x^4+x^2+2x+2", (2, 29), 728, 716, 4, "x^12+2x^11+x^10+2x^6+2x^3+2"),
)


def certified_distance(code) -> str:
    """'4' when weight <= 3 is absent and d = 5 is excluded by the bound."""
    w = find_low_weight(code)
    if w is not None:
        return str(w.weight)
    b = optimality_bound(code.n, 5, k=code.k)
    return "4" if b.verdict.value == "Excluded" else ">=4"


def golden_rows():
    rows = []
    for ex in GOLDEN:
        ctx = parse_field_spec(f"mod={ex.modulus}")
        code = build_code(ctx, ex.zeros)
        d = certified_distance(code)
        got = f"[{code.n},{code.k},{d}]"
        want = f"[{ex.n},{ex.k},{ex.d}]"
        g = str(code.generator)
        ok = got == want and g == ex.generator
        rows.append({
            "example": ex.name,
            "modulus": format_poly(ctx.modulus),
            "zeros": list(ex.zeros),
            "params": got,
            "expected_params": want,
            "generator": g,
            "expected_generator": ex.generator,
            "status": "PASS" if ok else "FAIL",
        })
    return rows


def cmd_table(args):
    t0 = time.perf_counter()
    rows = golden_rows()
    lines = [f"{r['example']} | {r['params']} | g = {r['generator']} | {r['status']}" for r in rows]
    lines.append(f"({time.perf_counter() - t0:.2f}s)")
    emit(args, {"rows": rows}, "\n".join(lines))
    if any(r["status"] != "PASS" for r in rows):
        raise CommandFailed("golden example mismatch")
    return 0


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized factoring")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes for verify --all")
    common.add_argument("--force-large", action="store_true", help="allow exhaustive scans above the cap")
    common.add_argument("--cap", type=int, default=EXHAUSTIVE_CAP, help="largest m for exhaustive scans")
    common.add_argument("--out", help="directory for report files")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--field", type=_field_arg, help='field spec, e.g. "m=4,mod=x^4+2x^3+2"')
    field.add_argument("--m", type=int, help="use the default primitive modulus of degree m")

    p = argparse.ArgumentParser(prog="ternary-cyclic", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("coset", parents=[common], help="3-cyclotomic coset of j mod 3^m-1")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.set_defaults(func=cmd_coset)

    s = sub.add_parser("minpoly", parents=[common, field], help="minimal polynomial of alpha^i")
    s.add_argument("--i", type=int, required=True)
    s.set_defaults(func=cmd_minpoly)

    s = sub.add_parser("gencode", parents=[common, field], help="generator polynomial of C_(zeros)")
    s.add_argument("--zeros", type=_zeros_arg, required=True)
    s.set_defaults(func=cmd_gencode)

    s = sub.add_parser("mindist", parents=[common, field], help="low-weight search / distance")
    s.add_argument("--zeros", type=_zeros_arg, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle")
    mode.add_argument("--reduced", dest="mode", action="store_const", const="reduced")
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    s.add_argument("--max-weight", type=int, default=3, choices=[1, 2, 3, 4])
    s.add_argument("--dual", action="store_true", help="exact mode may enumerate the dual code")
    s.set_defaults(func=cmd_mindist, mode="oracle")

    s = sub.add_parser("bound", parents=[common], help="A_3(n,d) bound and exclusion verdict")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("factor", parents=[common], help="factor a polynomial over F_3")
    s.add_argument("--poly", type=_poly_arg, required=True)
    s.add_argument("--signed", action="store_true", help="write coefficient 2 as -1")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("verify", parents=[common], help="verify a family member or sweep all")
    s.add_argument("--theorem", choices=[t.value for t in TheoremId])
    s.add_argument("--m", type=int)
    s.add_argument("--h", type=int)
    s.add_argument("--all", action="store_true")
    s.add_argument("--max-m", type=int, default=EXHAUSTIVE_CAP)
    s.add_argument("--relaxed", action="store_true", help="also explore T3 outside m = 2 (mod 4)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("table", parents=[common], help="rebuild the five worked examples")
    s.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CommandFailed as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    except (CapExceeded, BudgetExceeded, ConditionViolation, NoInstance, FieldError,
            CoefficientEscape, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
