"""Command-line interface: ``genwait <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .bounds import MAX_SCAN_DEGREE, degree_scan, reference_scan, theorem_check
from .chief import (NonSolubleInput, alpha_beta_stats, chief_series, factor_classes,
                    gaschutz_dirichlet, stime_clauses)
from .corpus import EXCEPTIONAL_GROUPS, EXTREMAL_VALUES, load_corpus
from .lattice import all_subgroups
from .montecarlo import estimate_e
from .named import parse_group
from .series import CONSTANTS, perm_extremal_e
from .waiting import (expected_wait_exact, fraction_str, gen_probability,
                      gen_probability_dirichlet)
from .witness import supersoluble_witness

DEFAULT_DIGITS = 8
MOBIUS_TABLE_LIMIT = 11


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> dict:
    return {"exact": fraction_str(x), "approx": f"{float(x):.10g}"}


def _group(args):
    if not args.group:
        raise UsageError("--group is required")
    return parse_group(args.group)


def cmd_e_exact(args) -> tuple[dict, bool]:
    G = _group(args)
    return {"order": G.order, "e": _frac(expected_wait_exact(G))}, True


def cmd_prob(args) -> tuple[dict, bool]:
    G = _group(args)
    ks = range(args.k + 1) if args.k is not None else range(0, 7)
    L = all_subgroups(G)
    return {
        "order": G.order,
        "P": {str(k): _frac(gen_probability(G, L, k)) for k in ks},
        "dirichlet": gen_probability_dirichlet(G, L).to_json(),
    }, True


def cmd_lattice(args) -> tuple[dict, bool]:
    return all_subgroups(_group(args)).to_json(), True


def cmd_chief(args) -> tuple[dict, bool]:
    G = _group(args)
    series = chief_series(G)
    stats = alpha_beta_stats(G)
    out = {"order": G.order, "factors": series.to_json(), "stats": stats.to_json(),
           "stime_clauses": stime_clauses(stats)}
    try:
        out["classes"] = [c.to_json() for c in factor_classes(G)]
        out["product_formula"] = gaschutz_dirichlet(G).to_json()
    except NonSolubleInput:
        out["classes"] = None
    return out, True


def cmd_bounds_check(args) -> tuple[dict, bool]:
    if args.group:
        reports = [theorem_check(parse_group(args.group), args.group)]
    else:
        reports = [theorem_check(e.group, e.name) for e in load_corpus(args.corpus)]
    ok = all(r.passed for r in reports)
    return {"reports": [r.to_json() for r in reports], "all_passed": ok}, ok


def cmd_constants(args) -> tuple[dict, bool]:
    digits = args.digits if args.digits is not None else DEFAULT_DIGITS
    names = list(CONSTANTS) if args.name in (None, "all") else [args.name]
    out = {}
    for name in names:
        if name not in CONSTANTS:
            raise UsageError(f"unknown constant {name!r}; choose from {', '.join(CONSTANTS)}")
        out[name] = CONSTANTS[name](digits).to_json()
    return {"digits": digits, "constants": out}, True


def cmd_exceptional_table(args) -> tuple[dict, bool]:
    rows = []
    for row in EXCEPTIONAL_GROUPS:
        e = expected_wait_exact(parse_group(row.spec))
        rows.append({"degree": row.degree, "group": row.name, "e": fraction_str(e),
                     "expected": fraction_str(row.e), "match": e == row.e})
    ok = all(r["match"] for r in rows)
    return {"rows": rows, "all_match": ok}, ok


def cmd_extremal_table(args) -> tuple[dict, bool]:
    max_n = args.max_n if args.max_n is not None else 15
    rows = []
    for n in range(2, max_n + 1):
        e = perm_extremal_e(n)
        row = {"n": n, "e": fraction_str(e), "approx": f"{float(e):.4f}"}
        if n in EXTREMAL_VALUES:
            row["expected"] = fraction_str(EXTREMAL_VALUES[n])
            row["match"] = e == EXTREMAL_VALUES[n]
        if n <= MOBIUS_TABLE_LIMIT:
            row["mobius_route"] = expected_wait_exact(parse_group(f"Gn({n})")) == e
        rows.append(row)
    ok = all(r.get("match", True) and r.get("mobius_route", True) for r in rows)
    return {"rows": rows, "all_match": ok}, ok


def cmd_scan(args) -> tuple[dict, bool]:
    max_n = args.max_n if args.max_n is not None else 5
    if max_n > MAX_SCAN_DEGREE:
        raise UsageError(f"--max-n is capped at {MAX_SCAN_DEGREE}")
    degrees = []
    for n in range(2, max_n + 1):
        hits = degree_scan(n)
        found = {(h.name, h.e) for h in hits}
        ref = reference_scan(n)
        degrees.append({
            "n": n, "hits": [h.to_json() for h in hits],
            "missing_from_scan": [[a, fraction_str(b)] for a, b in sorted(ref - found)],
            "not_in_reference": [[a, fraction_str(b)] for a, b in sorted(found - ref)],
            "match": found == ref,
        })
    ok = all(d["match"] for d in degrees)
    return {"degrees": degrees, "all_match": ok}, ok


def cmd_simulate(args) -> tuple[dict, bool]:
    if args.seed is None:
        raise UsageError("--seed is required for simulate")
    G = _group(args)
    trials = args.trials if args.trials is not None else 100000
    res = estimate_e(G, trials, args.seed)
    return {"order": G.order, **res.to_json()}, True


def cmd_witness(args) -> tuple[dict, bool]:
    G = _group(args)
    w = supersoluble_witness(G)
    cert = w.certificate.to_json()
    return {"order": G.order, "witness_order": w.group.order,
            "witness_degree": w.group.degree,
            "witness_generators": [str(g) for g in w.group.generators],
            "certificate": cert}, w.certificate.verified


COMMANDS = {
    "e-exact": cmd_e_exact,
    "prob": cmd_prob,
    "lattice": cmd_lattice,
    "chief": cmd_chief,
    "bounds-check": cmd_bounds_check,
    "constants": cmd_constants,
    "table-sec5": cmd_exceptional_table,
    "table-sec6": cmd_extremal_table,
    "scan": cmd_scan,
    "simulate": cmd_simulate,
    "witness": cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genwait",
                                     description="Waiting times for random generation of finite groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--group", help='group spec, e.g. "S(4)" or "C(2)xD(8)"')
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--digits", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--max-n", type=int, dest="max_n")
        p.add_argument("--corpus", default="builtin")
        p.add_argument("--k", type=int)
        p.add_argument("--name")
    return parser


def _human(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_human(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def run(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = {k: v for k, v in vars(args).items() if v is not None and k not in ("command", "json")}
    start = time.perf_counter()
    try:
        results, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"genwait: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # computation errors become structured reports
        report = {"command": args.command, "inputs": inputs, "version": __version__,
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(report, indent=2), file=out)
        return 3
    report = {"command": args.command, "inputs": inputs, "results": results,
              "timing_seconds": round(time.perf_counter() - start, 4), "version": __version__}
    if args.json:
        print(json.dumps(report, indent=2), file=out)
    else:
        print("\n".join(_human(results)), file=out)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
