"""Command-line driver.

Subcommands: build (serialize a context), verify (run checks), h1-table,
exponent-table, degeneracy.  All output files are canonical and
byte-reproducible for a fixed configuration; timings go to stderr only.
Exit codes: 0 success, 1 verification failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .construction import build_context
from .verify import known_check_ids, resolve_check, run_checks


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--p", type=int, default=3,
                        help="odd prime (default 3)")
    parser.add_argument("--multiset-H", action="store_true", dest="multiset",
                        help="keep one permutation block per rank-2 element "
                             "instead of one per distinct subgroup")
    parser.add_argument("--alt-u12-sign", action="store_true", dest="alt_u12",
                        help="name the opposite generator as u12")
    parser.add_argument("--alt-omega-sign", action="store_true", dest="alt_omega",
                        help="assemble the twist with plus signs on the "
                             "cyclic components")
    parser.add_argument("--allow-slow", action="store_true",
                        help="permit primes above 3 (long-running)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for the subgroup sweeps")
    parser.add_argument("--out", default="-",
                        help="output path, '-' for stdout")
    parser.add_argument("--format", choices=("json", "markdown"),
                        default="json")


def _config_of(args) -> dict:
    return {
        "p": str(args.p),
        "multiset_family": bool(args.multiset),
        "alt_u12_sign": bool(args.alt_u12),
        "alt_omega_sign": bool(args.alt_omega),
    }


def _build(args):
    if args.p != 3 and not args.allow_slow:
        raise SystemExit2("primes other than 3 need --allow-slow")
    omega_terms = (1, 1, 1) if args.alt_omega else (1, -1, -1)
    check = "full" if args.p == 3 else "light"
    print(f"building context for p={args.p} ...", file=sys.stderr)
    return build_context(args.p, multiset_family=args.multiset,
                         alt_u12_sign=args.alt_u12,
                         omega_terms=omega_terms, check=check)


def _write(args, text: str):
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


class SystemExit2(SystemExit):
    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def cmd_build(args) -> int:
    ctx = _build(args)
    doc = serialize.context_to_doc(ctx)
    text = serialize.canonical_json(doc)
    if args.out == "-":
        args.out = f"context-p{args.p}.json"
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    fp = serialize.fingerprint(doc)
    ranks = {name: lat.rank for name, lat in
             [("Q", ctx.q), ("M_omega", ctx.m_omega), ("M", ctx.m)]}
    print(f"wrote {args.out}")
    print(f"fingerprint {fp}")
    print("ranks " + " ".join(f"{k}={v}" for k, v in ranks.items()))
    return 0


def _run_selected(args, ids):
    ctx = _build(args)
    fp = serialize.fingerprint(serialize.context_to_doc(ctx))

    def progress(result):
        status = "pass" if result.passed else "FAIL"
        print(f"[{result.seconds:8.2f}s] {result.check_id:22s} {status}",
              file=sys.stderr)

    results = run_checks(ctx, ids, jobs=args.jobs, progress=progress)
    return ctx, fp, results


def cmd_verify(args) -> int:
    if not args.all and not args.id:
        raise SystemExit2("choose --all or --id <check>")
    ids = None if args.all else args.id
    try:
        for name in ids or []:
            resolve_check(name)
    except KeyError as exc:
        raise SystemExit2(str(exc))
    ctx, fp, results = _run_selected(args, ids)
    config = _config_of(args)
    if args.format == "json":
        text = serialize.report_json(config, fp, results)
    else:
        text = serialize.report_markdown(config, fp, results)
    _write(args, text)
    failed = [r.check_id for r in results if not r.passed]
    if failed:
        print("FAILED: " + ", ".join(failed), file=sys.stderr)
        return 1
    print(f"all {len(results)} checks passed", file=sys.stderr)
    return 0


def _table_text(rows, columns, fmt) -> str:
    if fmt == "json":
        safe = serialize._json_safe(rows)
        return serialize.canonical_json({"rows": safe})
    lines = ["| " + " | ".join(columns) + " |",
             "|" + "|".join("---" for _ in columns) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(str(row[c]) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def cmd_h1_table(args) -> int:
    ctx, fp, results = _run_selected(args, ["h1-order-table"])
    rows = results[0].details["rows"]
    text = _table_text(rows, ["subgroup", "order", "images", "computed",
                              "expected_order", "match"], args.format)
    _write(args, text)
    return 0 if results[0].passed else 1


def cmd_exponent_table(args) -> int:
    ctx, fp, results = _run_selected(args, ["exponent-table"])
    rows = results[0].details["rows"]
    text = _table_text(rows, ["i", "direct", "via_extension", "expected",
                              "match"], args.format)
    _write(args, text)
    return 0 if results[0].passed else 1


def cmd_degeneracy(args) -> int:
    ctx, fp, results = _run_selected(args, ["nondegeneracy", "degeneracy-scan"])
    config = _config_of(args)
    if args.format == "json":
        text = serialize.report_json(config, fp, results)
    else:
        text = serialize.report_markdown(config, fp, results)
    _write(args, text)
    return 0 if all(r.passed for r in results) else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcoh",
        description="exact lattice-cohomology verification of the rank-4 "
                    "crossed-product construction")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build and serialize a context")
    _add_common(p_build)
    p_build.set_defaults(fn=cmd_build)

    p_verify = sub.add_parser("verify", help="run verification checks")
    _add_common(p_verify)
    p_verify.add_argument("--all", action="store_true",
                          help="run every registered check")
    p_verify.add_argument("--id", action="append", default=[],
                          metavar="CHECK",
                          help="run one check (repeatable); ids: "
                               + ", ".join(known_check_ids()))
    p_verify.set_defaults(fn=cmd_verify)

    p_h1 = sub.add_parser("h1-table", help="full subgroup cohomology table")
    _add_common(p_h1)
    p_h1.set_defaults(fn=cmd_h1_table)

    p_exp = sub.add_parser("exponent-table", help="twisted-class exponents")
    _add_common(p_exp)
    p_exp.set_defaults(fn=cmd_exponent_table)

    p_deg = sub.add_parser("degeneracy", help="degeneracy certificates")
    _add_common(p_deg)
    p_deg.set_defaults(fn=cmd_degeneracy)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit2:
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
