"""Command-line front end.

    cp2kit analyze <file> [--json]
    cp2kit verify-corpus [--manifest FILE] [--out FILE] [--jobs N] [--max-order N] [--timings]
    cp2kit census [--manifest FILE] [--out FILE] [--jobs N] [--max-order N]
    cp2kit corpus list [--manifest FILE] [--json]

Exit codes: 0 all checks agree, 1 a discrepancy was found, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import checkers as ch
from .corpus import (
    CENSUS_COLUMNS,
    census_rows,
    dumps_report,
    evaluate,
    load_manifest,
    run_corpus,
)
from .errors import CP2KitError
from .group import load_group

EXIT_OK = 0
EXIT_DISCREPANCY = 1
EXIT_INPUT = 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _format_text(path: str, rec: dict) -> str:
    v = rec["verdict"]
    d = rec["theoremD"]
    s = rec["structure"]
    lines = [
        f"group: {path} (order {rec['order']})",
        f"element orders: {s['orderSpectrum']}",
        f"CP1={v['cp1']} CP={v['cp']} CN={v['cn']} CP2={v['cp2']}",
    ]
    if v["witness"]:
        w = v["witness"]
        lines.append(f"violation: o({w['x']}*{w['y']}) = {w['oxy']} > {w['bound']}")
    lines.append(f"normal-subgroup route agrees: {rec['theoremA'] == v['cp2']}")
    branch = d["branch"]
    if d["decomposition"]:
        dec = d["decomposition"]
        branch += (f" (p={dec['p']}, q={dec['q']}, alpha={dec['alpha']}, beta={dec['beta']},"
                   f" kernel {dec['kernelOrder']}, complement {dec['complementOrder']},"
                   f" cyclic={dec['complementCyclic']})")
    elif d["prime"]:
        branch += f" (p={d['prime']}, omega closure {d['omegaEvidence']})"
    lines.append(f"classification: {branch}")
    cf = rec["corollaryF"]
    lines.append(f"in CP1 and CP2: {cf['inIntersection']}" + (f" ({cf['branch']})" if cf["branch"] else ""))
    lines.append(
        f"|Z|={s['centerOrder']} |F|={s['fittingOrder']} |G'|={s['commutatorOrder']} "
        f"|Phi|={s['frattiniOrder']} exponent={s['exponent']} classes={s['conjugacyClasses']}")
    lines.append(f"nilpotent={s['nilpotent']} solvable={s['solvable']}")
    for issue in rec["discrepancies"]:
        lines.append(f"{issue['kind']}: {issue['check']}: {issue['detail']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    try:
        g = load_group(args.file)
    except (OSError, CP2KitError) as exc:
        return _fail(f"NotAGroup: {exc}" if not isinstance(exc, OSError) else str(exc))
    rec = evaluate(g)
    rec["theoremD"] = ch.classify_theorem_d(g).to_json(members=True)
    if args.json:
        rec = {"schemaVersion": 1, **rec}
        sys.stdout.write(json.dumps(rec, indent=1) + "\n")
    else:
        sys.stdout.write(_format_text(args.file, rec))
    return EXIT_OK


def _report(args, timings: bool = False):
    descriptors = load_manifest(args.manifest)
    return run_corpus(descriptors, max_order=args.max_order, jobs=args.jobs, timings=timings)


def cmd_verify(args) -> int:
    try:
        report = _report(args, timings=args.timings)
    except (OSError, CP2KitError) as exc:
        return _fail(str(exc))
    text = dumps_report(report)
    _write(text, args.out)
    summary = report["summary"]
    print(f"{summary['totalGroups']} groups, {summary['cp2Count']} in CP2, "
          f"{len(summary['discrepancies'])} discrepancies", file=sys.stderr)
    return EXIT_DISCREPANCY if summary["discrepancies"] else EXIT_OK


def cmd_census(args) -> int:
    try:
        report = _report(args)
    except (OSError, CP2KitError) as exc:
        return _fail(str(exc))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CENSUS_COLUMNS)
    writer.writerows(census_rows(report))
    _write(buf.getvalue(), args.out)
    return EXIT_DISCREPANCY if report["summary"]["discrepancies"] else EXIT_OK


def cmd_corpus_list(args) -> int:
    try:
        descriptors = load_manifest(args.manifest)
    except (OSError, CP2KitError) as exc:
        return _fail(str(exc))
    if args.json:
        sys.stdout.write(json.dumps([d.to_json() for d in descriptors], indent=1) + "\n")
    else:
        for i, d in enumerate(descriptors):
            print(f"{i:4d}  {d.label()}")
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cp2kit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one group from a Cayley or permutation JSON file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_analyze)

    def corpus_flags(sp, out_help):
        sp.add_argument("--manifest", default=None, help="manifest JSON (default: bundled corpus)")
        sp.add_argument("--out", default=None, help=out_help)
        sp.add_argument("--jobs", type=_positive, default=1)
        sp.add_argument("--max-order", type=_positive, default=None,
                        help="largest group order accepted (default: $CP2KIT_MAX_ORDER or 512)")

    p = sub.add_parser("verify-corpus", help="run every check over a manifest and write a JSON report")
    corpus_flags(p, "report path (default: stdout)")
    p.add_argument("--timings", action="store_true",
                   help="add per-group timingMs (makes the report run-dependent)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="CSV table of class memberships")
    corpus_flags(p, "CSV path (default: stdout)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("corpus", help="manifest utilities")
    csub = p.add_subparsers(dest="corpus_command", required=True)
    lp = csub.add_parser("list", help="print the manifest")
    lp.add_argument("--manifest", default=None)
    lp.add_argument("--json", action="store_true")
    lp.set_defaults(func=cmd_corpus_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
