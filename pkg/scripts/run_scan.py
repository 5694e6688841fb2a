#!/usr/bin/env python3
"""Run a bound scan and write the JSON report.

Examples:
    python3 scripts/run_scan.py --all-labeled 6 --bounds theorem --out report.json
    python3 scripts/run_scan.py --gnp 30 0.5 100 7 --bounds brouwer,bai --jobs 4
"""

import argparse
import sys

from lapsum.bounds import BOUND_TAGS, CONJECTURE_TAGS, THEOREM_TAGS
from lapsum.graphs import GraphSource
from lapsum.harness import parse_krange, scan


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--all-labeled", type=int, metavar="N")
    src.add_argument("--graph6-file", metavar="PATH")
    src.add_argument("--gnp", nargs=4, metavar=("N", "P", "COUNT", "SEED"))
    ap.add_argument(
        "--bounds",
        default="theorem",
        help="comma list of bound ids, or 'theorem' / 'conjecture' / 'all'",
    )
    ap.add_argument("--k", default="all")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", metavar="PATH")
    args = ap.parse_args()

    named = {"theorem": THEOREM_TAGS, "conjecture": CONJECTURE_TAGS, "all": BOUND_TAGS}
    bounds = list(named.get(args.bounds, ())) or [
        b.strip() for b in args.bounds.split(",")
    ]
    if args.all_labeled is not None:
        source = GraphSource("all-labeled", n=args.all_labeled)
    elif args.graph6_file is not None:
        source = GraphSource("graph6-file", path=args.graph6_file)
    else:
        n, p, count, seed = args.gnp
        source = GraphSource(
            "gnp", n=int(n), p=float(p), count=int(count), seed=int(seed)
        )

    report = scan(source, bounds, parse_krange(args.k), jobs=args.jobs)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(
        f"{report.graphs} graphs, {report.checks} checks, "
        f"{report.violation_count} violations, {report.runtime_ms} ms",
        file=sys.stderr,
    )
    return 1 if report.violation_count else 0


if __name__ == "__main__":
    raise SystemExit(main())
