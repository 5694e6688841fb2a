#!/usr/bin/env python3
"""Emit slack tables for the known equality families.

Covers: the matching bound on odd complete graphs (k = n-1) and stars
(k = 1), and the cover conjecture on the split family S_{n,r}. Prints CSV
to stdout; pass --out to write files per table instead.
"""

import argparse
from pathlib import Path

from lapsum.harness import KRange, probe_table_csv, tightness_probe


def tables():
    yield (
        "matching_complete_odd",
        tightness_probe(
            [f"complete:{n}" for n in (3, 5, 7, 9)],
            "matching-thm",
        ),
    )
    yield (
        "matching_stars",
        tightness_probe(
            [f"star:{n}" for n in range(2, 11)],
            "matching-thm",
            KRange("list", (1,)),
        ),
    )
    yield (
        "conj_cover_split",
        tightness_probe(
            [f"split-s:{n},{r}" for n in range(2, 10) for r in range(1, n + 1)],
            "conj-cover",
        ),
    )


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", metavar="DIR", help="write one CSV per table here")
    args = ap.parse_args()
    for name, rows in tables():
        csv = probe_table_csv(rows)
        if args.out:
            path = Path(args.out) / f"{name}.csv"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(csv)
            print(f"wrote {path} ({len(rows)} rows)")
        else:
            print(f"# {name}")
            print(csv)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
