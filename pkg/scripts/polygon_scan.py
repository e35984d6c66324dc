"""Scan every lattice polygon class in a box and check the polygon inequality."""

import argparse
import collections
import csv
import sys
import time

from adjoint_chains.polygon_lab import ScanRow, scan_polygons


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--box", type=int, default=6)
    ap.add_argument("--min-level", type=int, default=0)
    ap.add_argument("--out", default=None, help="CSV file for all rows")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    rows = scan_polygons(args.box, args.min_level)
    dt = time.perf_counter() - t0
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ScanRow.CSV_FIELDS)
            w.writerows(r.csv_row() for r in rows)

    by_level = collections.Counter(r.level for r in rows)
    failures = [r for r in rows if r.in_range and not r.passed]
    tightest = min((r for r in rows if r.in_range), key=lambda r: r.lhs - r.rhs, default=None)
    print(f"box {args.box}: {len(rows)} classes in {dt:.1f}s, by level {dict(sorted(by_level.items()))}")
    print(f"level >= 1 failures: {len(failures)}; Pick failures: {sum(not r.pick_ok for r in rows)}")
    if tightest is not None:
        print(f"smallest margin lhs - rhs = {tightest.lhs - tightest.rhs} at {list(tightest.vertices)}")
    return 3 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
