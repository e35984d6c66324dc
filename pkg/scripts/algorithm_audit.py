"""Audit the greedy construction against the exact optimum on a grid of instances.

For each level, end profile and target ``c`` the greedy vector is compared with
the vector that spends the same budget with the fewest contractions (ties:
largest beta0). Prints a summary and the first few counterexamples.
"""

import argparse
import collections
import json
import sys
import time

from adjoint_chains.chain_builder import end_profiles
from adjoint_chains.oracle import verify_algorithm_optimality


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--l-max", type=int, default=10)
    ap.add_argument("--c-max", type=int, default=80)
    ap.add_argument("--max-keel", type=int, default=5)
    ap.add_argument("--show", type=int, default=5)
    ap.add_argument("--json", default=None, help="write every mismatch report here")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    stats = collections.Counter()
    bad = []
    for l in range(1, args.l_max + 1):
        for end in end_profiles(9, args.max_keel):
            for c in range(1, args.c_max + 1):
                r = verify_algorithm_optimality(l, end, c)
                stats["instances"] += 1
                stats["infeasible"] += r.algorithm is None
                stats["greedy_breaks_rule"] += r.algorithm_valid is False
                if not r.ok:
                    stats["mismatch"] += 1
                    stats["mismatch_with_valid_better"] += bool(r.best_valid)
                    bad.append(r)
    print(f"{dict(stats)} in {time.perf_counter() - t0:.1f}s")
    for r in bad[:args.show]:
        print(json.dumps(r.to_dict()))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_dict() for r in bad], fh, indent=1)
    return 3 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
