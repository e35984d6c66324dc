"""Regenerate the four worked example tables and diff them against the golden copies."""

import argparse
import sys

from adjoint_chains.tables import GOLDEN, generate_table, render_csv, render_markdown


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    ap.add_argument("--strict-parity", action="store_true")
    args = ap.parse_args(argv)

    total_diffs = 0
    for tid in sorted(GOLDEN):
        gen = generate_table(tid, strict_parity=args.strict_parity)
        title = f"Table {tid} ({GOLDEN[tid].title})"
        if args.format == "markdown":
            print(render_markdown(gen.rows, title))
        else:
            print(f"# {title}")
            print(render_csv(gen.rows))
        for name, i, want, got in gen.diffs:
            print(f"  diff: {name}({i}) generated {got}, golden {want}")
        total_diffs += len(gen.diffs)
    print(f"{total_diffs} differing entries", file=sys.stderr)
    return 3 if total_diffs else 0


if __name__ == "__main__":
    sys.exit(main())
