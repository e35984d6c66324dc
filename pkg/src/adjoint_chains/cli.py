"""Command line front end.

Exit codes: 0 success, 1 bad input, 2 infeasible or no result, 3 an internal
check or a golden comparison failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .adjoint_core import (
    AdjointChain,
    classify_state,
    embedding_dim,
    genus_from_end,
    sectional_genus,
    validate_chain,
)
from .chain_builder import (
    EndPair,
    classify_end_pair,
    construct_adjoint_chain,
    identity_sides,
    realize_chain,
)
from .errors import AdjointChainError, DomainError, Mismatch, NoValidChain, RuleViolation
from .level_bounds import family_degree_bound, longest_chain, theorem_bound
from .oracle import SearchCaps, verify_algorithm_optimality, verify_tightness
from . import polygon_lab as pl
from . import tables


class _Parser(argparse.ArgumentParser):
    """Usage errors count as bad input (exit 1) like every other domain error."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    if text.strip() == "":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _caps(text: str) -> SearchCaps:
    try:
        return SearchCaps.parse(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "markdown"], default=None,
                        help="output format (default depends on the command)")
    common.add_argument("--strict-parity", action="store_true",
                        help="also require every h(i) to be even")
    common.add_argument("--caps", type=_caps, default=SearchCaps(),
                        help="exhaustive search caps as l,n,gamma (default 20,6,10)")
    common.add_argument("--out", default=None, help="write output to this file")

    p = _Parser(prog="adjoint-chains", description="Integer invariants of adjoint chains.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("table", parents=[common], help="regenerate a worked example table")
    s.add_argument("id", type=int, choices=[1, 2, 3, 4])

    s = sub.add_parser("bound", parents=[common], help="level and family degree bounds")
    for name in ("alpha0", "beta0", "p"):
        s.add_argument(name, type=int)

    s = sub.add_parser("max-level", parents=[common], help="exact maximum level with a witness")
    for name in ("h0", "beta0", "p"):
        s.add_argument(name, type=int)

    s = sub.add_parser("construct", parents=[common], help="greedy contraction vector")
    for name in ("l", "alpha_l", "beta_l", "gamma_l", "c"):
        s.add_argument(name, type=int)

    s = sub.add_parser("realize", parents=[common], help="chain from a contraction vector")
    for name in ("l", "alpha_l", "beta_l", "gamma_l"):
        s.add_argument(name, type=int)
    s.add_argument("n", type=_int_list, help="contraction vector, comma separated")

    s = sub.add_parser("validate", parents=[common], help="check a chain given as JSON")
    s.add_argument("path", help="JSON file with {p, steps}, or - for stdin")

    s = sub.add_parser("classify", parents=[common], help="minimal pair type and keel of an end pair")
    for name in ("alpha_l", "beta_l", "gamma_l"):
        s.add_argument(name, type=int)

    s = sub.add_parser("state", parents=[common], help="adjoint state of (gamma, beta)")
    s.add_argument("gamma", type=int)
    s.add_argument("beta", type=int)

    s = sub.add_parser("tightness", parents=[common], help="exhaustive maximum vs exact and closed form")
    for name in ("h0", "beta0", "p"):
        s.add_argument(name, type=int)

    s = sub.add_parser("optimality", parents=[common], help="greedy vector vs the exact optimum")
    for name in ("l", "alpha_l", "beta_l", "gamma_l", "c"):
        s.add_argument(name, type=int)

    s = sub.add_parser("polygon", parents=[common], help="lattice polygon invariants")
    psub = s.add_subparsers(dest="polygon_command", required=True, parser_class=_Parser)
    for name in ("area", "boundary", "adjoint", "level", "check", "invariants"):
        q = psub.add_parser(name, parents=[common])
        q.add_argument("vertices", nargs="+", help="vertices as x,y")
    q = psub.add_parser("scan", parents=[common], help="exhaustive inequality scan as CSV")
    q.add_argument("--box", type=int, default=4)
    q.add_argument("--min-level", type=int, default=1)
    return p


# -- rendering -----------------------------------------------------------------

def _render(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2) + "\n"
    if isinstance(obj, dict):
        items = [(k, json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in obj.items()]
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow([k for k, _ in items])
            w.writerow(["" if v is None else v for _, v in items])
            return buf.getvalue()
        lines = ["| key | value |", "|---|---|"]
        lines += [f"| {k} | {'' if v is None else v} |" for k, v in items]
        return "\n".join(lines) + "\n"
    return f"{obj}\n"


def _chain_output(chain: AdjointChain, fmt: str, extra: Optional[dict] = None) -> str:
    if fmt == "json":
        d = dict(extra or {})
        d["chain"] = chain.to_dict()
        return json.dumps(d, indent=2) + "\n"
    rows = tables.chain_rows(chain, with_levels=False)
    if fmt == "csv":
        return tables.render_csv(rows)
    return tables.render_markdown(rows)


# -- commands ------------------------------------------------------------------

def cmd_table(args) -> tuple[str, int]:
    gen = tables.generate_table(args.id, strict_parity=args.strict_parity)
    fmt = args.format or "markdown"
    gold = tables.GOLDEN[args.id]
    if fmt == "markdown":
        text = tables.render_markdown(gen.rows, f"Table {args.id} ({gold.title})")
    elif fmt == "csv":
        text = tables.render_csv(gen.rows)
    else:
        text = _render({"table": args.id, "rows": gen.rows,
                        "diffs": [list(d) for d in gen.diffs]}, "json")
    if gen.diffs:
        for name, i, want, got in gen.diffs:
            print(f"table {args.id}: {name}({i}) is {got}, golden copy has {want}", file=sys.stderr)
        return text, 3
    return text, 0


def cmd_bound(args) -> tuple[str, int]:
    bound = theorem_bound(args.alpha0, args.beta0, args.p)
    h0 = args.alpha0 - args.beta0
    try:
        exact = longest_chain(h0, args.beta0, args.p).level
    except NoValidChain:
        exact = None
    out = {
        "alpha0": args.alpha0, "beta0": args.beta0, "p": args.p,
        "theorem_bound": bound,
        "family_degree_bound": family_degree_bound(bound, args.p),
        "max_level": exact,
        "family_degree_bound_max_level": family_degree_bound(exact, args.p) if exact is not None else None,
    }
    return _render(out, args.format or "json"), 0


def cmd_max_level(args) -> tuple[str, int]:
    chain = longest_chain(args.h0, args.beta0, args.p)
    return _chain_output(chain, args.format or "json", {"max_level": chain.level}), 0


def cmd_construct(args) -> tuple[str, int]:
    end = EndPair(args.alpha_l, args.beta_l, args.gamma_l)
    n = construct_adjoint_chain(args.l, end, args.c)
    if n is None:
        raise NoValidChain(f"no contraction vector reaches alpha0 >= {args.c}")
    fmt = args.format or "json"
    if fmt == "json":
        return json.dumps({"l": args.l, "end": list(end.as_tuple()), "c": args.c, "n": n}) + "\n", 0
    return _render({"n": ",".join(map(str, n))}, fmt), 0


def cmd_realize(args) -> tuple[str, int]:
    end = EndPair(args.alpha_l, args.beta_l, args.gamma_l)
    chain = realize_chain(args.l, end, args.n, strict_parity=args.strict_parity)
    lhs, rhs = identity_sides(chain)
    return _chain_output(chain, args.format or "json", {"identity": [lhs, rhs]}), 0


def cmd_validate(args) -> tuple[str, int]:
    raw = sys.stdin.read() if args.path == "-" else open(args.path, encoding="utf-8").read()
    try:
        chain = AdjointChain.from_dict(json.loads(raw))
    except (ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"malformed chain JSON: {exc}") from exc
    report = validate_chain(chain, strict_parity=args.strict_parity)
    out = {"ok": report.ok, "violations": [v._asdict() for v in report.violations]}
    if report.ok:
        s = chain.start
        out["level"] = chain.level
        try:
            out["sectional_genus"] = sectional_genus(s.alpha, s.beta)
            out["embedding_dim"] = embedding_dim(s.alpha, s.beta, chain.p)
        except DomainError:
            pass
    return _render(out, args.format or "json"), 0 if report.ok else RuleViolation.exit_code


def cmd_classify(args) -> tuple[str, int]:
    end = EndPair(args.alpha_l, args.beta_l, args.gamma_l)
    kind = classify_end_pair(end)
    out = {"kind": kind.kind, "p": kind.p, "lambda": str(kind.lam) if kind.lam is not None else None,
           "variant": kind.variant, "keel": kind.keel, "genus_from_end": genus_from_end(end.gamma_l)}
    return _render(out, args.format or "json"), 0


def cmd_state(args) -> tuple[str, int]:
    state = classify_state(args.gamma, args.beta)
    if args.format == "json":
        return _render({"gamma": args.gamma, "beta": args.beta, "state": str(state)}, "json"), 0
    return f"{state}\n", 0


def cmd_tightness(args) -> tuple[str, int]:
    report = verify_tightness(args.h0, args.beta0, args.p, args.caps)
    return _render(report.to_dict(), args.format or "json"), 0 if report.ok else Mismatch.exit_code


def cmd_optimality(args) -> tuple[str, int]:
    end = EndPair(args.alpha_l, args.beta_l, args.gamma_l)
    report = verify_algorithm_optimality(args.l, end, args.c, args.caps)
    return _render(report.to_dict(), args.format or "json"), 0 if report.ok else Mismatch.exit_code


def cmd_polygon(args) -> tuple[str, int]:
    fmt = args.format
    if args.polygon_command == "scan":
        rows = pl.scan_polygons(args.box, args.min_level)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(pl.ScanRow.CSV_FIELDS)
        for r in rows:
            w.writerow(r.csv_row())
        code = 3 if any(r.in_range and not (r.passed and r.pick_ok) for r in rows) else 0
        if fmt == "json":
            records = [dict(zip(pl.ScanRow.CSV_FIELDS, r.csv_row())) for r in rows]
            return json.dumps(records, indent=2) + "\n", code
        return buf.getvalue(), code

    P = pl.parse_vertices(args.vertices)
    cmd = args.polygon_command
    if cmd == "area":
        return _render(pl.area2(P), "text"), 0
    if cmd == "boundary":
        return _render(pl.boundary_points(P), "text"), 0
    if cmd == "level":
        return _render(pl.level(P), "text"), 0
    if cmd == "adjoint":
        return _render(pl.adjoint(P).to_dict(), fmt or "json"), 0
    if cmd == "invariants":
        return _render(pl.surface_invariants(P).to_dict(), fmt or "json"), 0
    rep = pl.check_inequalities(P)
    if fmt in (None, "json"):
        text = json.dumps(rep.to_dict(), indent=2) + "\n"
    else:
        flat = {"area2": rep.area2, "b": rep.b, "v": rep.v, "level": rep.level,
                "lhs": rep.corollary_lhs, "rhs": rep.corollary_rhs, "pass": rep.corollary_pass,
                "weak_pass": rep.weak_pass, "in_range": rep.in_range}
        text = _render(flat, fmt)
    failed = rep.in_range and not (rep.corollary_pass and rep.weak_pass)
    return text, 3 if failed else 0


COMMANDS = {
    "table": cmd_table,
    "bound": cmd_bound,
    "max-level": cmd_max_level,
    "construct": cmd_construct,
    "realize": cmd_realize,
    "validate": cmd_validate,
    "classify": cmd_classify,
    "state": cmd_state,
    "tightness": cmd_tightness,
    "optimality": cmd_optimality,
    "polygon": cmd_polygon,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except AdjointChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
