"""The four worked example tables: inputs, golden values and rendering.

Each table is regenerated by running the greedy construction on its inputs,
realizing the chain and computing the exact maximum level at every row. The
golden values are transcribed by hand and only used for comparison.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .adjoint_core import AdjointChain
from .chain_builder import EndPair, construct_adjoint_chain, realize_chain
from .errors import DomainError, NoValidChain
from .level_bounds import max_level

ROW_NAMES = ("n", "gamma", "beta", "h", "alpha", "l_tilde")
ROW_LABELS = {"n": "n", "gamma": "γ", "beta": "β", "h": "h", "alpha": "α", "l_tilde": "l̃"}


@dataclass(frozen=True)
class TableInput:
    l: int
    end: EndPair
    c: int


@dataclass(frozen=True)
class GoldenTable:
    title: str
    inputs: TableInput
    rows: dict  # row name -> list; n has one entry fewer than the others


GOLDEN: dict[int, GoldenTable] = {
    1: GoldenTable(
        "arithmetic genus 0 and 3 adjoint states",
        TableInput(8, EndPair(1, -1, 1), 8),
        {
            "n": [0, 0, 1, 0, 0, 0, 0, 1],
            "gamma": [-1, -1, -1, 0, 0, 0, 0, 0, 1],
            "beta": [2, 1, 0, -1, -1, -1, -1, -1, -1],
            "h": [6, 10, 12, 12, 10, 8, 6, 4, 2],
            "alpha": [8, 11, 12, 11, 9, 7, 5, 3, 1],
            "l_tilde": [8, 7, 6, 5, 4, 3, 2, 1, 0],
        },
    ),
    2: GoldenTable(
        "arithmetic genus 0 and 4 adjoint states",
        TableInput(12, EndPair(3, -3, 3), 11),
        {
            "n": [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 3],
            "gamma": [-1, -1, -1, -1, -1, -1, -1, -1, 0, 0, 0, 0, 3],
            "beta": [5, 4, 3, 2, 1, 0, -1, -2, -3, -3, -3, -3, -3],
            "h": [6, 16, 24, 30, 34, 36, 36, 34, 30, 24, 18, 12, 6],
            "alpha": [11, 20, 27, 32, 35, 36, 35, 32, 27, 21, 15, 9, 3],
            "l_tilde": [23, 22, 21, 20, 19, 18, 17, 8, 4, 3, 2, 1, 0],
        },
    ),
    3: GoldenTable(
        "arithmetic genus -1 and 2 adjoint states",
        TableInput(8, EndPair(1, -1, 0), 8),
        {
            "n": [0, 0, 1, 0, 0, 0, 0, 0],
            "gamma": [-1, -1, -1, 0, 0, 0, 0, 0, 0],
            "beta": [2, 1, 0, -1, -1, -1, -1, -1, -1],
            "h": [6, 10, 12, 12, 10, 8, 6, 4, 2],
            "alpha": [8, 11, 12, 11, 9, 7, 5, 3, 1],
            "l_tilde": [8, 7, 6, 5, 4, 3, 2, 1, 0],
        },
    ),
    4: GoldenTable(
        "arithmetic genus -2 and 2 adjoint states",
        TableInput(9, EndPair(0, -40, -8), 72),
        {
            "n": [0, 0, 0, 0, 0, 0, 0, 0, 0],
            "gamma": [-8] * 10,
            "beta": [32, 24, 16, 8, 0, -8, -16, -24, -32, -40],
            "h": [40, 104, 152, 184, 200, 200, 184, 152, 104, 40],
            "alpha": [72, 128, 168, 192, 200, 192, 168, 128, 72, 0],
            "l_tilde": [9, 8, 7, 6, 5, 4, 3, 2, 1, 0],
        },
    ),
}


@dataclass
class GeneratedTable:
    table_id: int
    chain: AdjointChain
    rows: dict
    diffs: list = field(default_factory=list)  # (row, i, golden, generated)

    @property
    def matches(self) -> bool:
        return not self.diffs


def chain_rows(chain: AdjointChain, with_levels: bool = True) -> dict:
    rows = {
        "n": chain.contractions,
        "gamma": [s.gamma for s in chain.steps],
        "beta": [s.beta for s in chain.steps],
        "h": [s.h for s in chain.steps],
        "alpha": [s.alpha for s in chain.steps],
    }
    if with_levels:
        lt = []
        for s in chain.steps:
            try:
                lt.append(max_level(s.h, s.beta, chain.p))
            except (DomainError, NoValidChain):
                lt.append(None)
        rows["l_tilde"] = lt
    return rows


def generate_table(table_id: int, strict_parity: bool = False) -> GeneratedTable:
    if table_id not in GOLDEN:
        raise DomainError(f"table id must be 1..4, got {table_id}")
    gold = GOLDEN[table_id]
    inp = gold.inputs
    n = construct_adjoint_chain(inp.l, inp.end, inp.c)
    if n is None:
        raise NoValidChain(f"construction returned None for table {table_id}")
    chain = realize_chain(inp.l, inp.end, n, strict_parity=strict_parity)
    rows = chain_rows(chain)
    diffs = []
    for name in ROW_NAMES:
        got, want = rows[name], gold.rows[name]
        for i in range(max(len(got), len(want))):
            g = got[i] if i < len(got) else None
            w = want[i] if i < len(want) else None
            if g != w:
                diffs.append((name, i, w, g))
    return GeneratedTable(table_id, chain, rows, diffs)


def _cells(rows: dict, width: int):
    for name in ROW_NAMES:
        if name not in rows:
            continue
        vals = list(rows[name]) + [""] * (width - len(rows[name]))
        yield name, ["" if v is None else str(v) for v in vals]


def render_markdown(rows: dict, title: str = "") -> str:
    width = len(rows["gamma"])
    out = []
    if title:
        out.append(f"**{title}**")
        out.append("")
    out.append("| i | " + " | ".join(str(i) for i in range(width)) + " |")
    out.append("|---" * (width + 1) + "|")
    for name, cells in _cells(rows, width):
        out.append(f"| {ROW_LABELS[name]} | " + " | ".join(cells) + " |")
    return "\n".join(out) + "\n"


def render_csv(rows: dict) -> str:
    width = len(rows["gamma"])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row"] + list(range(width)))
    for name, cells in _cells(rows, width):
        w.writerow([name] + cells)
    return buf.getvalue()


def golden_markdown(table_id: int) -> str:
    gold = GOLDEN[table_id]
    return render_markdown(gold.rows, f"Table {table_id} ({gold.title})")
