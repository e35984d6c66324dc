"""Brute-force ground truth.

Nothing here calls the closed-form bounds or the memoized longest-chain search
to decide anything; those are only compared against at the end. The search
space is bounded by explicit caps and hitting a cap is an error, not a silent
truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .adjoint_core import (
    AdjointChain,
    StepInvariants,
    end_condition_holds,
    state_or_none,
    validate_chain,
)
from .chain_builder import (
    EndPair,
    alpha0_from,
    beta0_from,
    construct_adjoint_chain,
    realize_chain,
)
from .errors import CapsExceeded, DomainError, Mismatch, NoValidChain, RuleViolation
from .level_bounds import max_level, theorem_bound


@dataclass(frozen=True)
class SearchCaps:
    max_l: int = 20
    max_n_per_step: int = 6
    max_abs_gamma0: int = 10

    def __post_init__(self):
        if min(self.max_l, self.max_n_per_step, self.max_abs_gamma0) <= 0:
            raise DomainError("search caps must be positive")

    @classmethod
    def parse(cls, text: str) -> "SearchCaps":
        """``"l,n,gamma"`` as given on the command line."""
        parts = [int(x) for x in text.split(",")]
        if len(parts) != 3:
            raise DomainError(f"caps need three integers l,n,gamma, got {text!r}")
        return cls(*parts)

    def as_list(self) -> list[int]:
        return [self.max_l, self.max_n_per_step, self.max_abs_gamma0]


def _initial_gammas(beta0: int, p: int, caps: SearchCaps) -> list[int]:
    top = min(8 * (p + 1), caps.max_abs_gamma0) if p < 0 else caps.max_abs_gamma0
    return [g for g in range(-caps.max_abs_gamma0, top + 1) if state_or_none(g, beta0) is not None]


def _successors(h: int, beta: int, gamma: int, p: int, caps: SearchCaps):
    """Every rule-respecting next position, as ``(n, (h', beta', gamma'))``.

    For ``p < 0`` positions with ``gamma > 8(p+1)`` are dropped: gamma never
    decreases, so no chain through them can meet the end rule.
    """
    h2, b2 = h + 2 * beta, beta + gamma
    if h2 < 2:
        return
    st = state_or_none(gamma, beta)
    top = caps.max_n_per_step if p >= 0 else min(caps.max_n_per_step, 8 * (p + 1) - gamma)
    for n in range(top + 1):
        st2 = state_or_none(gamma + n, b2)
        if st2 is not None and st2 >= st:
            yield n, (h2, b2, gamma + n)


def _make_chain(path: Sequence[tuple[int, int, int]], ns: Sequence[int], p: int) -> AdjointChain:
    steps = [StepInvariants(alpha=h + b, beta=b, gamma=g, h=h, n=n)
             for (h, b, g), n in zip(path, list(ns) + [0])]
    return AdjointChain(steps=tuple(steps), p=p)


def iter_chains(h0: int, beta0: int, p: int, caps: SearchCaps = SearchCaps()) -> Iterator[AdjointChain]:
    """Depth-first walk over every rule-valid chain within the caps."""
    if h0 < 2:
        raise DomainError(f"h0={h0} < 2")
    path: list[tuple[int, int, int]] = []
    ns: list[int] = []

    def walk():
        h, b, g = path[-1]
        if end_condition_holds(g, p):
            yield _make_chain(path, ns, p)
        succ = list(_successors(h, b, g, p, caps))
        if len(path) - 1 == caps.max_l:
            if succ:
                raise CapsExceeded(f"chains from h0={h0}, beta0={beta0} run past max_l={caps.max_l}")
            return
        for n, nxt in succ:
            path.append(nxt)
            ns.append(n)
            yield from walk()
            path.pop()
            ns.pop()

    for g0 in _initial_gammas(beta0, p, caps):
        path.append((h0, beta0, g0))
        yield from walk()
        path.pop()


def enumerate_chains(h0: int, beta0: int, p: int, caps: SearchCaps = SearchCaps()) -> list[AdjointChain]:
    return sorted(iter_chains(h0, beta0, p, caps), key=AdjointChain.key)


# -- tightness ----------------------------------------------------------------

def longest_by_layers(h0: int, beta0: int, p: int, caps: SearchCaps = SearchCaps()):
    """Exhaustive breadth-first reachability over distinct positions.

    Layer ``i`` holds every ``(h, beta, gamma)`` reachable by a rule-respecting
    prefix of length ``i``. Returns ``(max_length, witness, positions_seen)``;
    ``max_length`` is -1 and ``witness`` None when nothing satisfies the end rule.
    """
    if h0 < 2:
        raise DomainError(f"h0={h0} < 2")
    layer = {(h0, beta0, g): None for g in _initial_gammas(beta0, p, caps)}
    layers = [layer]
    best, best_pos, seen = -1, None, 0
    for depth in itertools.count():
        seen += len(layer)
        for pos in sorted(layer):
            if end_condition_holds(pos[2], p):
                best, best_pos = depth, pos
                break
        nxt: dict = {}
        for pos in sorted(layer):
            for n, q in _successors(*pos, p, caps):
                if q not in nxt:
                    nxt[q] = (pos, n)
        if not nxt:
            break
        if depth == caps.max_l:
            raise CapsExceeded(f"chains from h0={h0}, beta0={beta0} run past max_l={caps.max_l}")
        layers.append(nxt)
        layer = nxt
    if best_pos is None:
        return -1, None, seen
    path, ns = [best_pos], []
    for depth in range(best, 0, -1):
        prev, n = layers[depth][path[-1]]
        path.append(prev)
        ns.append(n)
    path.reverse()
    ns.reverse()
    return best, _make_chain(path, ns, p), seen


@dataclass
class TightnessReport:
    h0: int
    beta0: int
    p: int
    caps: SearchCaps
    max_found: int
    witness: Optional[AdjointChain]
    max_level: Optional[int]
    theorem_bound: Optional[int]
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "grid": {"h0": self.h0, "beta0": self.beta0, "p": self.p, "caps": self.caps.as_list()},
            "max_found": self.max_found,
            "max_level": self.max_level,
            "theorem_bound": self.theorem_bound,
            "witness": self.witness.to_dict() if self.witness else None,
            "mismatches": list(self.mismatches),
        }


def verify_tightness(h0: int, beta0: int, p: int, caps: SearchCaps = SearchCaps()) -> TightnessReport:
    """Compare the exhaustive maximum with :func:`max_level` and the closed-form bound."""
    found, witness, _ = longest_by_layers(h0, beta0, p, caps)
    try:
        exact = max_level(h0, beta0, p)
    except NoValidChain:
        exact = None
    alpha0 = h0 + beta0
    try:
        bound = theorem_bound(alpha0, beta0, p)
    except DomainError:
        bound = None

    report = TightnessReport(h0, beta0, p, caps, found, witness, exact, bound)
    problems = report.mismatches
    if witness is not None:
        check = validate_chain(witness)
        if not check.ok:
            problems.append(f"witness fails validation: {check.summary()}")
        if witness.level != found:
            problems.append("witness length differs from the reported maximum")
    if (exact if exact is not None else -1) != found:
        problems.append(f"exhaustive max {found} != max_level {exact}")
    if bound is not None and found > bound:
        problems.append(f"exhaustive max {found} exceeds theorem bound {bound}")
    return report


# -- algorithm optimality ------------------------------------------------------

def iter_contraction_vectors(l: int, budget: int) -> Iterator[list[int]]:
    """All ``n`` of length ``l`` with ``sum((i+1)^2 n[i]) == budget``."""
    if budget < 0:
        return

    def rec(i, rest):
        if i < 0:
            if rest == 0:
                yield []
            return
        w = (i + 1) ** 2
        for x in range(rest // w + 1):
            for tail in rec(i - 1, rest - x * w):
                yield tail + [x]

    yield from rec(l - 1, budget)


def objective(n: Sequence[int]) -> tuple[int, int]:
    """Sort key: fewer contractions first, then larger ``sum((i+1) n[i])``."""
    return (sum(n), -sum((i + 1) * x for i, x in enumerate(n)))


class _ExactBudgetTable:
    """Best :func:`objective` over all vectors spending an exact budget.

    Unbounded knapsack over weights ``(i+1)^2``; grows on demand and is shared
    across calls with the same level.
    """

    def __init__(self, l: int):
        self.l = l
        self.best: list[Optional[tuple[int, int]]] = [(0, 0)]
        self.choice: list[int] = [-1]

    def _grow(self, budget: int):
        for b in range(len(self.best), budget + 1):
            top, arg = None, -1
            for i in range(self.l):
                w = (i + 1) ** 2
                if w > b or self.best[b - w] is None:
                    continue
                cnt, neg = self.best[b - w]
                cand = (cnt + 1, neg - (i + 1))
                if top is None or cand < top:
                    top, arg = cand, i
            self.best.append(top)
            self.choice.append(arg)

    def vector(self, budget: int) -> Optional[list[int]]:
        if budget < 0:
            return None
        self._grow(budget)
        if self.best[budget] is None:
            return None
        n = [0] * self.l
        b = budget
        while b > 0:
            i = self.choice[b]
            n[i] += 1
            b -= (i + 1) ** 2
        return n


_TABLES: dict[int, _ExactBudgetTable] = {}


def best_contraction_vector(l: int, budget: int) -> Optional[list[int]]:
    table = _TABLES.get(l)
    if table is None:
        table = _TABLES[l] = _ExactBudgetTable(l)
    return table.vector(budget)


@dataclass
class OptimalityReport:
    l: int
    end: EndPair
    c: int
    algorithm: Optional[list[int]]
    best: Optional[list[int]]
    algorithm_valid: Optional[bool]
    best_valid: Optional[bool] = None
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def raise_for_mismatch(self):
        if self.mismatches:
            raise Mismatch("; ".join(self.mismatches), expected=self.best, found=self.algorithm)

    def to_dict(self) -> dict:
        return {
            "grid": {"l": self.l, "alpha_l": self.end.alpha_l, "beta_l": self.end.beta_l,
                     "gamma_l": self.end.gamma_l, "c": self.c},
            "algorithm": self.algorithm,
            "best": self.best,
            "algorithm_key": list(objective(self.algorithm)) if self.algorithm is not None else None,
            "best_key": list(objective(self.best)) if self.best is not None else None,
            "algorithm_valid": self.algorithm_valid,
            "best_valid": self.best_valid,
            "mismatches": list(self.mismatches),
        }


def _realizes(l: int, end: EndPair, n: Optional[list[int]]) -> Optional[bool]:
    if n is None:
        return None
    try:
        realize_chain(l, end, n)
    except RuleViolation:
        return False
    return True


def verify_algorithm_optimality(l: int, end: EndPair, c: int,
                                caps: SearchCaps = SearchCaps()) -> OptimalityReport:
    """Check the greedy output against the exact optimum over all vectors with ``alpha0 == c``.

    Optimum means fewest total contractions, then the largest weighted sum
    ``sum((i+1) n[i])`` (equivalently the largest ``beta0``). The comparison
    set is every nonnegative vector with ``alpha0 == c``; it is finite, so no
    per-step cap applies. ``best_valid`` records whether the optimum also
    realizes to a rule-valid chain.
    """
    if l > caps.max_l:
        raise CapsExceeded(f"level {l} exceeds max_l={caps.max_l}")
    algo = construct_adjoint_chain(l, end, c)
    budget = alpha0_from(l, end, [0] * l) - c
    best = best_contraction_vector(l, budget)
    report = OptimalityReport(l, end, c, algo, best, _realizes(l, end, algo), _realizes(l, end, best))
    problems = report.mismatches
    if best is None and algo is not None:
        problems.append("algorithm returned a vector although no vector reaches alpha0 = c")
    elif best is not None and algo is None:
        problems.append("algorithm returned None although a vector with alpha0 = c exists")
    elif algo is not None:
        if alpha0_from(l, end, algo) != c:
            problems.append(f"algorithm output has alpha0 = {alpha0_from(l, end, algo)} != c")
        if objective(algo) != objective(best):
            problems.append(
                f"algorithm {algo} scores (sum n, beta0) = ({sum(algo)}, {beta0_from(l, end, algo)}); "
                f"{best} scores ({sum(best)}, {beta0_from(l, end, best)})")
    return report
