"""Invariant tuples of an adjoint chain, the one-step recurrence, adjoint
states and rule validation.

A chain position ``i`` is tracked by five integers::

    alpha = D_i^2     beta = D_i K_i     gamma = K_i^2
    h = alpha - beta  n = curves contracted on the way to position i+1

All arithmetic is on Python ints, so nothing overflows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError, InvalidState, OddSum


class AdjointState(enum.IntEnum):
    S1 = 1  # gamma < 0, beta >= 0
    S2 = 2  # gamma < 0, beta < 0
    S3 = 3  # gamma = 0, beta < 0
    S4 = 4  # gamma > 0, beta < 0

    def __str__(self):
        return self.name


def classify_state(gamma: int, beta: int) -> AdjointState:
    if gamma < 0:
        return AdjointState.S1 if beta >= 0 else AdjointState.S2
    if beta >= 0:
        raise InvalidState(f"no adjoint state has gamma={gamma} and beta={beta} >= 0")
    return AdjointState.S3 if gamma == 0 else AdjointState.S4


def state_or_none(gamma: int, beta: int) -> AdjointState | None:
    """Like :func:`classify_state` but returns ``None`` for excluded patterns."""
    if gamma >= 0 and beta >= 0:
        return None
    return classify_state(gamma, beta)


@dataclass(frozen=True)
class StepInvariants:
    alpha: int
    beta: int
    gamma: int
    h: int = None  # type: ignore[assignment]
    n: int = 0

    def __post_init__(self):
        if self.h is None:
            object.__setattr__(self, "h", self.alpha - self.beta)
        elif self.h != self.alpha - self.beta:
            raise DomainError(f"h={self.h} differs from alpha-beta={self.alpha - self.beta}")
        if self.n < 0:
            raise DomainError(f"contraction count n={self.n} is negative")

    @property
    def state(self) -> AdjointState:
        return classify_state(self.gamma, self.beta)

    def with_n(self, n: int) -> "StepInvariants":
        return replace(self, n=n)

    def to_dict(self) -> dict:
        return {"n": self.n, "gamma": self.gamma, "beta": self.beta, "h": self.h, "alpha": self.alpha}

    @classmethod
    def from_dict(cls, d: dict) -> "StepInvariants":
        return cls(alpha=int(d["alpha"]), beta=int(d["beta"]), gamma=int(d["gamma"]),
                   h=int(d["h"]) if "h" in d else None, n=int(d.get("n", 0)))


def advance(cur: StepInvariants) -> StepInvariants:
    """Invariants one adjoint relation further along; ``cur.n`` curves are contracted."""
    nxt = StepInvariants(
        alpha=cur.alpha + 2 * cur.beta + cur.gamma,
        beta=cur.beta + cur.gamma,
        gamma=cur.gamma + cur.n,
    )
    assert nxt.h == cur.h + 2 * cur.beta
    return nxt


def roll_forward(start: StepInvariants, n: Sequence[int]) -> list[StepInvariants]:
    """Apply :func:`advance` ``len(n)`` times, recording ``n[i]`` on step ``i``.

    ``start.n`` is ignored. The last step gets ``n = 0``.
    """
    steps = []
    cur = start
    for ni in n:
        cur = cur.with_n(ni)
        steps.append(cur)
        cur = advance(cur)
    steps.append(cur.with_n(0))
    return steps


@dataclass(frozen=True)
class AdjointChain:
    steps: tuple[StepInvariants, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise DomainError("an adjoint chain has at least one step")
        last = self.steps[-1]
        if last.n != 0:
            object.__setattr__(self, "steps", self.steps[:-1] + (last.with_n(0),))

    @property
    def level(self) -> int:
        return len(self.steps) - 1

    @property
    def contractions(self) -> list[int]:
        return [s.n for s in self.steps[:-1]]

    @property
    def start(self) -> StepInvariants:
        return self.steps[0]

    @property
    def end(self) -> StepInvariants:
        return self.steps[-1]

    def states(self) -> list[AdjointState]:
        return [s.state for s in self.steps]

    def to_dict(self) -> dict:
        return {"p": self.p, "steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, d: dict) -> "AdjointChain":
        return cls(steps=tuple(StepInvariants.from_dict(s) for s in d["steps"]), p=int(d["p"]))

    @classmethod
    def from_start(cls, start: StepInvariants, n: Sequence[int], p: int) -> "AdjointChain":
        return cls(steps=tuple(roll_forward(start, n)), p=p)

    def key(self) -> tuple:
        """Canonical ordering key (used for deterministic output)."""
        return (self.p, tuple((s.h, s.beta, s.gamma, s.n) for s in self.steps))


class Violation(NamedTuple):
    rule: str  # H, B, G, Z, S, P or PARITY
    index: int
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[tuple[str, int]]:
        return {(v.rule, v.index) for v in self.violations}

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{v.rule}@{v.index}: {v.message}" for v in self.violations)


def end_condition_holds(gamma_l: int, p: int) -> bool:
    """Rule P for the final step."""
    if p > 0:
        return False
    if p == 0:
        return gamma_l > 0
    return gamma_l == 8 * (p + 1)


def validate_chain(chain: AdjointChain, strict_parity: bool = False) -> ValidationReport:
    report = ValidationReport()
    add = report.violations.append
    steps = chain.steps

    for i in range(len(steps) - 1):
        cur, nxt = steps[i], steps[i + 1]
        if nxt.h != cur.h + 2 * cur.beta:
            add(Violation("H", i + 1, f"h={nxt.h}, expected {cur.h + 2 * cur.beta}"))
        if nxt.beta != cur.beta + cur.gamma:
            add(Violation("B", i + 1, f"beta={nxt.beta}, expected {cur.beta + cur.gamma}"))
        if nxt.gamma != cur.gamma + cur.n:
            add(Violation("G", i + 1, f"gamma={nxt.gamma}, expected {cur.gamma + cur.n}"))

    for i, s in enumerate(steps[1:], start=1):
        if s.h < 2:
            add(Violation("Z", i, f"h={s.h} < 2"))

    prev = None
    for i, s in enumerate(steps):
        st = state_or_none(s.gamma, s.beta)
        if st is None:
            add(Violation("S", i, f"(gamma, beta)=({s.gamma}, {s.beta}) is not an adjoint state"))
            continue
        if prev is not None and st < prev:
            add(Violation("S", i, f"state {st} follows {prev}"))
        prev = st

    if chain.p > 0:
        add(Violation("P", chain.level, f"arithmetic genus p={chain.p} > 0"))
    elif not end_condition_holds(chain.end.gamma, chain.p):
        want = "gamma > 0" if chain.p == 0 else f"gamma = {8 * (chain.p + 1)}"
        add(Violation("P", chain.level, f"end gamma={chain.end.gamma}, need {want}"))

    if strict_parity:
        for i, s in enumerate(steps):
            if s.h % 2:
                add(Violation("PARITY", i, f"h={s.h} is odd"))
    return report


def genus_from_end(gamma_l: int) -> int:
    # ceil(gamma_l/8 - 1) == -((8 - gamma_l) // 8)
    return min(0, -((8 - gamma_l) // 8))


def sectional_genus(alpha0: int, beta0: int) -> int:
    """Arithmetic genus of a generic hyperplane section."""
    if (alpha0 + beta0) % 2:
        raise OddSum(f"alpha0 + beta0 = {alpha0 + beta0} is odd")
    return (alpha0 + beta0) // 2 + 1


def embedding_dim(alpha0: int, beta0: int, p: int) -> int:
    """Dimension ``n`` of the projective space holding the polarized model."""
    if (alpha0 - beta0) % 2:
        raise OddSum(f"alpha0 - beta0 = {alpha0 - beta0} is odd")
    return (alpha0 - beta0) // 2 + p


def chain_from_rows(rows: Iterable[Sequence[int]], p: int) -> AdjointChain:
    """Build a chain from ``(n, gamma, beta, h, alpha)`` rows, the table layout."""
    steps = [StepInvariants(alpha=a, beta=b, gamma=g, h=h, n=n) for n, g, b, h, a in rows]
    return AdjointChain(steps=tuple(steps), p=p)
