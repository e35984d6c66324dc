"""Building chains backwards from their minimal end.

The start invariants of a chain are closed-form in the level ``l``, the end
invariants and the contraction vector ``n``. On top of that sit the greedy
construction algorithm, realization of its output as a validated chain,
classification of the end pair and the keel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .adjoint_core import (
    AdjointChain,
    StepInvariants,
    genus_from_end,
    roll_forward,
    validate_chain,
)
from .errors import DomainError, EndMismatch, LengthMismatch, RuleViolation, Unclassifiable


@dataclass(frozen=True)
class EndPair:
    alpha_l: int
    beta_l: int
    gamma_l: int

    @property
    def p(self) -> int:
        return genus_from_end(self.gamma_l)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.alpha_l, self.beta_l, self.gamma_l)


def _check_len(l: int, n: Sequence[int]):
    if len(n) != l:
        raise LengthMismatch(f"contraction vector has {len(n)} entries, level is {l}")
    if any(x < 0 for x in n):
        raise DomainError("contraction counts must be >= 0")


def alpha0_from(l: int, end: EndPair, n: Sequence[int]) -> int:
    _check_len(l, n)
    return (end.gamma_l * l * l - 2 * end.beta_l * l + end.alpha_l
            - sum((i + 1) ** 2 * x for i, x in enumerate(n)))


def beta0_from(l: int, end: EndPair, n: Sequence[int]) -> int:
    _check_len(l, n)
    return -end.gamma_l * l + end.beta_l + sum((i + 1) * x for i, x in enumerate(n))


def gamma0_from(end: EndPair, n: Sequence[int]) -> int:
    return end.gamma_l - sum(n)


def start_from(l: int, end: EndPair, n: Sequence[int]) -> StepInvariants:
    return StepInvariants(alpha=alpha0_from(l, end, n), beta=beta0_from(l, end, n),
                          gamma=gamma0_from(end, n))


def construct_adjoint_chain(l: int, end: EndPair, c: int) -> Optional[list[int]]:
    """Greedy contraction vector with ``alpha0 >= c``, or ``None`` if infeasible.

    Each round raises ``n[j]`` by one at the largest index ``j`` for which
    ``alpha0`` stays at least ``c``. The loop is a literal transcription of
    the reference pseudocode, including the ``j = -1`` sentinel.
    """
    if l < 1:
        raise DomainError("level must be >= 1")
    if c < 1:
        raise DomainError("c must be >= 1")

    def a0(m):
        return alpha0_from(l, end, m)

    n = l * [0]
    while True:
        j = -1
        m = list(n)
        while a0(m) >= c and j <= l - 2:
            j = j + 1
            m = list(n)
            m[j] = m[j] + 1

        if a0(m) < c:
            j = j - 1

        if j >= 0:
            n[j] = n[j] + 1
        elif a0(n) >= c:
            return n
        else:
            return None


def realize_chain(l: int, end: EndPair, n: Sequence[int], strict_parity: bool = False,
                  validate: bool = True) -> AdjointChain:
    """Roll the start invariants forward and check the result.

    With ``validate=False`` the chain is returned even if it breaks a rule;
    the end-pair consistency check always runs.
    """
    steps = roll_forward(start_from(l, end, n), n)
    last = steps[-1]
    if (last.alpha, last.beta, last.gamma) != end.as_tuple():
        raise EndMismatch(f"forward roll ends at {(last.alpha, last.beta, last.gamma)}, "
                          f"expected {end.as_tuple()}")
    chain = AdjointChain(steps=tuple(steps), p=end.p)
    if validate:
        report = validate_chain(chain, strict_parity=strict_parity)
        if not report.ok:
            raise RuleViolation(f"contraction vector {list(n)} breaks: {report.summary()}", report)
    return chain


# -- minimal pairs -----------------------------------------------------------

# D = -lam*K on a weak Del Pezzo surface: (alpha, beta) = (lam^2 gamma, -lam gamma)
DEL_PEZZO_LAMBDAS = (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))


@dataclass(frozen=True)
class MinimalPairKind:
    kind: str  # "weak_del_pezzo" or "geom_ruled"
    p: int
    lam: Optional[Fraction] = None
    variant: Optional[str] = None  # "D=kF" or "2D+K=kF"
    k: int = 0

    @property
    def keel(self) -> int:
        return self.k if self.kind == "geom_ruled" else 0

    def __str__(self):
        if self.kind == "weak_del_pezzo":
            return f"WeakDelPezzo(lambda={self.lam})"
        return f"GeomRuled({self.variant}, k={self.k}, p={self.p})"


def _del_pezzo_lambda(a: int, b: int, g: int) -> Optional[Fraction]:
    if not 1 <= g <= 9:
        return None
    for lam in DEL_PEZZO_LAMBDAS:
        if lam == Fraction(1, 2) and g != 8:
            continue
        if lam * lam * g == a and -lam * g == b:
            return lam
    return None


def classify_end_pair(end: EndPair) -> MinimalPairKind:
    a, b, g = end.as_tuple()
    lam = _del_pezzo_lambda(a, b, g)
    if lam is not None:
        return MinimalPairKind("weak_del_pezzo", p=0, lam=lam)
    # geometrically ruled: K^2 = 8(p+1) with p <= 0
    if g % 8 == 0 and g <= 8:
        p = g // 8 - 1
        if a == 0 and b < 0 and b % 2 == 0:
            return MinimalPairKind("geom_ruled", p=p, variant="D=kF", k=-b // 2)
        two_k = -(2 * b + g)
        # (2D+K)^2 = 4a + 4b + g vanishes since F^2 = 0
        if a >= 0 and two_k > 0 and two_k % 2 == 0 and 4 * a + 4 * b + g == 0:
            return MinimalPairKind("geom_ruled", p=p, variant="2D+K=kF", k=two_k // 2)
    raise Unclassifiable(f"{end.as_tuple()} matches no minimal pair profile")


def end_profiles(max_abs_gamma: int = 9, max_keel: int = 5) -> Iterator[EndPair]:
    """Every end pair accepted by :func:`classify_end_pair` in the given window."""
    for g in range(1, min(9, max_abs_gamma) + 1):
        for lam in DEL_PEZZO_LAMBDAS:
            a, b = lam * lam * g, -lam * g
            if (lam == Fraction(1, 2) and g != 8) or a.denominator != 1 or b.denominator != 1:
                continue
            yield EndPair(int(a), int(b), g)
    for g in range(8, -max_abs_gamma - 1, -8):
        for k in range(1, max_keel + 1):
            yield EndPair(0, -2 * k, g)
            b = -k - g // 2
            a4 = -(4 * b + g)
            if a4 >= 0 and a4 % 4 == 0:
                yield EndPair(a4 // 4, b, g)


def keel_of_chain(chain: AdjointChain) -> int:
    """Keel read from the end pair; the penultimate step must agree."""
    end = chain.end
    kind = classify_end_pair(EndPair(end.alpha, end.beta, end.gamma))
    k = kind.keel
    if kind.kind == "geom_ruled" and chain.level >= 1:
        k2 = keel_from_penultimate(chain)
        if k2 != k:
            raise EndMismatch(f"keel {k} from the end pair, {k2} from the step before it")
    return k


def keel_from_penultimate(chain: AdjointChain) -> int:
    """Keel through the adjoint relation into the end pair.

    alpha(l) = 0:  -2k = (D+K)K = beta(l-1) + gamma(l-1)
    alpha(l) > 0:  -2k = 2(D+K)K + K'^2 = 2(beta(l-1) + gamma(l-1)) + gamma(l)
    """
    if chain.level < 1:
        raise DomainError("needs a chain of level >= 1")
    prev, end = chain.steps[-2], chain.end
    dk = prev.beta + prev.gamma
    minus_two_k = dk if end.alpha == 0 else 2 * dk + end.gamma
    if minus_two_k % 2:
        raise Unclassifiable(f"-2k = {minus_two_k} is odd")
    return -minus_two_k // 2


# -- bookkeeping identities --------------------------------------------------

def phi(l: int, n: Sequence[int]) -> int:
    return sum((2 * l - i - 1) * (i + 1) * x for i, x in enumerate(n))


def identity_sides(chain: AdjointChain) -> tuple[int, int]:
    """Both sides of ``alpha0 + 2 l beta0 = -gamma_l l^2 + alpha_l + phi``."""
    l, s, e = chain.level, chain.start, chain.end
    return (s.alpha + 2 * l * s.beta, -e.gamma * l * l + e.alpha + phi(l, chain.contractions))


def quadratic_slack(chain: AdjointChain) -> int:
    """``alpha0 + 2 l beta0 + gamma_l l^2``; equals ``alpha_l + phi``, so never negative when ``alpha_l >= 0``."""
    l, s, e = chain.level, chain.start, chain.end
    return s.alpha + 2 * l * s.beta + e.gamma * l * l
