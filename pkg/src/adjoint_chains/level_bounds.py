"""Upper bounds for the level of an adjoint chain.

Closed forms per initial adjoint state, the combined bound in terms of
``(alpha0, beta0, p)``, and :func:`max_level`, the exact maximum length over
every integer sequence obeying the chain rules.

Floors of expressions with square roots are evaluated with :func:`math.isqrt`
and integer floor division only.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache

from .adjoint_core import (
    AdjointChain,
    StepInvariants,
    end_condition_holds,
    state_or_none,
)
from .errors import DomainError, NegativeDiscriminant, NoValidChain


def floor_sqrt_quotient(a: int, disc: int, den: int) -> int:
    """Exact ``floor((a - sqrt(disc)) / den)`` for integers, ``den != 0``."""
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc} < 0")
    if den == 0:
        raise ZeroDivisionError("den must be nonzero")
    r = math.isqrt(disc)
    if den < 0:
        # (a - x)/den == (x - a)/(-den), and floor((x - a)/d) == floor((floor(x) - a)/d)
        return (r - a) // (-den)
    ceil_root = r if r * r == disc else r + 1
    return (a - ceil_root) // den


@dataclass(frozen=True)
class BoundInput:
    alpha0: int
    beta0: int
    p: int

    def __post_init__(self):
        if self.p > 0:
            raise DomainError(f"arithmetic genus p={self.p} must be <= 0")

    @property
    def h0(self) -> int:
        return self.alpha0 - self.beta0


@dataclass(frozen=True)
class S1Segment:
    """How far an initial S1 stretch can reach: the first index ``j_max`` past
    it and the largest possible ``h`` there."""

    j_max: int
    h_j_max: int
    t: int


def bound_S4(beta0: int) -> int:
    if beta0 >= 0:
        raise DomainError("S4 start needs beta0 < 0")
    return -beta0 - 1


def bound_S3(h0: int) -> int:
    if h0 < 2:
        raise DomainError(f"h0={h0} < 2")
    return (h0 - 2) // 2


def bound_S2a(h0: int, beta0: int, beta_l: int) -> int:
    """Bound for an S2 start with ``p >= -1`` once the final ``beta_l`` is known."""
    s = beta0 - beta_l
    if beta0 >= 0:
        raise DomainError("S2 start needs beta0 < 0")
    if s <= 0:
        raise DomainError(f"s = beta0 - beta_l = {s} must be positive")
    return s + (-s * s + (2 * beta0 + 1) * s + h0 - 2) // (-2 * beta_l)


def bound_S2b(h0: int, beta0: int, p: int) -> int:
    if beta0 >= 0:
        raise DomainError("S2 start needs beta0 < 0")
    if p > -2:
        raise DomainError(f"this bound needs p <= -2, got p={p}")
    t = 8 * (p + 1)
    disc = (2 * beta0 - t) ** 2 - 4 * t * (h0 - 2)
    return floor_sqrt_quotient(-(2 * beta0 - t), disc, 2 * t)


def bound_S1_segment(h0: int, beta0: int, p: int) -> S1Segment:
    if beta0 < 0:
        raise DomainError("S1 start needs beta0 >= 0")
    t = min(8 * (p + 1), -1)
    j = beta0 // (-t) + 1
    return S1Segment(j_max=j, h_j_max=t * j * j + (2 * beta0 - t) * j + h0, t=t)


def theorem_bound(alpha0: int, beta0: int, p: int) -> int:
    """Upper bound for the level from ``alpha0``, ``beta0`` and the arithmetic genus."""
    h0 = alpha0 - beta0
    if p > 0:
        raise DomainError(f"p={p} > 0")
    if h0 < 2:
        raise DomainError(f"h0={h0} < 2")
    if p >= -1:
        if beta0 >= 0:
            return (beta0 * beta0 + alpha0) // 2 + beta0
        return (alpha0 - beta0 - 2) // 2
    if beta0 < 0:
        return bound_S2b(h0, beta0, p)
    seg = bound_S1_segment(h0, beta0, p)
    t = seg.t
    disc = t * t - 4 * t * (seg.h_j_max - 2)
    return seg.j_max + floor_sqrt_quotient(-t, disc, 2 * t)


def family_degree_bound(l_tilde: int, p: int) -> int:
    """Bound on the minimal family degree from a level bound."""
    if l_tilde < 0:
        raise DomainError("level bound must be >= 0")
    if p > 0:
        raise DomainError(f"p={p} > 0")
    return 2 * l_tilde + 2 if p == 0 else 2 * l_tilde + 1


# -- exact maximum -----------------------------------------------------------

_DEAD = -1


def _gamma0_range(h0: int, beta0: int, p: int) -> range:
    """Initial gamma values that can matter for the longest chain.

    Upper end: gamma never decreases, so it stays <= 8(p+1) when p < 0; for
    p = 0 a start with gamma0 >= -beta0 > 0 cannot take a step, and gamma0 = 1
    already covers the length-0 chain. Lower end: a chain with two steps needs
    h(2) = h0 + 4*beta0 + 2*gamma0 >= 2, and one-step chains always have a
    witness with gamma0 >= -|beta0| - 1.
    """
    top = 8 * (p + 1) if p < 0 else max(1, -beta0 - 1)
    low = min(-((h0 + 4 * beta0 - 2) // 2), -abs(beta0) - 1, top)
    return range(low, top + 1)


def _successor_gammas(gamma: int, beta_next: int, p: int) -> range:
    # p < 0: capped by the forced final value. p = 0: once gamma' >= -beta',
    # only a final step remains and any gamma' > 0 is as good as another.
    top = 8 * (p + 1) if p < 0 else max(gamma, 1, -beta_next - 1)
    return range(gamma, top + 1)


@lru_cache(maxsize=8)
def _longest_from(p: int):
    @lru_cache(maxsize=None)
    def best(h: int, beta: int, gamma: int) -> int:
        """Longest remaining length from a valid position, or ``_DEAD``."""
        here = 0 if end_condition_holds(gamma, p) else _DEAD
        st = state_or_none(gamma, beta)
        h2, b2 = h + 2 * beta, beta + gamma
        if h2 < 2:
            return here
        for g2 in _successor_gammas(gamma, b2, p):
            st2 = state_or_none(g2, b2)
            if st2 is None or st2 < st:
                continue
            r = best(h2, b2, g2)
            if r != _DEAD and r + 1 > here:
                here = r + 1
        return here

    return best


def _check_search_input(h0: int, p: int):
    if h0 < 2:
        raise DomainError(f"h0={h0} < 2")
    if p > 0:
        raise DomainError(f"p={p} > 0")


def _with_recursion_room(fn, depth_hint: int):
    limit = sys.getrecursionlimit()
    need = 4 * depth_hint + 1000
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        return fn()
    finally:
        sys.setrecursionlimit(limit)


def _depth_hint(h0: int, beta0: int) -> int:
    # generous: an S1 stretch lasts <= beta0+1 steps, then h only falls
    b = max(beta0, 0)
    return b + 1 + (h0 + 2 * b * (b + 1)) // 2


def max_level(h0: int, beta0: int, p: int) -> int:
    """Exact maximum length over all rule-valid sequences starting at ``(h0, beta0)``."""
    return len(longest_chain(h0, beta0, p).steps) - 1


def longest_chain(h0: int, beta0: int, p: int) -> AdjointChain:
    """A chain of maximum length (ties broken by the smallest choices first)."""
    _check_search_input(h0, p)
    best = _longest_from(p)

    def run():
        top, arg = _DEAD, None
        for g0 in _gamma0_range(h0, beta0, p):
            if state_or_none(g0, beta0) is None:
                continue
            r = best(h0, beta0, g0)
            if r > top:
                top, arg = r, g0
        if arg is None:
            raise NoValidChain(f"no rule-valid chain starts at h0={h0}, beta0={beta0}, p={p}")
        return _trace(best, h0, beta0, arg, top, p)

    return _with_recursion_room(run, _depth_hint(h0, beta0))


def _trace(best, h, beta, gamma, length, p) -> AdjointChain:
    path = [(h, beta, gamma)]
    ns = []
    while length > 0:
        st = state_or_none(gamma, beta)
        h2, b2 = h + 2 * beta, beta + gamma
        for g2 in _successor_gammas(gamma, b2, p):
            st2 = state_or_none(g2, b2)
            if st2 is not None and st2 >= st and best(h2, b2, g2) == length - 1:
                break
        else:  # pragma: no cover - memo guarantees a successor
            raise AssertionError("lost track of the longest chain")
        ns.append(g2 - gamma)
        h, beta, gamma, length = h2, b2, g2, length - 1
        path.append((h, beta, gamma))
    steps = [StepInvariants(alpha=hh + bb, beta=bb, gamma=gg, h=hh, n=n)
             for (hh, bb, gg), n in zip(path, ns + [0])]
    return AdjointChain(steps=tuple(steps), p=p)
