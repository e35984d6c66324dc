"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures without a
lookup table: 1 for bad input (domain), 2 for infeasible requests, 3 for
internal invariant failures.
"""


class AdjointChainError(Exception):
    exit_code = 1


class DomainError(AdjointChainError, ValueError):
    """An argument lies outside the domain of a formula."""


class InvalidState(DomainError):
    """(gamma, beta) sign pattern that no adjoint state allows."""


class OddSum(DomainError):
    """A half-integer would result where an integer is required."""


class LengthMismatch(DomainError):
    pass


class NegativeDiscriminant(DomainError):
    pass


class Unclassifiable(DomainError):
    """End invariants match neither minimal pair profile."""


class NoValidChain(AdjointChainError):
    exit_code = 2


class RuleViolation(AdjointChainError):
    """A realized chain breaks one of the adjoint chain rules."""

    exit_code = 2

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CapsExceeded(AdjointChainError):
    """Exhaustive search hit an explicit cap; results may be incomplete."""

    exit_code = 2


class EndMismatch(AdjointChainError):
    exit_code = 3


class Mismatch(AdjointChainError):
    exit_code = 3

    def __init__(self, message, expected=None, found=None):
        super().__init__(message)
        self.expected = expected
        self.found = found
