"""Integer invariants of adjoint chains of ruled pairs, their level bounds,
the greedy example construction, brute-force oracles and the lattice polygon
analogue."""

from .adjoint_core import (
    AdjointChain,
    AdjointState,
    StepInvariants,
    ValidationReport,
    Violation,
    advance,
    chain_from_rows,
    classify_state,
    embedding_dim,
    genus_from_end,
    roll_forward,
    sectional_genus,
    validate_chain,
)
from .chain_builder import (
    EndPair,
    MinimalPairKind,
    alpha0_from,
    beta0_from,
    classify_end_pair,
    construct_adjoint_chain,
    end_profiles,
    gamma0_from,
    identity_sides,
    keel_of_chain,
    realize_chain,
)
from .errors import (
    AdjointChainError,
    CapsExceeded,
    DomainError,
    EndMismatch,
    InvalidState,
    LengthMismatch,
    Mismatch,
    NegativeDiscriminant,
    NoValidChain,
    OddSum,
    RuleViolation,
    Unclassifiable,
)
from .level_bounds import family_degree_bound, longest_chain, max_level, theorem_bound
from .oracle import SearchCaps, enumerate_chains, verify_algorithm_optimality, verify_tightness

__version__ = "0.1.0"
