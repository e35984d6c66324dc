import itertools

import pytest
from hypothesis import given, settings, strategies as st

from adjoint_chains.adjoint_core import validate_chain
from adjoint_chains.chain_builder import EndPair, alpha0_from, beta0_from, end_profiles
from adjoint_chains.errors import CapsExceeded, DomainError, Mismatch
from adjoint_chains.level_bounds import theorem_bound
from adjoint_chains.oracle import (
    SearchCaps,
    best_contraction_vector,
    enumerate_chains,
    iter_chains,
    iter_contraction_vectors,
    longest_by_layers,
    objective,
    verify_algorithm_optimality,
    verify_tightness,
)

from conftest import golden_chain

WIDE = SearchCaps(100, 6, 10)


def test_caps_defaults_and_parse():
    assert SearchCaps().as_list() == [20, 6, 10]
    assert SearchCaps.parse("5,2,3") == SearchCaps(5, 2, 3)
    with pytest.raises(DomainError):
        SearchCaps(0, 1, 1)
    with pytest.raises(DomainError):
        SearchCaps.parse("1,2")


# -- enumeration ------------------------------------------------------------------

def test_enumerate_h2_has_only_length_zero():
    chains = enumerate_chains(2, -1, 0)
    assert chains and max(c.level for c in chains) == 0
    assert all(c.start.gamma > 0 for c in chains)


def test_enumerate_h4_max_one():
    chains = enumerate_chains(4, -1, 0)
    assert max(c.level for c in chains) == 1


def test_enumerate_table1_start_max_eight():
    chains = enumerate_chains(6, 2, 0)
    assert max(c.level for c in chains) == 8
    assert golden_chain(1) in chains


def test_enumerated_chains_are_valid_and_sorted():
    chains = enumerate_chains(10, 1, -1, SearchCaps(30, 4, 8))
    assert chains == sorted(chains, key=lambda c: c.key())
    assert all(validate_chain(c).ok for c in chains)
    assert len({c.key() for c in chains}) == len(chains)


def test_enumeration_raises_when_capped():
    with pytest.raises(CapsExceeded):
        list(iter_chains(6, 5, 0, SearchCaps(10, 6, 10)))
    with pytest.raises(CapsExceeded):
        longest_by_layers(6, 5, 0, SearchCaps(10, 6, 10))


def _naive_max(h0, b0, p, caps):
    # the plainest possible search: every gamma0, every n vector, roll and check
    from adjoint_chains.adjoint_core import AdjointChain, StepInvariants
    best = -1
    for g0 in range(-caps.max_abs_gamma0, caps.max_abs_gamma0 + 1):
        for l in range(caps.max_l + 1):
            for ns in itertools.product(range(caps.max_n_per_step + 1), repeat=l):
                chain = AdjointChain.from_start(StepInvariants(alpha=h0 + b0, beta=b0, gamma=g0), list(ns), p)
                if validate_chain(chain).ok:
                    best = max(best, l)
    return best


@pytest.mark.parametrize("h0,b0,p", [(4, -1, 0), (6, -1, 0), (6, 0, -1), (8, -2, 0), (4, 1, -2), (10, -3, 0)])
def test_layers_match_naive_product_search(h0, b0, p):
    caps = SearchCaps(6, 3, 8)
    try:
        found, witness, _ = longest_by_layers(h0, b0, p, caps)
    except CapsExceeded:
        pytest.skip("instance longer than the naive cap")
    assert found == _naive_max(h0, b0, p, caps)


@given(st.integers(1, 10).map(lambda k: 2 * k), st.integers(-4, 4), st.sampled_from([0, -1, -2]))
@settings(max_examples=60)
def test_layers_agree_with_dfs(h0, b0, p):
    caps = SearchCaps(40, 6, 10)
    chains = enumerate_chains(h0, b0, p, caps)
    found, witness, _ = longest_by_layers(h0, b0, p, caps)
    assert found == (max(c.level for c in chains) if chains else -1)
    if witness is not None:
        assert witness in chains


# -- tightness ------------------------------------------------------------------

def test_tightness_table1():
    rep = verify_tightness(6, 2, 0)
    assert rep.ok, rep.mismatches
    assert rep.max_found == 8 == rep.theorem_bound
    assert validate_chain(rep.witness).ok


def test_tightness_table4():
    rep = verify_tightness(40, 32, -2)
    assert rep.ok and rep.max_found == 9
    assert rep.witness.level == 9 and validate_chain(rep.witness).ok
    assert golden_chain(4) in enumerate_chains(40, 32, -2)


def test_tightness_table2_start_needs_wider_caps():
    # the Table 2 start has a level-23 chain, past the default max_l of 20
    with pytest.raises(CapsExceeded):
        verify_tightness(6, 5, 0)
    rep = verify_tightness(6, 5, 0, WIDE)
    assert rep.ok and rep.max_found == 23


def test_tightness_table2_row7():
    rep = verify_tightness(34, -2, 0)
    assert rep.ok and rep.max_found == 8
    gammas = [s.gamma for s in rep.witness.steps]
    assert gammas[0] == 0 and gammas[-1] > 0


def test_tightness_reports_theorem_excess():
    # a p = -2 start with positive beta0 where chains outrun the closed-form bound
    rep = verify_tightness(2, 1, -2, WIDE)
    if rep.theorem_bound is not None and rep.max_found > rep.theorem_bound:
        assert any("exceeds theorem bound" in m for m in rep.mismatches)
    d = rep.to_dict()
    assert set(d) == {"grid", "max_found", "max_level", "theorem_bound", "witness", "mismatches"}


# -- optimality -----------------------------------------------------------------

@given(st.integers(1, 5), st.integers(0, 60))
def test_budget_table_matches_explicit_enumeration(l, budget):
    vecs = list(iter_contraction_vectors(l, budget))
    best = best_contraction_vector(l, budget)
    if not vecs:
        assert best is None
        return
    assert objective(best) == min(objective(v) for v in vecs)
    assert sum((i + 1) ** 2 * x for i, x in enumerate(best)) == budget


def test_iter_contraction_vectors_small():
    assert sorted(iter_contraction_vectors(2, 4)) == [[0, 1], [4, 0]]
    assert list(iter_contraction_vectors(3, -1)) == []
    assert list(iter_contraction_vectors(0, 0)) == [[]]


@pytest.mark.parametrize("l,end,c,expected", [
    (8, EndPair(1, -1, 1), 8, [0, 0, 1, 0, 0, 0, 0, 1]),
    (12, EndPair(3, -3, 3), 11, [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 3]),
])
def test_optimality_on_tables(l, end, c, expected):
    rep = verify_algorithm_optimality(l, end, c)
    assert rep.ok, rep.mismatches
    assert rep.algorithm == expected and rep.algorithm_valid


def test_optimality_small_instance_against_brute_force():
    # every vector with sum (i+1)^2 n(i) <= 15 at l = 3
    l, end, c = 3, EndPair(1, -1, 1), 1
    rep = verify_algorithm_optimality(l, end, c)
    hits = [list(n) for n in itertools.product(range(16), repeat=l)
            if sum((i + 1) ** 2 * x for i, x in enumerate(n)) <= 15 and alpha0_from(l, end, list(n)) == c]
    best = min(hits, key=objective)
    assert objective(rep.best) == objective(best)
    assert rep.ok, rep.mismatches


def test_optimality_counterexample_is_reported():
    # greedy spends [3, 0, 1]: four contractions where [0, 3, 0] needs three
    end = EndPair(1, -1, 1)
    rep = verify_algorithm_optimality(3, end, 4)
    assert rep.algorithm == [3, 0, 1]
    assert rep.best == [0, 3, 0]
    assert beta0_from(3, end, rep.algorithm) == beta0_from(3, end, rep.best) == 2
    assert not rep.ok and rep.best_valid
    with pytest.raises(Mismatch) as info:
        rep.raise_for_mismatch()
    assert info.value.expected == [0, 3, 0]


def test_optimality_respects_max_l():
    with pytest.raises(CapsExceeded):
        verify_algorithm_optimality(21, EndPair(1, -1, 1), 1)


@given(st.integers(1, 10), st.sampled_from(list(end_profiles(9, 5))), st.integers(1, 80))
@settings(max_examples=200)
def test_optimality_report_consistency(l, end, c):
    rep = verify_algorithm_optimality(l, end, c)
    if rep.algorithm is None:
        assert rep.best is None and rep.ok
        return
    assert alpha0_from(l, end, rep.algorithm) == c
    assert objective(rep.best) <= objective(rep.algorithm)
    assert rep.ok == (objective(rep.best) == objective(rep.algorithm))


def test_no_enumerated_chain_beats_theorem_for_p_zero():
    for h0 in range(2, 21, 2):
        for b0 in range(0, 5):
            chains = enumerate_chains(h0, b0, 0, SearchCaps(60, 6, 10))
            if chains:
                assert max(c.level for c in chains) <= theorem_bound(h0 + b0, b0, 0)
