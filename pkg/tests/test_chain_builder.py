from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adjoint_chains.adjoint_core import AdjointChain, StepInvariants, roll_forward, validate_chain
from adjoint_chains.chain_builder import (
    EndPair,
    alpha0_from,
    beta0_from,
    classify_end_pair,
    construct_adjoint_chain,
    end_profiles,
    gamma0_from,
    identity_sides,
    keel_from_penultimate,
    keel_of_chain,
    phi,
    quadratic_slack,
    realize_chain,
    start_from,
)
from adjoint_chains.errors import DomainError, LengthMismatch, RuleViolation, Unclassifiable
from adjoint_chains.tables import GOLDEN

from conftest import golden_chain

T1 = (8, EndPair(1, -1, 1), [0, 0, 1, 0, 0, 0, 0, 1])
T2 = (12, EndPair(3, -3, 3), [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 3])
T3 = (8, EndPair(1, -1, 0), [0, 0, 1, 0, 0, 0, 0, 0])
T4 = (9, EndPair(0, -40, -8), [0] * 9)


def _roll_back(l, end, n):
    # independent oracle: undo the recurrences one step at a time from the end
    a, b, g = end.as_tuple()
    for i in reversed(range(l)):
        g = g - n[i]
        b = b - g
        a = a - 2 * b - g  # alpha' = alpha + 2 beta + gamma with the earlier beta, gamma
    return a, b, g


# -- start formulas --------------------------------------------------------------

@pytest.mark.parametrize("inp,a0,b0,g0", [(T1, 8, 2, -1), (T2, 11, 5, -1), (T4, 72, 32, -8), (T3, 8, 2, -1)])
def test_start_formulas(inp, a0, b0, g0):
    l, end, n = inp
    assert alpha0_from(l, end, n) == a0
    assert beta0_from(l, end, n) == b0
    assert gamma0_from(end, n) == g0


def test_gamma0_empty_sum():
    assert gamma0_from(EndPair(0, 0, 5), []) == 5


def test_length_and_sign_checks():
    with pytest.raises(LengthMismatch):
        alpha0_from(3, EndPair(1, -1, 1), [0, 0])
    with pytest.raises(DomainError):
        beta0_from(2, EndPair(1, -1, 1), [0, -1])


@given(st.integers(0, 10).flatmap(lambda l: st.lists(st.integers(0, 4), min_size=l, max_size=l)),
       st.integers(-30, 30), st.integers(-30, 30), st.integers(-9, 9))
def test_formulas_round_trip_with_advance(n, a, b, g):
    l, end = len(n), EndPair(a, b, g)
    start = start_from(l, end, n)
    assert (start.alpha, start.beta, start.gamma) == _roll_back(l, end, n)
    last = roll_forward(start, n)[-1]
    assert (last.alpha, last.beta, last.gamma) == end.as_tuple()


# -- greedy construction ----------------------------------------------------------

@pytest.mark.parametrize("table_id", [1, 2, 3, 4])
def test_construct_reproduces_table_vectors(table_id):
    gold = GOLDEN[table_id]
    inp = gold.inputs
    assert construct_adjoint_chain(inp.l, inp.end, inp.c) == gold.rows["n"]


def test_construct_infeasible_returns_none():
    # gamma_l * 4 - 2 beta_l * 2 + alpha_l = 9 < 100
    assert construct_adjoint_chain(2, EndPair(1, -1, 1), 100) is None


def test_construct_rejects_bad_arguments():
    with pytest.raises(DomainError):
        construct_adjoint_chain(0, EndPair(1, -1, 1), 1)
    with pytest.raises(DomainError):
        construct_adjoint_chain(3, EndPair(1, -1, 1), 0)


@given(st.integers(1, 10), st.sampled_from(list(end_profiles(9, 5))), st.integers(1, 80))
@settings(max_examples=300)
def test_construct_output_hits_c_exactly(l, end, c):
    n = construct_adjoint_chain(l, end, c)
    top = alpha0_from(l, end, [0] * l)
    if n is None:
        assert top < c
        return
    assert len(n) == l and min(n) >= 0
    assert alpha0_from(l, end, n) == c


@given(st.integers(1, 10), st.sampled_from(list(end_profiles(9, 5))), st.integers(1, 80))
@settings(max_examples=300)
def test_construct_output_realizes(l, end, c):
    n = construct_adjoint_chain(l, end, c)
    if n is None:
        return
    chain = realize_chain(l, end, n)
    assert validate_chain(chain).ok


# -- realization ----------------------------------------------------------------

def test_realize_table1():
    l, end, n = T1
    chain = realize_chain(l, end, n)
    assert chain == golden_chain(1)
    assert chain.p == 0


def test_realize_table3_has_genus_minus_one():
    l, end, n = T3
    chain = realize_chain(l, end, n)
    assert chain.p == -1
    assert chain == golden_chain(3)


def test_forward_roll_of_front_loaded_vector_regresses():
    # five contractions right after the Table 1 start: gamma(1) = 4 with beta(1) = 1
    chain = AdjointChain.from_start(StepInvariants(alpha=8, beta=2, gamma=-1), [5] + [0] * 7, p=0)
    assert (chain.steps[1].gamma, chain.steps[1].beta) == (4, 1)
    assert ("S", 1) in validate_chain(chain).rules()


def test_realize_front_loaded_vector_against_table1_end():
    # with the end pinned, the start moves instead: (76, -4, -4), an S2 start
    # followed by S4 steps, and every rule holds
    l, end, _ = T1
    chain = realize_chain(l, end, [5] + [0] * 7)
    assert (chain.start.alpha, chain.start.beta, chain.start.gamma) == (76, -4, -4)
    assert [s.h for s in chain.steps] == [80, 72, 56, 42, 30, 20, 12, 6, 2]


def test_realize_reports_violations():
    l, end, _ = T1
    bad = [0] * 7 + [2]
    with pytest.raises(RuleViolation) as info:
        realize_chain(l, end, bad)
    assert ("Z", 1) in info.value.report.rules()
    # raw mode hands the broken chain back
    chain = realize_chain(l, end, bad, validate=False)
    assert chain.steps[1].h == -40


def test_realize_strict_parity_passes_on_tables(any_table):
    table_id, _ = any_table
    inp = GOLDEN[table_id].inputs
    chain = realize_chain(inp.l, inp.end, GOLDEN[table_id].rows["n"], strict_parity=True)
    assert chain.level == inp.l


# -- end pairs and keel -------------------------------------------------------------

def test_classify_examples():
    k1 = classify_end_pair(EndPair(1, -1, 1))
    assert k1.kind == "weak_del_pezzo" and k1.lam == 1 and k1.keel == 0
    k4 = classify_end_pair(EndPair(0, -40, -8))
    assert (k4.kind, k4.variant, k4.k, k4.p) == ("geom_ruled", "D=kF", 20, -2)
    k3 = classify_end_pair(EndPair(1, -1, 0))
    assert (k3.kind, k3.variant, k3.k, k3.p) == ("geom_ruled", "2D+K=kF", 1, -1)


@pytest.mark.parametrize("end,lam", [
    ((2, -4, 8), Fraction(1, 2)),
    ((1, -3, 9), Fraction(1, 3)),
    ((4, -6, 9), Fraction(2, 3)),
    ((9, -9, 9), Fraction(1)),
])
def test_classify_del_pezzo_multiples(end, lam):
    assert classify_end_pair(EndPair(*end)).lam == lam


@pytest.mark.parametrize("end", [(2, -2, 4), (1, -1, -8), (0, -3, 0), (5, 5, 5), (1, -2, 4)])
def test_classify_rejects(end):
    with pytest.raises(Unclassifiable):
        classify_end_pair(EndPair(*end))


def test_end_profiles_all_classify():
    ends = list(end_profiles(9, 5))
    assert len(ends) == len(set(ends)) == 41
    for e in ends:
        kind = classify_end_pair(e)
        assert kind.keel <= 5
        assert abs(e.gamma_l) <= 9


@pytest.mark.parametrize("table_id,keel", [(1, 0), (3, 1), (4, 20)])
def test_keel_routes_agree(table_id, keel):
    chain = golden_chain(table_id)
    assert keel_of_chain(chain) == keel
    if table_id != 1:
        assert keel_from_penultimate(chain) == keel


# -- identities -----------------------------------------------------------------

def test_identity_table1_instance():
    chain = golden_chain(1)
    lhs, rhs = identity_sides(chain)
    assert lhs == 40 and rhs == 40
    assert phi(8, chain.contractions) == 103
    assert quadratic_slack(chain) == 104


@given(st.integers(0, 10).flatmap(lambda l: st.lists(st.integers(0, 4), min_size=l, max_size=l)),
       st.integers(-30, 30), st.integers(-30, 30), st.integers(-9, 9))
def test_linear_identity_holds_for_any_vector(n, a, b, g):
    l, end = len(n), EndPair(a, b, g)
    chain = realize_chain(l, end, n, validate=False)
    lhs, rhs = identity_sides(chain)
    assert lhs == rhs
    assert quadratic_slack(chain) == a + phi(l, n)


def test_phi_by_definition():
    n = [3, 1, 4, 1, 5]
    assert phi(5, n) == sum((2 * 5 - i - 1) * (i + 1) * x for i, x in enumerate(n))
    assert phi(0, []) == 0
