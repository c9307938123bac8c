from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from approxclones.axioms import (Outcomes, check_independence_of_losers, check_isda, check_smith_criterion,
                                 check_strong_independence, check_weak_independence, is_simple, replay)
from approxclones.clones import alpha_deletion
from approxclones.core import DomainError, Profile, smith_set
from approxclones.experiments import add_clone
from approxclones.fixtures import FIX_IRV4, FIX_MAJ, FIX_NS, FIX_RP4, FIX_THIRD
from approxclones.rules import Rule, evaluate

from conftest import profiles

PUT_RULES = (Rule.IRV, Rule.RANKED_PAIRS, Rule.SCHULZE)


def _sets(verdict):
    return [(w.removed, set(w.before), set(w.after)) for w in verdict.witnesses]


@pytest.mark.parametrize("rule", PUT_RULES)
def test_majority_family_strong_violation(rule):
    v = check_strong_independence(rule, FIX_MAJ, ("a", "b"))
    assert not v.satisfied
    assert _sets(v) == [("a", {"a"}, {"c"}), ("b", {"a"}, {"a"})]
    assert check_strong_independence(rule, FIX_MAJ, ("b", "c")).satisfied


def test_irv_family_weak_violation():
    v = check_weak_independence(Rule.IRV, FIX_IRV4, ("a", "b"))
    assert not v.satisfied
    assert _sets(v) == [("a", {"a"}, {"d"}), ("b", {"a"}, {"d"})]
    assert all("condition2" in w.failed for w in v.witnesses)


@pytest.mark.parametrize("rule", (Rule.RANKED_PAIRS, Rule.SCHULZE))
def test_ranked_pairs_family_weak_violation(rule):
    v = check_weak_independence(rule, FIX_RP4, ("a", "b"))
    assert not v.satisfied
    assert _sets(v) == [("a", {"a"}, {"d"}), ("b", {"a"}, {"c"})]


def test_third_family_weak_violation():
    assert alpha_deletion(FIX_THIRD, "a", "b") > Fraction(1, 3)
    v = check_weak_independence(Rule.IRV, FIX_THIRD, ("a", "b"))
    assert not v.satisfied
    assert _sets(v) == [("a", {"a"}, {"b", "c"}), ("b", {"a"}, {"a", "c"})]


def test_non_simple_family():
    assert not is_simple(Rule.IRV, FIX_NS)
    assert is_simple(Rule.IRV, FIX_IRV4)


def test_check_errors():
    p = Profile.from_strings([(1, "a>b")])
    with pytest.raises(DomainError):
        check_weak_independence(Rule.IRV, p, ("a", "b"))
    with pytest.raises(DomainError):
        check_strong_independence(Rule.IRV, FIX_MAJ, ("a", "a"))
    with pytest.raises(DomainError):
        check_strong_independence(Rule.IRV, FIX_MAJ, ("a", "z"))
    with pytest.raises(DomainError):
        check_weak_independence(Rule.IRV, FIX_MAJ, ("a", "b"), outcomes=Outcomes(Rule.IRV, FIX_RP4))


def test_replay_reproduces_witnesses():
    v = check_weak_independence(Rule.RANKED_PAIRS, FIX_RP4, ("a", "b"))
    assert replay(v, FIX_RP4)
    assert not replay(v, FIX_MAJ)


def test_independence_of_losers():
    # losers are b, c, d; dropping b already hands the win to c
    v = check_independence_of_losers(Rule.RANKED_PAIRS, FIX_RP4)
    assert not v.satisfied
    assert {w.removed for w in v.witnesses} == {"b", "c", "d"}
    assert check_independence_of_losers(Rule.PLURALITY, Profile.from_strings([(2, "a>b>c"), (1, "b>c>a")])).satisfied


def test_smith_and_isda_on_three_cycle_with_loser():
    p = Profile.from_strings([(1, "a>b>c>d"), (1, "b>c>a>d"), (1, "c>a>b>d")])
    assert smith_set(p) == {"a", "b", "c"}
    for rule in (Rule.RANKED_PAIRS, Rule.SCHULZE):
        assert check_smith_criterion(rule, p).satisfied
        assert check_isda(rule, p).satisfied


def test_tied_winner_sets_break_weak_independence():
    # odd n, Smith set of three; equal margins a>b and b>c let either lock first
    p = Profile.from_rankings([(9, "abc"), (3, "acb"), (6, "bac"), (7, "bca"), (10, "cab"), (8, "cba")], "abc")
    assert p.n % 2 == 1 and smith_set(p) == {"a", "b", "c"}
    for rule in (Rule.RANKED_PAIRS, Rule.SCHULZE):
        assert evaluate(rule, p) == {"b", "c"}
        v = check_weak_independence(rule, p, ("a", "b"))
        assert _sets(v) == [("a", {"b", "c"}, {"b"}), ("b", {"b", "c"}, {"c"})]
        assert not v.satisfied


@given(profiles(min_m=3, max_m=3, max_ballots=6, max_count=9))
def test_three_candidates_weak_independence_on_simple_profiles(p):
    for rule in PUT_RULES:
        out = Outcomes(rule, p)
        if len(out.full) != 1:
            continue
        for pair in (("a", "b"), ("a", "c"), ("b", "c")):
            if rule is Rule.IRV and alpha_deletion(p, *pair) > Fraction(1, 3):
                continue
            assert check_weak_independence(rule, p, pair, outcomes=out).satisfied


@given(profiles(min_m=2, max_m=5, max_ballots=6), st.data())
def test_constructed_perfect_clones_are_independent(p, data):
    target = data.draw(st.sampled_from(p.candidates))
    seed = data.draw(st.integers(0, 2**32 - 1))
    q = add_clone(p, target, np.random.default_rng(seed))
    pair = (target, q.candidates[-1])
    assert alpha_deletion(q, *pair) == 0
    for rule in PUT_RULES:
        assert check_strong_independence(rule, q, pair).satisfied


@given(profiles(min_m=3, max_m=6))
def test_smith_criterion_and_isda_for_condorcet_rules(p):
    for rule in (Rule.RANKED_PAIRS, Rule.SCHULZE):
        assert check_smith_criterion(rule, p).satisfied
        assert check_isda(rule, p).satisfied


@given(profiles(min_m=3, max_m=5))
def test_strong_implies_weak(p):
    for rule in PUT_RULES:
        out = Outcomes(rule, p)
        for pair in (("a", "b"), ("b", "c")):
            if check_strong_independence(rule, p, pair, outcomes=out).satisfied:
                assert check_weak_independence(rule, p, pair, outcomes=out).satisfied


@given(profiles(min_m=3, max_m=5))
def test_losers_witnesses_cover_every_loser(p):
    v = check_independence_of_losers(Rule.IRV, p)
    assume(v.witnesses)
    winners = evaluate(Rule.IRV, p)
    assert {w.removed for w in v.witnesses} == set(p.candidates) - winners
