"""Independence axioms as decision procedures with replayable witnesses.

A violated axiom is a normal outcome and is reported through
:class:`AxiomVerdict`; exceptions are reserved for malformed inputs and
exhausted PUT budgets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import CandidateId, DomainError, Profile, remove_candidate, smith_indices, _margin_values
from .rules import DEFAULT_CAP, Rule, evaluate

STRONG = "strong_independence"
WEAK = "weak_independence"
LOSERS = "independence_of_losers"
SMITH = "smith_criterion"
ISDA = "isda"


@dataclass(frozen=True)
class Witness:
    """One tested removal: winners before and after, and which conditions failed."""

    removed: Optional[CandidateId]
    before: frozenset
    after: frozenset
    failed: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failed


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    rule: Rule
    satisfied: bool
    witnesses: tuple[Witness, ...]
    pair: Optional[tuple[CandidateId, CandidateId]] = None


class Outcomes:
    """Memoised winner sets of one rule on a profile and its single-candidate removals."""

    def __init__(self, rule, profile: Profile, cap: int = DEFAULT_CAP):
        self.rule = rule if isinstance(rule, Rule) else Rule.parse(rule)
        self.profile = profile
        self.cap = cap
        self._full: Optional[frozenset] = None
        self._without: dict[CandidateId, frozenset] = {}

    @property
    def full(self) -> frozenset:
        if self._full is None:
            self._full = evaluate(self.rule, self.profile, cap=self.cap)
        return self._full

    def without(self, candidate: CandidateId) -> frozenset:
        hit = self._without.get(candidate)
        if hit is None:
            hit = evaluate(self.rule, remove_candidate(self.profile, candidate), cap=self.cap)
            self._without[candidate] = hit
        return hit


def _outcomes(rule, profile, outcomes, cap) -> Outcomes:
    if outcomes is None:
        return Outcomes(rule, profile, cap)
    if outcomes.profile is not profile:
        raise DomainError("outcome cache belongs to a different profile")
    return outcomes


def _check_pair(profile: Profile, pair) -> tuple[CandidateId, CandidateId]:
    x, y = pair
    profile.idx(x)
    profile.idx(y)
    if x == y:
        raise DomainError("the pair needs two distinct candidates")
    if profile.m < 3:
        raise DomainError("independence checks need at least three candidates")
    return x, y


def _clone_removal(before: frozenset, after: frozenset, removed, kept, weak: bool) -> Witness:
    pair = {removed, kept}
    failed = []
    if before - pair != after - pair:
        failed.append("condition1")
    clone_won = bool(before & pair)
    if weak:
        clone_still_wins = bool(after & pair)
    else:
        clone_still_wins = kept in after
    if clone_won != clone_still_wins:
        failed.append("condition2")
    return Witness(removed, before, after, tuple(failed))


def check_strong_independence(rule, profile: Profile, pair, cap: int = DEFAULT_CAP,
                              outcomes: Optional[Outcomes] = None) -> AxiomVerdict:
    """Removing either member of the pair preserves other winners and hands victory to the other.

    Both removals are tested; the verdict holds only if all four conditions pass.
    """
    x, y = _check_pair(profile, pair)
    out = _outcomes(rule, profile, outcomes, cap)
    witnesses = (
        _clone_removal(out.full, out.without(x), x, y, weak=False),
        _clone_removal(out.full, out.without(y), y, x, weak=False),
    )
    return AxiomVerdict(STRONG, out.rule, all(w.passed for w in witnesses), witnesses, (x, y))


def check_weak_independence(rule, profile: Profile, pair, cap: int = DEFAULT_CAP,
                            outcomes: Optional[Outcomes] = None) -> AxiomVerdict:
    """At least one member of the pair can be removed without disturbing the outcome."""
    x, y = _check_pair(profile, pair)
    out = _outcomes(rule, profile, outcomes, cap)
    witnesses = (
        _clone_removal(out.full, out.without(x), x, y, weak=True),
        _clone_removal(out.full, out.without(y), y, x, weak=True),
    )
    return AxiomVerdict(WEAK, out.rule, any(w.passed for w in witnesses), witnesses, (x, y))


def _removal_preserves(before: frozenset, after: frozenset, removed) -> Witness:
    failed = () if after == before - {removed} else ("winner_set_changed",)
    return Witness(removed, before, after, failed)


def check_independence_of_losers(rule, profile: Profile, cap: int = DEFAULT_CAP,
                                 outcomes: Optional[Outcomes] = None) -> AxiomVerdict:
    if profile.m < 3:
        raise DomainError("independence of losers needs at least three candidates")
    out = _outcomes(rule, profile, outcomes, cap)
    witnesses = tuple(_removal_preserves(out.full, out.without(z), z)
                      for z in profile.candidates if z not in out.full)
    return AxiomVerdict(LOSERS, out.rule, all(w.passed for w in witnesses), witnesses)


def check_smith_criterion(rule, profile: Profile, cap: int = DEFAULT_CAP,
                          outcomes: Optional[Outcomes] = None) -> AxiomVerdict:
    out = _outcomes(rule, profile, outcomes, cap)
    smith = profile.names(smith_indices(_margin_values(profile)))
    winners = out.full
    failed = () if winners <= smith else ("winner_outside_smith_set",)
    return AxiomVerdict(SMITH, out.rule, not failed, (Witness(None, winners, smith, failed),))


def check_isda(rule, profile: Profile, cap: int = DEFAULT_CAP,
               outcomes: Optional[Outcomes] = None) -> AxiomVerdict:
    """Removing any candidate outside the Smith set leaves the winner set unchanged."""
    if profile.m < 3:
        raise DomainError("ISDA needs at least three candidates")
    out = _outcomes(rule, profile, outcomes, cap)
    smith = profile.names(smith_indices(_margin_values(profile)))
    witnesses = tuple(_removal_preserves(out.full, out.without(z), z)
                      for z in profile.candidates if z not in smith)
    return AxiomVerdict(ISDA, out.rule, all(w.passed for w in witnesses), witnesses)


def is_simple(rule, profile: Profile, cap: int = DEFAULT_CAP) -> bool:
    """True when the rule returns exactly one winner."""
    return len(evaluate(rule, profile, cap=cap)) == 1


def replay(verdict: AxiomVerdict, profile: Profile, cap: int = DEFAULT_CAP) -> bool:
    """Re-evaluate every recorded removal and compare with the stored winner sets."""
    fresh = evaluate(verdict.rule, profile, cap=cap)
    for w in verdict.witnesses:
        if w.before != fresh:
            return False
        if w.removed is not None:
            if evaluate(verdict.rule, remove_candidate(profile, w.removed), cap=cap) != w.after:
                return False
    return True
