"""Irresolute single-winner rules under parallel-universe tie-breaking (PUT).

Every rule returns a non-empty ``frozenset`` of candidate names.  Where a rule
breaks ties internally (IRV eliminations, Ranked Pairs lock order) the result is
the union over every possible resolution, computed exactly: either a winner
set is returned or :class:`~approxclones.core.ResourceError` is raised.
"""

from __future__ import annotations

from enum import Enum
from itertools import groupby
from typing import Optional

import numpy as np

from . import kernels
from .core import (DomainError, MarginMatrix, Profile, ResourceError, _as_margins, _margin_values,
                   smith_indices)

WinnerSet = frozenset

DEFAULT_CAP = 10**6


class Rule(str, Enum):
    PLURALITY = "plurality"
    BORDA = "borda"
    IRV = "irv"
    RANKED_PAIRS = "ranked_pairs"
    SCHULZE = "schulze"
    COPELAND = "copeland"

    @classmethod
    def parse(cls, text: str) -> Rule:
        key = text.strip().lower().replace("-", "_").replace(" ", "_")
        aliases = {"rp": "ranked_pairs", "rankedpairs": "ranked_pairs", "stv": "irv",
                   "instant_runoff": "irv", "tideman": "ranked_pairs"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown rule {text!r}; choose from {[r.value for r in cls]}") from None

    @property
    def label(self) -> str:
        return {"plurality": "Plurality", "borda": "Borda", "irv": "IRV",
                "ranked_pairs": "Ranked Pairs", "schulze": "Schulze",
                "copeland": "Copeland"}[self.value]


def _require_two(profile: Profile):
    if profile.m < 2:
        raise DomainError("voting rules need at least two candidates")


def _argmax_set(profile: Profile, scores) -> frozenset:
    best = max(scores)
    return frozenset(profile.candidates[i] for i, s in enumerate(scores) if s == best)


def _mask_names(profile: Profile, mask: int) -> frozenset:
    return frozenset(c for i, c in enumerate(profile.candidates) if mask >> i & 1)


def plurality(profile: Profile) -> frozenset:
    """Candidates ranked first by the most voters."""
    _require_two(profile)
    counts = kernels.first_choice_counts(profile.rank_array, profile.weight_array,
                                         np.ones(profile.m, dtype=np.uint8))
    return _argmax_set(profile, counts.tolist())


def borda(profile: Profile) -> frozenset:
    """Candidates maximising the sum of ``m - rank`` (rank 1 = top)."""
    _require_two(profile)
    pos = kernels.positions(profile.rank_array)
    scores = profile.weight_array @ (profile.m - 1 - pos)
    return _argmax_set(profile, scores.tolist())


def irv(profile: Profile, cap: int = DEFAULT_CAP) -> frozenset:
    """Instant runoff; every candidate tied for fewest first places is branched on.

    Winner sets are memoised on the set of remaining candidates, so at most
    ``2**m`` states are visited.  ``cap`` bounds that number.
    """
    _require_two(profile)
    R, W, m = profile.rank_array, profile.weight_array, profile.m
    memo: dict[int, int] = {}

    def winners(alive: int) -> int:
        hit = memo.get(alive)
        if hit is not None:
            return hit
        if alive & (alive - 1) == 0:
            return alive
        if len(memo) >= cap:
            raise ResourceError(f"IRV exceeded the cap of {cap} explored states", cap)
        live = np.array([alive >> i & 1 for i in range(m)], dtype=np.uint8)
        counts = kernels.first_choice_counts(R, W, live)
        remaining = [i for i in range(m) if alive >> i & 1]
        low = min(int(counts[i]) for i in remaining)
        out = 0
        for i in remaining:
            if counts[i] == low:
                out |= winners(alive & ~(1 << i))
        memo[alive] = out
        return out

    return _mask_names(profile, winners((1 << m) - 1))


def _lock(reach: tuple, x: int, y: int) -> tuple:
    """Transitive closure after adding edge x -> y (reach[u] = bitmask reachable from u)."""
    gain = (1 << y) | reach[y]
    return tuple(r | gain if (u == x or r >> x & 1) else r for u, r in enumerate(reach))


def ranked_pairs(profile: Profile, cap: int = DEFAULT_CAP, max_group: Optional[int] = None) -> frozenset:
    """Ranked Pairs over strictly positive margins, every lock order of equal margins explored.

    The search state is the current equal-margin group and the transitive
    closure of the locked graph; each state is expanded once, and a branch is
    cut as soon as every candidate it could still make a source is already
    known to win.  A group pair already implied
    either way by the closure has the same fate in every order, so only pairs
    still incomparable are branched on, and when those can all be locked
    together the order within the group is irrelevant.

    ``max_group`` optionally rejects equal-margin groups larger than the given size.
    """
    _require_two(profile)
    M = _margin_values(profile)
    m = profile.m
    positive = sorted(((int(M[x, y]), x, y) for x in range(m) for y in range(m) if M[x, y] > 0),
                      key=lambda t: (-t[0], t[1], t[2]))
    groups = [tuple((x, y) for _, x, y in grp) for _, grp in groupby(positive, key=lambda t: t[0])]
    if max_group is not None:
        for g in groups:
            if len(g) > max_group:
                raise ResourceError(f"Ranked Pairs tie group of {len(g)} pairs exceeds max_group={max_group}",
                                    max_group)
    # no positive edge enters the Smith set, so nothing outside it can reach a
    # Smith member to block that member's edge into it: only Smith candidates win
    goal = 0
    for i in smith_indices(M):
        goal |= 1 << i
    full = (1 << m) - 1
    seen: set = set()
    found = 0

    def uncovered(reach: tuple) -> int:
        covered = 0
        for r in reach:
            covered |= r
        return full & ~covered

    def solve(gi: int, reach: tuple):
        nonlocal found
        # pairs of the current group already ordered either way by the closure
        # have a fixed fate, so (group, closure) determines the open pairs
        while gi < len(groups):
            pending = [(x, y) for x, y in groups[gi] if not (reach[x] >> y & 1 or reach[y] >> x & 1)]
            if pending:
                break
            gi += 1
        else:
            found |= uncovered(reach)
            return
        # locking only adds edges, so every source below is uncovered now
        if not uncovered(reach) & goal & ~found or (gi, reach) in seen:
            return
        if len(seen) >= cap:
            raise ResourceError(f"Ranked Pairs exceeded the cap of {cap} explored states", cap)
        seen.add((gi, reach))
        joint = reach
        for x, y in pending:
            if joint[y] >> x & 1:
                break
            joint = _lock(joint, x, y)
        else:
            solve(gi + 1, joint)
            return
        # edges leaving a fresh candidate's region first: they fill ``found`` early
        fresh = uncovered(reach) & goal & ~found
        region = fresh
        for u in range(m):
            if fresh >> u & 1:
                region |= reach[u]
        pending.sort(key=lambda p: (not fresh >> p[0] & 1, not region >> p[0] & 1, region >> p[1] & 1))
        for x, y in pending:
            solve(gi, _lock(reach, x, y))

    solve(0, tuple(0 for _ in range(m)))
    return _mask_names(profile, found)


class BeatpathMatrix(MarginMatrix):
    """``S[x, y]``: strength of the widest path from x to y (diagonal unused, stored as 0)."""


def beatpath(margins) -> BeatpathMatrix:
    """Widest-path strengths over the complete digraph weighted by margins."""
    mm = _as_margins(margins)
    return BeatpathMatrix(mm.candidates, kernels.widest_paths(mm.values))


def schulze(profile: Profile) -> frozenset:
    """Candidates x with ``S[x, y] >= S[y, x]`` for all y; margins are the edge strengths."""
    _require_two(profile)
    S = kernels.widest_paths(_margin_values(profile))
    m = profile.m
    return frozenset(profile.candidates[x] for x in range(m)
                     if all(S[x, y] >= S[y, x] for y in range(m) if y != x))


def copeland(profile: Profile) -> frozenset:
    """Candidates maximising strict pairwise wins minus strict pairwise losses."""
    _require_two(profile)
    M = _margin_values(profile)
    scores = (M > 0).sum(axis=1) - (M < 0).sum(axis=1)
    return _argmax_set(profile, scores.tolist())


RULES = {
    Rule.PLURALITY: plurality,
    Rule.BORDA: borda,
    Rule.IRV: irv,
    Rule.RANKED_PAIRS: ranked_pairs,
    Rule.SCHULZE: schulze,
    Rule.COPELAND: copeland,
}


def evaluate(rule, profile: Profile, cap: int = DEFAULT_CAP) -> frozenset:
    """Run ``rule`` (a :class:`Rule` or its name) on ``profile``."""
    rule = rule if isinstance(rule, Rule) else Rule.parse(rule)
    if rule is Rule.IRV:
        return irv(profile, cap=cap)
    if rule is Rule.RANKED_PAIRS:
        return ranked_pairs(profile, cap=cap)
    return RULES[rule](profile)
