"""Alpha-deletion and beta-swap clone proximity for candidate pairs.

For a pair {x, y}, alpha is the fraction of voters who do not rank x and y next
to each other, and beta is the average number of adjacent swaps per voter needed
to make them neighbours everywhere.  Both are exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import kernels
from .core import CandidateId, DomainError, Profile


@dataclass(frozen=True)
class CloneScore:
    pair: tuple[CandidateId, CandidateId]
    alpha: Fraction
    beta: Fraction
    nonadjacent_count: int
    swap_count: int

    @property
    def is_perfect(self) -> bool:
        return self.nonadjacent_count == 0


@dataclass(frozen=True)
class CloneReport:
    m: int
    n: int
    scores: tuple[CloneScore, ...]
    min_alpha: Fraction
    min_beta: Fraction
    min_alpha_pairs: tuple[tuple[CandidateId, CandidateId], ...]
    min_beta_pairs: tuple[tuple[CandidateId, CandidateId], ...]
    mean_alpha: Fraction
    mean_beta: Fraction
    perfect_pairs: tuple[tuple[CandidateId, CandidateId], ...]

    def score(self, x: CandidateId, y: CandidateId) -> CloneScore:
        for s in self.scores:
            if set(s.pair) == {x, y}:
                return s
        raise DomainError(f"no pair {{{x}, {y}}} in report")


def _counts(profile: Profile):
    cached = profile.__dict__.get("_pair_counts")
    if cached is None:
        cached = kernels.pair_counts(profile.rank_array, profile.weight_array)
        profile.__dict__["_pair_counts"] = cached
    return cached


def _check_pair(profile: Profile, x: CandidateId, y: CandidateId) -> tuple[int, int]:
    i, j = profile.idx(x), profile.idx(y)
    if i == j:
        raise DomainError("a clone pair needs two distinct candidates")
    return i, j


def clone_score(profile: Profile, x: CandidateId, y: CandidateId) -> CloneScore:
    i, j = _check_pair(profile, x, y)
    nonadj, swaps = _counts(profile)
    far, moves = int(nonadj[i, j]), int(swaps[i, j])
    return CloneScore((x, y), Fraction(far, profile.n), Fraction(moves, profile.n), far, moves)


def alpha_deletion(profile: Profile, x: CandidateId, y: CandidateId) -> Fraction:
    """Smallest alpha for which x and y are alpha-deletion clones."""
    return clone_score(profile, x, y).alpha


def beta_swap(profile: Profile, x: CandidateId, y: CandidateId) -> Fraction:
    """Smallest beta for which x and y are beta-swap clones."""
    return clone_score(profile, x, y).beta


def clone_report(profile: Profile) -> CloneReport:
    """Scores for every unordered pair, with all tied minimisers and exact means."""
    if profile.m < 2:
        raise DomainError("clone reports need at least two candidates")
    nonadj, swaps = _counts(profile)
    n, cands = profile.n, profile.candidates
    scores = []
    for i, j in combinations(range(profile.m), 2):
        far, moves = int(nonadj[i, j]), int(swaps[i, j])
        scores.append(CloneScore((cands[i], cands[j]), Fraction(far, n), Fraction(moves, n), far, moves))
    min_alpha = min(s.alpha for s in scores)
    min_beta = min(s.beta for s in scores)
    npairs = len(scores)
    return CloneReport(
        m=profile.m,
        n=n,
        scores=tuple(scores),
        min_alpha=min_alpha,
        min_beta=min_beta,
        min_alpha_pairs=tuple(s.pair for s in scores if s.alpha == min_alpha),
        min_beta_pairs=tuple(s.pair for s in scores if s.beta == min_beta),
        mean_alpha=Fraction(sum(s.nonadjacent_count for s in scores), n * npairs),
        mean_beta=Fraction(sum(s.swap_count for s in scores), n * npairs),
        perfect_pairs=tuple(s.pair for s in scores if s.is_perfect),
    )


def perfect_clones(profile: Profile) -> list[tuple[CandidateId, CandidateId]]:
    """Pairs ranked next to each other by every voter."""
    return list(clone_report(profile).perfect_pairs)


def has_perfect_clones_batch(rankings):
    """Flag, for a ``(profiles, voters, m)`` integer array of rankings, which profiles contain perfect clones."""
    return kernels.perfect_clone_flags(rankings)
