"""Ordinal preference profiles and the pairwise-majority primitives built on them.

A :class:`Profile` holds complete strict rankings with multiplicities.  Candidates
are addressed by name in the public API; internally every ranking is a tuple of
0-based candidate indices into ``Profile.candidates``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels

CandidateId = str
Ranking = tuple[int, ...]


class DomainError(ValueError):
    """Raised when an operation receives inputs outside its domain."""


class ResourceError(RuntimeError):
    """Raised when an exact computation would exceed its configured budget."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


@dataclass(frozen=True, eq=False)
class Profile:
    """Complete strict rankings over ``candidates``, stored as ``(count, ranking)``.

    Parameters
    ----------
    candidates : tuple of str
        Distinct candidate names; the position in this tuple is the internal index.
    ballots : tuple of (int, tuple of int)
        Multiplicity and ranking (best first) as candidate indices.
    """

    candidates: tuple[CandidateId, ...]
    ballots: tuple[tuple[int, Ranking], ...]

    def __post_init__(self):
        m = len(self.candidates)
        if m < 1:
            raise DomainError("a profile needs at least one candidate")
        if len(set(self.candidates)) != m:
            raise DomainError("candidate ids must be distinct")
        if not self.ballots:
            raise DomainError("a profile needs at least one ballot")
        full = set(range(m))
        for count, ranking in self.ballots:
            if not isinstance(count, (int, np.integer)) or count < 1:
                raise DomainError(f"ballot multiplicity must be a positive integer, got {count!r}")
            if len(ranking) != m or set(ranking) != full:
                raise DomainError(f"ranking {ranking!r} is not a permutation of the {m} candidates")

    @classmethod
    def from_rankings(
        cls,
        ballots: Iterable[tuple[int, Sequence[CandidateId]]],
        candidates: Optional[Sequence[CandidateId]] = None,
    ) -> Profile:
        """Build a profile from ``(count, [name, name, ...])`` pairs.

        If ``candidates`` is omitted, the order of the first ranking is used.
        """
        ballots = [(int(c), tuple(r)) for c, r in ballots]
        if candidates is None:
            if not ballots:
                raise DomainError("a profile needs at least one ballot")
            candidates = ballots[0][1]
        candidates = tuple(candidates)
        index = {c: i for i, c in enumerate(candidates)}
        try:
            encoded = tuple((c, tuple(index[x] for x in r)) for c, r in ballots)
        except KeyError as exc:
            raise DomainError(f"unknown candidate {exc.args[0]!r}") from None
        return cls(candidates, encoded)

    @classmethod
    def from_strings(cls, lines: Iterable[tuple[int, str]], sep: str = ">") -> Profile:
        """Shorthand used by fixtures: ``[(2, "a>b>c"), (1, "c>b>a")]``."""
        items = [(c, [s.strip() for s in r.split(sep)]) for c, r in lines]
        return cls.from_rankings(items, sorted(items[0][1]))

    @property
    def m(self) -> int:
        return len(self.candidates)

    @cached_property
    def n(self) -> int:
        return sum(c for c, _ in self.ballots)

    @cached_property
    def index(self) -> dict[CandidateId, int]:
        return {c: i for i, c in enumerate(self.candidates)}

    @cached_property
    def rank_array(self) -> np.ndarray:
        return np.ascontiguousarray(np.array([r for _, r in self.ballots], dtype=np.int64).reshape(-1, self.m))

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.array([c for c, _ in self.ballots], dtype=np.int64)

    def idx(self, candidate: CandidateId) -> int:
        try:
            return self.index[candidate]
        except KeyError:
            raise DomainError(f"unknown candidate {candidate!r}") from None

    def names(self, indices: Iterable[int]) -> frozenset[CandidateId]:
        return frozenset(self.candidates[i] for i in indices)

    def rankings(self) -> list[tuple[int, tuple[CandidateId, ...]]]:
        """Ballots with candidate names instead of indices."""
        return [(c, tuple(self.candidates[i] for i in r)) for c, r in self.ballots]

    def ballot_counter(self) -> Counter:
        counter: Counter = Counter()
        for count, ranking in self.rankings():
            counter[ranking] += count
        return counter

    def merged(self) -> Profile:
        """Same profile with identical rankings merged and ballots sorted."""
        counter: Counter = Counter()
        for count, ranking in self.ballots:
            counter[ranking] += count
        return Profile(self.candidates, tuple((counter[r], r) for r in sorted(counter)))

    def relabel(self, mapping: dict[CandidateId, CandidateId]) -> Profile:
        return Profile(tuple(mapping[c] for c in self.candidates), self.ballots)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return set(self.candidates) == set(other.candidates) and self.ballot_counter() == other.ballot_counter()

    def __hash__(self):
        return hash((frozenset(self.candidates), frozenset(self.ballot_counter().items())))

    def __repr__(self):
        head = " ; ".join(f"{c}: {'>'.join(r)}" for c, r in self.rankings()[:4])
        more = " ; ..." if len(self.ballots) > 4 else ""
        return f"Profile(m={self.m}, n={self.n}, {head}{more})"


def position(profile: Profile, ballot: int, candidate: CandidateId) -> int:
    """1-based rank of ``candidate`` in ballot number ``ballot`` (1 = top)."""
    if not 0 <= ballot < len(profile.ballots):
        raise DomainError(f"ballot index {ballot} out of range")
    return profile.ballots[ballot][1].index(profile.idx(candidate)) + 1


def remove_candidate(profile: Profile, candidate: CandidateId) -> Profile:
    """Project the profile onto all candidates except ``candidate``."""
    x = profile.idx(candidate)
    if profile.m < 2:
        raise DomainError("cannot remove the last candidate")
    shift = [i if i < x else i - 1 for i in range(profile.m)]
    ballots = tuple((c, tuple(shift[i] for i in r if i != x)) for c, r in profile.ballots)
    return Profile(profile.candidates[:x] + profile.candidates[x + 1:], ballots)


def remove_candidates(profile: Profile, candidates: Iterable[CandidateId]) -> Profile:
    for c in candidates:
        profile = remove_candidate(profile, c)
    return profile


@dataclass(frozen=True, eq=False)
class MarginMatrix:
    """Pairwise majority margins with candidate names; ``M["a", "b"]`` reads one entry."""

    candidates: tuple[CandidateId, ...]
    values: np.ndarray

    def __getitem__(self, key: tuple[CandidateId, CandidateId]) -> int:
        x, y = key
        index = {c: i for i, c in enumerate(self.candidates)}
        return int(self.values[index[x], index[y]])

    def __eq__(self, other):
        if not isinstance(other, MarginMatrix):
            return NotImplemented
        return self.candidates == other.candidates and np.array_equal(self.values, other.values)

    def as_dict(self) -> dict[tuple[CandidateId, CandidateId], int]:
        return {(x, y): int(self.values[i, j])
                for i, x in enumerate(self.candidates) for j, y in enumerate(self.candidates)}


def margin_matrix(profile: Profile) -> MarginMatrix:
    """Antisymmetric matrix ``M[x, y] = n(x > y) - n(y > x)``."""
    return MarginMatrix(profile.candidates, _margin_values(profile))


def _margin_values(profile: Profile) -> np.ndarray:
    cached = profile.__dict__.get("_margins")
    if cached is None:
        cached = kernels.margins(profile.rank_array, profile.weight_array)
        cached.setflags(write=False)
        profile.__dict__["_margins"] = cached
    return cached


def _as_margins(source) -> MarginMatrix:
    return margin_matrix(source) if isinstance(source, Profile) else source


def condorcet_index(M: np.ndarray) -> Optional[int]:
    m = M.shape[0]
    for x in range(m):
        if all(M[x, y] > 0 for y in range(m) if y != x):
            return x
    return None


def condorcet_winner(margins) -> Optional[CandidateId]:
    """The candidate with a positive margin against every other candidate, if any.

    Accepts a :class:`MarginMatrix` or a :class:`Profile`.
    """
    mm = _as_margins(margins)
    x = condorcet_index(mm.values)
    return None if x is None else mm.candidates[x]


def smith_indices(M: np.ndarray) -> frozenset[int]:
    """Smith set over internal indices.

    A member of a dominant set has strictly more pairwise wins than any outsider,
    so dominant sets are prefixes of the candidates sorted by win count.
    """
    m = M.shape[0]
    wins = (M > 0).sum(axis=1)
    order = sorted(range(m), key=lambda x: -int(wins[x]))
    for size in range(1, m):
        inside, outside = order[:size], order[size:]
        if int(wins[inside[-1]]) == int(wins[outside[0]]):
            continue
        if all(M[x, y] > 0 for x in inside for y in outside):
            return frozenset(inside)
    return frozenset(range(m))


def smith_set(margins) -> frozenset[CandidateId]:
    """Smallest non-empty set of candidates that all strictly beat every outsider."""
    mm = _as_margins(margins)
    return frozenset(mm.candidates[i] for i in smith_indices(mm.values))


def is_dominant(M: np.ndarray, subset: Iterable[int]) -> bool:
    subset = set(subset)
    outside = [y for y in range(M.shape[0]) if y not in subset]
    return bool(subset) and all(M[x, y] > 0 for x in subset for y in outside)


def pairs(profile: Profile) -> list[tuple[CandidateId, CandidateId]]:
    """All unordered candidate pairs in candidate order."""
    return list(combinations(profile.candidates, 2))
