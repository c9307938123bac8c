"""Seeded statistical cultures.

Randomness scheme: each profile owns one ``numpy.random.Generator`` built from
its 64-bit seed (PCG64 via ``default_rng``).  Whatever the culture draws first
(a domain, candidate points) comes first from that stream; ballot ``i`` then
uses the ``i``-th row of the per-ballot draws, so a profile depends only on its
own seed and never on the order in which a batch is evaluated.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import permutations
from math import factorial
from typing import Optional

import numpy as np

from .core import DomainError, Profile

CULTURES = ("IC", "Identity", "Antagonistic", "UniformComplete", "Urn",
            "SinglePeaked", "SingleCrossing", "Euclidean")

DEFAULT_CONTAGION = 0.1
EUCLIDEAN_SPACES = ("1", "2", "3", "circle")
MAX_UNIFORM_M = 9


@dataclass(frozen=True)
class CultureSpec:
    culture: str
    m: int
    n: int = 1
    seed: int = 0
    contagion: float = DEFAULT_CONTAGION
    dimension: str = "2"
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def describe(self) -> dict:
        out = asdict(self)
        out.pop("extra")
        if self.culture != "Urn":
            out.pop("contagion")
        if self.culture != "Euclidean":
            out.pop("dimension")
        if self.culture == "SinglePeaked":
            out["sampler"] = "uniform over the axis (bottom-up, either end of the remaining interval)"
        if self.culture == "UniformComplete":
            out["n"] = factorial(self.m)
        return out


def candidate_names(m: int) -> list[str]:
    if m <= 26:
        return [chr(ord("a") + i) for i in range(m)]
    return [f"c{i + 1}" for i in range(m)]


def _profile(m: int, rankings) -> Profile:
    names = candidate_names(m)
    rows = [tuple(int(c) for c in r) for r in rankings]
    return Profile(tuple(names), tuple((1, r) for r in rows)).merged()


def _validate(spec: CultureSpec):
    if spec.culture not in CULTURES:
        raise DomainError(f"unknown culture {spec.culture!r}; choose from {CULTURES}")
    if spec.m < 1:
        raise DomainError("m must be at least 1")
    if spec.culture != "UniformComplete" and spec.n < 1:
        raise DomainError("n must be at least 1")
    if spec.culture == "Urn" and spec.contagion < 0:
        raise DomainError("urn contagion must be non-negative")
    if spec.culture == "Euclidean" and str(spec.dimension) not in EUCLIDEAN_SPACES:
        raise DomainError(f"Euclidean dimension must be one of {EUCLIDEAN_SPACES}")
    if spec.culture == "UniformComplete" and spec.m > MAX_UNIFORM_M:
        raise DomainError(f"UniformComplete supports m <= {MAX_UNIFORM_M}")


def _ic(rng, m, n):
    return np.argsort(rng.random((n, m)), axis=1, kind="stable")


def _urn(rng, m, n, contagion):
    # Polya-Eggenberger urn started with every ranking once; each draw adds
    # contagion * m! copies, so draw t is fresh with probability 1 / (1 + t * contagion)
    fresh = _ic(rng, m, n)
    u = rng.random(n)
    pick = rng.random(n)
    out = np.empty((n, m), dtype=np.int64)
    for t in range(n):
        if t == 0 or u[t] * (1 + t * contagion) < 1:
            out[t] = fresh[t]
        else:
            out[t] = out[int(pick[t] * t)]
    return out


def _single_peaked(rng, m, n):
    # fill positions m..2 from the bottom with one end of the remaining axis interval
    sides = rng.random((n, max(m - 1, 0))) < 0.5
    out = np.empty((n, m), dtype=np.int64)
    for v in range(n):
        lo, hi = 0, m - 1
        for k in range(m - 1, 0, -1):
            if sides[v, m - 1 - k]:
                out[v, k] = lo
                lo += 1
            else:
                out[v, k] = hi
                hi -= 1
        out[v, 0] = lo
    return out


def _single_crossing_domain(rng, m):
    # a maximal chain from the canonical order to its reverse; each pair swaps once
    current = list(range(m))
    domain = [tuple(current)]
    while True:
        swappable = [i for i in range(m - 1) if current[i] < current[i + 1]]
        if not swappable:
            break
        i = swappable[int(rng.integers(len(swappable)))]
        current[i], current[i + 1] = current[i + 1], current[i]
        domain.append(tuple(current))
    return domain


def _euclidean(rng, m, n, dimension):
    if dimension == "circle":
        cand = rng.random(m) * 2 * np.pi
        vote = rng.random(n) * 2 * np.pi
        cand = np.stack([np.cos(cand), np.sin(cand)], axis=1)
        vote = np.stack([np.cos(vote), np.sin(vote)], axis=1)
    else:
        d = int(dimension)
        cand = rng.random((m, d))
        vote = rng.random((n, d))
    dist = np.linalg.norm(vote[:, None, :] - cand[None, :, :], axis=2)
    return np.argsort(dist, axis=1, kind="stable")


def sample(spec: CultureSpec) -> Profile:
    """Draw one profile; identical specs give identical profiles."""
    _validate(spec)
    m, n = spec.m, spec.n
    rng = np.random.default_rng(np.uint64(spec.seed % 2**64))
    culture = spec.culture
    if culture == "IC":
        rankings = _ic(rng, m, n)
    elif culture == "Identity":
        rankings = [range(m)] * n
    elif culture == "Antagonistic":
        rankings = [range(m)] * ((n + 1) // 2) + [range(m - 1, -1, -1)] * (n // 2)
    elif culture == "UniformComplete":
        rankings = list(permutations(range(m)))
    elif culture == "Urn":
        rankings = _urn(rng, m, n, spec.contagion)
    elif culture == "SinglePeaked":
        rankings = _single_peaked(rng, m, n)
    elif culture == "SingleCrossing":
        domain = _single_crossing_domain(rng, m)
        rankings = [domain[i] for i in rng.integers(len(domain), size=n)]
    else:
        rankings = _euclidean(rng, m, n, str(spec.dimension))
    return _profile(m, rankings)


def ic_rankings_batch(m: int, n: int, count: int, seed: int, chunk: int = 100_000):
    """Yield ``(k, n, m)`` int8 arrays of IC rankings, ``count`` profiles in total.

    A single stream seeded by ``seed`` feeds the whole batch; intended for
    frequency estimates over very many profiles.
    """
    if m > 127:
        raise DomainError("batch IC sampling supports m <= 127")
    rng = np.random.default_rng(seed)
    done = 0
    while done < count:
        k = min(chunk, count - done)
        yield np.argsort(rng.random((k, n, m)), axis=2).astype(np.int8)
        done += k


def profile_seeds(root_seed: int, count: int) -> list[int]:
    """Per-profile 64-bit seeds derived deterministically from a root seed."""
    return [int(s) for s in np.random.SeedSequence(root_seed).generate_state(count, dtype=np.uint64)]


def is_single_peaked(profile: Profile, axis: Optional[list] = None) -> bool:
    """Every top-k set of every ballot is contiguous on ``axis`` (default: candidate order)."""
    axis = list(axis) if axis is not None else list(range(profile.m))
    where = {c: i for i, c in enumerate(axis)}
    for _, ranking in profile.ballots:
        lo = hi = where[ranking[0]]
        for c in ranking[1:]:
            p = where[c]
            if p == lo - 1:
                lo = p
            elif p == hi + 1:
                hi = p
            else:
                return False
    return True
