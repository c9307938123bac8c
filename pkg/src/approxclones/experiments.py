"""Randomised property suites over mixed cultures.

Each suite returns a plain dict of counters so callers (tests, the CLI) can
print or assert on them.  All suites are deterministic for a given seed.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .axioms import Outcomes, check_strong_independence, check_weak_independence
from .clones import clone_report, has_perfect_clones_batch
from .core import Profile, smith_indices, _margin_values
from .rules import Rule
from .samplers import CultureSpec, ic_rankings_batch, sample

MIXED = (
    ("IC", {}),
    ("Urn", {"contagion": 0.05}),
    ("Urn", {"contagion": 0.5}),
    ("SinglePeaked", {}),
    ("SingleCrossing", {}),
    ("Euclidean", {"dimension": "1"}),
    ("Euclidean", {"dimension": "2"}),
    ("Euclidean", {"dimension": "circle"}),
    ("Antagonistic", {}),
    ("Identity", {}),
)

# cycles are rare in structured cultures; weight impartial ones for Smith-set suites
CYCLIC = (
    ("IC", {}),
    ("IC", {}),
    ("IC", {}),
    ("Urn", {"contagion": 0.05}),
    ("Euclidean", {"dimension": "2"}),
    ("Euclidean", {"dimension": "circle"}),
    ("SingleCrossing", {}),
)


def random_profile(rng: np.random.Generator, m: int, n: int, cultures=MIXED) -> Profile:
    culture, params = cultures[int(rng.integers(len(cultures)))]
    seed = int(rng.integers(2**63))
    return sample(CultureSpec(culture, m, n, seed, **params))


def prop1_suite(trials: int, seed: int = 0) -> dict:
    """Mean alpha and beta over all pairs against (m-2)/m and (m-2)/3, exactly."""
    rng = np.random.default_rng(seed)
    bad = []
    for t in range(trials):
        m, n = int(rng.integers(2, 11)), int(rng.integers(1, 101))
        rep = clone_report(random_profile(rng, m, n))
        if rep.mean_alpha != Fraction(m - 2, m) or rep.mean_beta != Fraction(m - 2, 3):
            bad.append(t)
    return {"trials": trials, "mismatches": len(bad), "first_mismatches": bad[:5]}


def thm4_suite(trials: int, seed: int = 0, max_n: int = 30) -> dict:
    """Three candidates: weak independence on simple profiles (IRV only for alpha <= 1/3)."""
    rng = np.random.default_rng(seed)
    stats = {r.value: {"simple_profiles": 0, "pairs_checked": 0, "violations": 0, "examples": []}
             for r in (Rule.IRV, Rule.RANKED_PAIRS, Rule.SCHULZE)}
    third = Fraction(1, 3)
    for _ in range(trials):
        p = random_profile(rng, 3, int(rng.integers(1, max_n + 1)))
        rep = clone_report(p)
        for rule in (Rule.IRV, Rule.RANKED_PAIRS, Rule.SCHULZE):
            out = Outcomes(rule, p)
            if len(out.full) != 1:
                continue
            s = stats[rule.value]
            s["simple_profiles"] += 1
            for score in rep.scores:
                if rule is Rule.IRV and score.alpha > third:
                    continue
                s["pairs_checked"] += 1
                if not check_weak_independence(rule, p, score.pair, outcomes=out).satisfied:
                    s["violations"] += 1
                    if len(s["examples"]) < 3:
                        s["examples"].append((p, score.pair))
    return {"trials": trials, **stats}


def thm5_suite(trials: int, seed: int = 0, m_range=(3, 7), max_n: int = 51, cultures=CYCLIC) -> dict:
    """Odd n with a Smith set of at most three: weak independence under Ranked Pairs and Schulze.

    Violations are split by whether the rule had a single winner on the original
    profile (``simple_violations``) or several (``nonsimple_violations``).
    """
    rng = np.random.default_rng(seed)
    stats = {r.value: {"pairs_checked": 0, "violations": 0, "simple_violations": 0,
                       "nonsimple_violations": 0, "nonsimple_profiles": 0, "examples": []}
             for r in (Rule.RANKED_PAIRS, Rule.SCHULZE)}
    accepted = rejected = 0
    smith_sizes: dict = {}
    while accepted < trials:
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        n = 2 * int(rng.integers(0, (max_n + 1) // 2)) + 1
        p = random_profile(rng, m, n, cultures)
        size = len(smith_indices(_margin_values(p)))
        if size > 3:
            rejected += 1
            continue
        accepted += 1
        smith_sizes[size] = smith_sizes.get(size, 0) + 1
        for rule in (Rule.RANKED_PAIRS, Rule.SCHULZE):
            out = Outcomes(rule, p)
            s = stats[rule.value]
            simple = len(out.full) == 1
            s["nonsimple_profiles"] += not simple
            for i in range(p.m):
                for j in range(i + 1, p.m):
                    pair = (p.candidates[i], p.candidates[j])
                    s["pairs_checked"] += 1
                    if not check_weak_independence(rule, p, pair, outcomes=out).satisfied:
                        s["violations"] += 1
                        s["simple_violations" if simple else "nonsimple_violations"] += 1
                        if len(s["examples"]) < 3:
                            s["examples"].append((p, pair))
    return {"trials": trials, "rejected": rejected, "smith_sizes": smith_sizes, **stats}


def add_clone(profile: Profile, target: str, rng: np.random.Generator, name: str = None) -> Profile:
    """Insert a new candidate directly above or below ``target`` in every ballot."""
    name = name or f"{target}_clone"
    x = profile.idx(target)
    new = profile.m
    ballots = []
    for count, ranking in profile.ballots:
        for _ in range(count):
            k = ranking.index(x) + int(rng.integers(2))
            ballots.append((1, ranking[:k] + (new,) + ranking[k:]))
    return Profile(profile.candidates + (name,), tuple(ballots)).merged()


def perfect_clone_suite(trials: int, seed: int = 0, rules=(Rule.IRV, Rule.RANKED_PAIRS, Rule.SCHULZE)) -> dict:
    """Random profile plus a constructed perfect clone: the strong conditions must hold."""
    rng = np.random.default_rng(seed)
    stats = {r.value: {"violations": 0, "examples": []} for r in rules}
    for _ in range(trials):
        m, n = int(rng.integers(2, 6)), int(rng.integers(1, 21))
        base = random_profile(rng, m, n)
        target = base.candidates[int(rng.integers(m))]
        p = add_clone(base, target, rng)
        pair = (target, p.candidates[-1])
        assert clone_report(p).score(*pair).alpha == 0
        for rule in rules:
            if not check_strong_independence(rule, p, pair).satisfied:
                s = stats[rule.value]
                s["violations"] += 1
                if len(s["examples"]) < 3:
                    s["examples"].append((p, pair))
    return {"trials": trials, **stats}


def ic_perfect_clone_frequency(m: int, n: int, count: int, seed: int = 0) -> float:
    """Fraction of IC profiles containing at least one perfect-clone pair."""
    hits = 0
    for chunk in ic_rankings_batch(m, n, count, seed):
        hits += int(has_perfect_clones_batch(chunk).sum())
    return hits / count
