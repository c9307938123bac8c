from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from approxclones.clones import clone_report
from approxclones.core import DomainError, condorcet_winner
from approxclones.rules import Rule, evaluate
from approxclones.samplers import (CULTURES, CultureSpec, candidate_names, ic_rankings_batch, is_single_peaked,
                                   profile_seeds, sample)

seeds = st.integers(0, 2**64 - 1)


@pytest.mark.parametrize("culture", CULTURES)
def test_deterministic_and_valid(culture):
    spec = CultureSpec(culture, 5, 17, seed=2024)
    p, q = sample(spec), sample(spec)
    assert p == q and p.ballots == q.ballots
    assert p.m == 5
    assert p.n == (120 if culture == "UniformComplete" else 17)


def test_identity_and_antagonistic():
    p = sample(CultureSpec("Identity", 4, 5, seed=1))
    assert p.ballots == ((5, (0, 1, 2, 3)),)
    assert clone_report(p).min_alpha == 0
    a = sample(CultureSpec("Antagonistic", 5, 10, seed=1))
    assert sorted(a.ballots) == [(5, (0, 1, 2, 3, 4)), (5, (4, 3, 2, 1, 0))]
    odd = sample(CultureSpec("Antagonistic", 3, 7))
    assert dict((r, c) for c, r in odd.ballots) == {(0, 1, 2): 4, (2, 1, 0): 3}


def test_uniform_complete_m3():
    p = sample(CultureSpec("UniformComplete", 3))
    assert p.n == 6 and len(p.ballots) == 6
    for s in clone_report(p).scores:
        assert s.alpha == s.beta == Fraction(1, 3)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_uniform_complete_is_fully_tied(m):
    p = sample(CultureSpec("UniformComplete", m))
    for rule in Rule:
        assert evaluate(rule, p) == set(p.candidates)


def test_invalid_specs():
    for spec in (CultureSpec("Mallows", 3, 3), CultureSpec("IC", 0, 3), CultureSpec("IC", 3, 0),
                 CultureSpec("Urn", 3, 3, contagion=-1), CultureSpec("Euclidean", 3, 3, dimension="4"),
                 CultureSpec("UniformComplete", 10)):
        with pytest.raises(DomainError):
            sample(spec)


def test_seeds_change_samples():
    a = sample(CultureSpec("IC", 6, 30, seed=1))
    b = sample(CultureSpec("IC", 6, 30, seed=2))
    assert a != b


def test_profile_seeds_are_stable():
    assert profile_seeds(7, 3) == profile_seeds(7, 5)[:3]
    assert len(set(profile_seeds(7, 100))) == 100


@given(st.integers(2, 7), st.integers(1, 40), seeds)
def test_single_peaked_output(m, n, seed):
    p = sample(CultureSpec("SinglePeaked", m, n, seed))
    assert is_single_peaked(p)
    if n % 2 == 1:
        assert condorcet_winner(p) is not None


def test_single_peaked_is_uniform_over_the_axis():
    p = sample(CultureSpec("SinglePeaked", 4, 16000, seed=5))
    counts = [c for c, _ in p.ballots]
    assert len(counts) == 8
    assert all(abs(c - 2000) < 200 for c in counts)


@given(st.integers(2, 7), st.integers(1, 30), seeds)
def test_euclidean_line_is_single_peaked_on_positions(m, n, seed):
    p = sample(CultureSpec("Euclidean", m, n, seed, dimension="1"))
    # the sampler draws candidate points first from the profile's own stream
    points = np.random.default_rng(np.uint64(seed)).random((m, 1))[:, 0]
    axis = list(np.argsort(points, kind="stable"))
    assert is_single_peaked(p, axis)


@given(st.integers(2, 7), st.integers(1, 30), seeds)
def test_single_crossing_output(m, n, seed):
    p = sample(CultureSpec("SingleCrossing", m, n, seed))
    # order the distinct rankings by inversion count; each pair flips at most once
    def inversions(r):
        return sum(1 for i, j in combinations(range(m), 2) if r[i] > r[j])
    rows = sorted((r for _, r in p.ballots), key=inversions)
    for x, y in combinations(range(m), 2):
        prefs = [r.index(x) < r.index(y) for r in rows]
        assert sum(a != b for a, b in zip(prefs, prefs[1:])) <= 1


@pytest.mark.parametrize("dimension", ["1", "2", "3", "circle"])
def test_euclidean_spaces(dimension):
    p = sample(CultureSpec("Euclidean", 6, 25, seed=3, dimension=dimension))
    assert p.n == 25


def test_urn_contagion_extremes():
    # zero contagion is IC; huge contagion almost always copies the first ballot
    assert len(sample(CultureSpec("Urn", 6, 50, seed=9, contagion=0.0)).ballots) > 30
    assert len(sample(CultureSpec("Urn", 6, 50, seed=9, contagion=1e9)).ballots) == 1


def test_ic_is_roughly_uniform():
    p = sample(CultureSpec("IC", 3, 60000, seed=4))
    counts = Counter({r: c for c, r in p.ballots})
    assert len(counts) == 6 and all(abs(c - 10000) < 400 for c in counts.values())


def test_ic_batch_shapes():
    chunks = list(ic_rankings_batch(4, 5, 250, seed=1, chunk=100))
    assert [c.shape for c in chunks] == [(100, 5, 4), (100, 5, 4), (50, 5, 4)]
    assert all((np.sort(c, axis=2) == np.arange(4)).all() for c in chunks)


def test_describe_records_parameters():
    d = CultureSpec("Urn", 4, 9, seed=3, contagion=0.25).describe()
    assert d["contagion"] == 0.25 and "dimension" not in d
    assert "sampler" in CultureSpec("SinglePeaked", 4, 9).describe()
    assert CultureSpec("UniformComplete", 4).describe()["n"] == 24


def test_candidate_names():
    assert candidate_names(3) == ["a", "b", "c"]
    assert candidate_names(30)[-1] == "c30"
