"""Brute-force reference implementations.

Deliberately naive: no memoisation, no shortcuts, no caps, no shared code with
the production rules beyond ``Profile`` itself.  Only fit for small profiles.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from .core import Profile


def margins(profile: Profile) -> dict:
    """Margins by direct pairwise counting over ballot rankings."""
    out = {}
    for x in profile.candidates:
        for y in profile.candidates:
            if x == y:
                out[x, y] = 0
                continue
            above = below = 0
            for count, ranking in profile.rankings():
                if ranking.index(x) < ranking.index(y):
                    above += count
                else:
                    below += count
            out[x, y] = above - below
    return out


def _project(ballots, removed):
    return [(c, tuple(z for z in r if z != removed)) for c, r in ballots]


def irv(profile: Profile) -> frozenset:
    """Union of IRV winners over every elimination order allowed by ties."""

    def run(ballots, alive):
        if len(alive) == 1:
            return set(alive)
        tally = {c: 0 for c in alive}
        for count, ranking in ballots:
            tally[ranking[0]] += count
        low = min(tally.values())
        winners = set()
        for c in alive:
            if tally[c] == low:
                winners |= run(_project(ballots, c), [z for z in alive if z != c])
        return winners

    return frozenset(run(profile.rankings(), list(profile.candidates)))


def _creates_cycle(edges, x, y):
    # does y already reach x?
    stack, seen = [y], set()
    while stack:
        u = stack.pop()
        if u == x:
            return True
        if u in seen:
            continue
        seen.add(u)
        stack.extend(v for (w, v) in edges if w == u)
    return False


def ranked_pairs_orders(profile: Profile):
    """Every lock order: the positive-margin pairs sorted by margin, ties permuted freely."""
    M = margins(profile)
    pos = [(M[x, y], x, y) for x in profile.candidates for y in profile.candidates if M[x, y] > 0]
    levels = sorted({v for v, _, _ in pos}, reverse=True)
    groups = [[(x, y) for v, x, y in pos if v == level] for level in levels]
    for choice in product(*(permutations(g) for g in groups)):
        yield [pair for group in choice for pair in group]


def ranked_pairs_universes(profile: Profile) -> int:
    from math import factorial, prod
    M = margins(profile)
    values = [M[x, y] for x in profile.candidates for y in profile.candidates if M[x, y] > 0]
    return prod(factorial(values.count(v)) for v in set(values))


def ranked_pairs(profile: Profile) -> frozenset:
    """Union over all lock orders of the unbeaten candidates of the locked graph."""
    winners = set()
    for order in ranked_pairs_orders(profile):
        edges = []
        for x, y in order:
            if not _creates_cycle(edges, x, y):
                edges.append((x, y))
        beaten = {y for _, y in edges}
        winners |= {c for c in profile.candidates if c not in beaten}
    return frozenset(winners)


def _reaches(edges, u, target) -> bool:
    return _creates_cycle(edges, target, u)


def ranked_pairs_subsets(profile: Profile) -> frozenset:
    """Ranked Pairs winners from the subset characterisation, without lock orders.

    Within an equal-margin group, the pairs one lock order keeps are exactly a
    subset S such that the locked edges plus S are acyclic and every other pair
    of the group would close a cycle.  All subsets of every group are tried.
    """
    M = margins(profile)
    pos = [(M[x, y], x, y) for x in profile.candidates for y in profile.candidates if M[x, y] > 0]
    levels = sorted({v for v, _, _ in pos}, reverse=True)
    states = {frozenset()}
    for level in levels:
        group = [(x, y) for v, x, y in pos if v == level]
        nxt = set()
        for locked in states:
            for mask in range(1 << len(group)):
                chosen = [group[i] for i in range(len(group)) if mask >> i & 1]
                edges = list(locked)
                ok = True
                for x, y in chosen:
                    if _creates_cycle(edges, x, y):
                        ok = False
                        break
                    edges.append((x, y))
                if ok and all(_reaches(edges, y, x) for i, (x, y) in enumerate(group) if not mask >> i & 1):
                    nxt.add(frozenset(edges))
        states = nxt
    winners = set()
    for edges in states:
        beaten = {y for _, y in edges}
        winners |= {c for c in profile.candidates if c not in beaten}
    return frozenset(winners)


def beatpath(profile: Profile) -> dict:
    """Widest path strength for every ordered pair, by enumerating all simple paths."""
    M = margins(profile)
    cands = profile.candidates
    out = {}
    for x in cands:
        for y in cands:
            if x == y:
                continue
            others = [z for z in cands if z not in (x, y)]
            best = None
            for k in range(len(others) + 1):
                for middle in permutations(others, k):
                    path = (x,) + middle + (y,)
                    strength = min(M[path[i], path[i + 1]] for i in range(len(path) - 1))
                    best = strength if best is None else max(best, strength)
            out[x, y] = best
    return out


def schulze(profile: Profile) -> frozenset:
    S = beatpath(profile)
    return frozenset(x for x in profile.candidates
                     if all(S[x, y] >= S[y, x] for y in profile.candidates if y != x))


def smith_set(profile: Profile) -> frozenset:
    """Smallest dominant subset, scanning every subset by increasing size."""
    M = margins(profile)
    cands = profile.candidates
    for size in range(1, len(cands) + 1):
        for subset in combinations(cands, size):
            outside = [y for y in cands if y not in subset]
            if all(M[x, y] > 0 for x in subset for y in outside):
                return frozenset(subset)
    raise AssertionError("the full candidate set is always dominant")


def dominant_sets(profile: Profile) -> list:
    M = margins(profile)
    cands = profile.candidates
    found = []
    for size in range(1, len(cands) + 1):
        for subset in combinations(cands, size):
            outside = [y for y in cands if y not in subset]
            if all(M[x, y] > 0 for x in subset for y in outside):
                found.append(frozenset(subset))
    return found


def alpha_beta(profile: Profile, x, y) -> tuple[Fraction, Fraction]:
    """Per-ballot position gaps, read straight from the rankings."""
    far = swaps = 0
    for count, ranking in profile.rankings():
        gap = abs(ranking.index(x) - ranking.index(y))
        if gap > 1:
            far += count
        swaps += count * (gap - 1)
    return Fraction(far, profile.n), Fraction(swaps, profile.n)


def min_adjacent_swaps(ranking, x, y) -> int:
    """Fewest adjacent transpositions making x and y neighbours, by breadth-first search."""
    start = tuple(ranking)
    frontier, seen, depth = [start], {start}, 0
    while True:
        nxt = []
        for r in frontier:
            if abs(r.index(x) - r.index(y)) == 1:
                return depth
            for i in range(len(r) - 1):
                s = r[:i] + (r[i + 1], r[i]) + r[i + 2:]
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier, depth = nxt, depth + 1
