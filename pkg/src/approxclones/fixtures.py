"""Named example profiles used by the regression suite.

Parametric families are instantiated at the smallest ``k`` for which their strict
inequalities hold.  Every family is also exposed as a function of ``k``.
"""

from .core import Profile


def example_100(n_far: int = 1) -> Profile:
    """100 candidates, 10 voters: a1/a2 adjacent for 9 voters, far apart for one."""
    names = [f"a{i}" for i in range(1, 101)]
    a = {i: f"a{i}" for i in range(1, 101)}
    swapped = [a[2], a[1]] + [a[i] for i in range(3, 101)]
    straight = [a[i] for i in range(1, 101)]
    far = [a[1], a[3]] + [a[i] for i in range(100, 3, -1)] + [a[2]]
    return Profile.from_rankings([(5, swapped), (4, straight), (n_far, far)], names)


def majority_family(k: int) -> Profile:
    """b and c are perfect clones; a and b are 1/(2k+1)-deletion clones."""
    return Profile.from_strings([(k, "a>b>c"), (k, "c>b>a"), (1, "a>c>b")])


def irv_family(k: int) -> Profile:
    """a and b are 4/(4k+5)-deletion clones; IRV elects a, but d once either is removed."""
    return Profile.from_strings([
        (k, "a>b>c>d"), (k, "b>a>c>d"), (k, "d>a>b>c"),
        (k + 1, "c>d>a>b"), (2, "a>d>b>c"), (2, "b>d>a>c"),
    ])


def ranked_pairs_family(k: int) -> Profile:
    """a and b are 13/(2k+26)-deletion clones; margin M[a][b] = 2k+6."""
    return Profile.from_strings([
        (k + 7, "d>a>b>c"), (k, "c>a>b>d"), (10, "b>c>a>d"),
        (2, "a>b>d>c"), (3, "c>a>d>b"), (4, "d>c>a>b"),
    ])


def third_family(k: int) -> Profile:
    """Three candidates; a and b are (2k+2)/(6k+2)-deletion clones."""
    return Profile.from_strings([
        (2 * k, "c>a>b"), (k + 1, "a>c>b"), (k + 1, "b>c>a"),
        (k, "a>b>c"), (k, "b>a>c"),
    ])


def non_simple_family(k: int) -> Profile:
    """a and b tie for the first IRV elimination."""
    return Profile.from_strings([
        (1, "a>c>b"), (k, "a>b>c"), (k + 1, "b>a>c"), (2 * k, "c>a>b"),
    ])


FIX_EX1 = example_100()
FIX_MAJ = majority_family(2)
FIX_IRV4 = irv_family(1)
FIX_RP4 = ranked_pairs_family(4)
FIX_THIRD = third_family(2)
FIX_NS = non_simple_family(2)

FIXTURES = {
    "FIX_EX1": FIX_EX1,
    "FIX_MAJ": FIX_MAJ,
    "FIX_IRV4": FIX_IRV4,
    "FIX_RP4": FIX_RP4,
    "FIX_THIRD": FIX_THIRD,
    "FIX_NS": FIX_NS,
}


def identity_profile(m: int, n: int = 1) -> Profile:
    names = [chr(ord("a") + i) if m <= 26 else f"c{i + 1}" for i in range(m)]
    return Profile.from_rankings([(n, names)], names)


def three_cycle() -> Profile:
    return Profile.from_strings([(1, "a>b>c"), (1, "b>c>a"), (1, "c>a>b")])
