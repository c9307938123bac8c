"""Bundled regression expectations for the counterexample fixtures.

Each expectation computes a value with the production code, cross-checks every
winner set against the brute-force oracles, and compares with a frozen value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import oracles
from .axioms import check_strong_independence, check_weak_independence, is_simple
from .clones import alpha_deletion, beta_swap
from .core import margin_matrix, remove_candidate
from .fixtures import FIX_EX1, FIX_IRV4, FIX_MAJ, FIX_NS, FIX_RP4, FIX_THIRD
from .rules import Rule, evaluate

_ORACLES = {Rule.IRV: oracles.irv, Rule.RANKED_PAIRS: oracles.ranked_pairs, Rule.SCHULZE: oracles.schulze}


@dataclass
class Outcome:
    name: str
    passed: bool
    expected: Any
    actual: Any

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}"
        if not self.passed:
            text += f"\n    expected: {self.expected!r}\n    actual:   {self.actual!r}"
        return text


def _fmt(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def _transitions(rule: Rule, profile, pair) -> tuple:
    """Winner sets for P, P-x, P-y; raises if any disagrees with the oracle."""
    sets = [profile] + [remove_candidate(profile, c) for c in pair]
    got = []
    for p in sets:
        fast = evaluate(rule, p)
        slow = _ORACLES[rule](p)
        if fast != slow:
            raise AssertionError(f"{rule.value} disagrees with its oracle on {p!r}: {_fmt(fast)} vs {_fmt(slow)}")
        got.append(_fmt(fast))
    return tuple(got)


def _violation(rule, profile, pair, strong: bool):
    check = check_strong_independence if strong else check_weak_independence
    verdict = check(rule, profile, pair)
    return (not verdict.satisfied, _transitions(rule, profile, pair))


def expectations() -> list[tuple[str, Callable[[], Any], Any]]:
    rp4_table = {
        ("a", "b"): 14, ("a", "c"): -8, ("a", "d"): 4,
        ("b", "c"): 12, ("b", "d"): -2, ("c", "d"): 0,
    }
    out = [
        ("FIX_EX1 alpha(a1,a2)", lambda: alpha_deletion(FIX_EX1, "a1", "a2"), Fraction(1, 10)),
        ("FIX_EX1 beta(a1,a2)", lambda: beta_swap(FIX_EX1, "a1", "a2"), Fraction(49, 5)),
        ("FIX_EX1 alpha(a1,a3)", lambda: alpha_deletion(FIX_EX1, "a1", "a3"), Fraction(2, 5)),
        ("FIX_EX1 beta(a1,a3)", lambda: beta_swap(FIX_EX1, "a1", "a3"), Fraction(2, 5)),
        ("FIX_MAJ alpha(a,b) = 1/(2k+1)", lambda: alpha_deletion(FIX_MAJ, "a", "b"), Fraction(1, 5)),
        ("FIX_MAJ alpha(b,c) = 0", lambda: alpha_deletion(FIX_MAJ, "b", "c"), Fraction(0)),
        ("FIX_IRV4 alpha(a,b) = 4/(4k+5)", lambda: alpha_deletion(FIX_IRV4, "a", "b"), Fraction(4, 9)),
        ("FIX_IRV4 beta(a,b) = alpha", lambda: beta_swap(FIX_IRV4, "a", "b"), Fraction(4, 9)),
        ("FIX_RP4 alpha(a,b) = 13/(2k+26)", lambda: alpha_deletion(FIX_RP4, "a", "b"), Fraction(13, 34)),
        ("FIX_RP4 beta(a,b) = alpha", lambda: beta_swap(FIX_RP4, "a", "b"), Fraction(13, 34)),
        ("FIX_THIRD alpha(a,b) = (2k+2)/(6k+2)", lambda: alpha_deletion(FIX_THIRD, "a", "b"), Fraction(3, 7)),
        ("FIX_RP4 margin table",
         lambda: {k: margin_matrix(FIX_RP4)[k] for k in rp4_table}, rp4_table),
        ("FIX_RP4 margins agree with direct count",
         lambda: margin_matrix(FIX_RP4).as_dict() == oracles.margins(FIX_RP4), True),
    ]
    for rule in (Rule.IRV, Rule.RANKED_PAIRS, Rule.SCHULZE):
        out.append((f"FIX_MAJ strong independence {{a,b}} violated under {rule.label}",
                    lambda rule=rule: _violation(rule, FIX_MAJ, ("a", "b"), strong=True),
                    (True, ("{a}", "{c}", "{a}"))))
        out.append((f"FIX_MAJ perfect clones {{b,c}} satisfy strong independence under {rule.label}",
                    lambda rule=rule: check_strong_independence(rule, FIX_MAJ, ("b", "c")).satisfied, True))
    out += [
        ("FIX_IRV4 weak independence {a,b} violated under IRV",
         lambda: _violation(Rule.IRV, FIX_IRV4, ("a", "b"), strong=False),
         (True, ("{a}", "{d}", "{d}"))),
        ("FIX_RP4 weak independence {a,b} violated under Ranked Pairs",
         lambda: _violation(Rule.RANKED_PAIRS, FIX_RP4, ("a", "b"), strong=False),
         (True, ("{a}", "{d}", "{c}"))),
        ("FIX_RP4 weak independence {a,b} violated under Schulze",
         lambda: _violation(Rule.SCHULZE, FIX_RP4, ("a", "b"), strong=False),
         (True, ("{a}", "{d}", "{c}"))),
        ("FIX_THIRD weak independence {a,b} violated under IRV",
         lambda: _violation(Rule.IRV, FIX_THIRD, ("a", "b"), strong=False),
         (True, ("{a}", "{b,c}", "{a,c}"))),
        ("FIX_NS is not IRV-simple", lambda: is_simple(Rule.IRV, FIX_NS), False),
        ("FIX_NS IRV winner set (PUT, oracle-checked)",
         lambda: _transitions(Rule.IRV, FIX_NS, ())[0], "{a,b,c}"),
    ]
    return out


def run() -> list[Outcome]:
    results = []
    for name, compute, expected in expectations():
        try:
            actual = compute()
            passed = actual == expected
        except Exception as exc:  # a crash is a failed expectation, with its message as the diff
            actual, passed = f"{type(exc).__name__}: {exc}", False
        results.append(Outcome(name, passed, expected, actual))
    return results
