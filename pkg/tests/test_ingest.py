import pytest
from hypothesis import given

from approxclones.clones import clone_report
from approxclones.core import Profile, margin_matrix
from approxclones.fixtures import FIX_MAJ, FIX_RP4, FIXTURES
from approxclones.ingest import (DROP, STRICT, IngestError, attach_parties, parse_election, party_relation,
                                 read_raw, serialize_profile)
from approxclones.rules import Rule, evaluate

from conftest import profiles

BASIC = """# NUMBER ALTERNATIVES: 3
# ALTERNATIVE NAME 1: Alice
# ALTERNATIVE NAME 2: Bob
# ALTERNATIVE NAME 3: Carol
2: 1,2,3
1: 3,2,1
"""


def test_basic_read():
    p, raw = parse_election(BASIC)
    assert (p.n, p.m) == (3, 3)
    assert p.candidates == ("Alice", "Bob", "Carol")
    assert raw.metadata["NUMBER ALTERNATIVES"] == "3"
    assert raw.discarded_voters == 0


def test_drop_incomplete_reports_discards():
    p, raw = parse_election(BASIC + "4: 1,2\n", DROP)
    assert p == parse_election(BASIC)[0]
    assert raw.discarded_voters == 4 and raw.discarded_ballots == 1
    with pytest.raises(IngestError):
        parse_election(BASIC + "4: 1,2\n", STRICT)


@pytest.mark.parametrize("line, message", [
    ("1: 1,1,2", "repeated"),
    ("1: 1,2,7", "unknown"),
    ("0: 1,2,3", "positive"),
    ("-2: 1,2,3", "positive"),
    ("1: 1,{2,3}", "tied"),
    ("x: 1,2,3", "multiplicity"),
    ("1 1,2,3", "expected"),
])
def test_malformed_lines(line, message):
    with pytest.raises(IngestError, match=message):
        parse_election(BASIC + line + "\n")


def test_errors_carry_line_numbers():
    with pytest.raises(IngestError) as info:
        parse_election(BASIC + "1: 1,1,2\n")
    assert info.value.line == 7


def test_empty_and_all_incomplete():
    with pytest.raises(IngestError):
        parse_election("")
    with pytest.raises(IngestError):
        parse_election("# NUMBER ALTERNATIVES: 3\n2: 1,2\n")


def test_duplicate_rankings_merge():
    p, _ = parse_election(BASIC + "3: 1,2,3\n")
    assert p.ballots == ((5, (0, 1, 2)), (1, (2, 1, 0)))


def test_serialize_majority_family():
    text = serialize_profile(FIX_MAJ)
    assert "# NUMBER ALTERNATIVES: 3" in text and "# NUMBER VOTERS: 5" in text
    assert text.endswith("\n") and "\r" not in text
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert body == ["2: 1,2,3", "1: 1,3,2", "2: 3,2,1"]
    assert parse_election(text)[0] == FIX_MAJ


def test_serialize_merges_duplicate_lines():
    p = Profile.from_strings([(1, "a>b"), (2, "b>a"), (1, "a>b")])
    body = [ln for ln in serialize_profile(p).splitlines() if not ln.startswith("#")]
    assert body == ["2: 1,2", "2: 2,1"]


def test_serialize_is_canonical():
    p = Profile.from_strings([(1, "b>a"), (2, "a>b")])
    q = Profile.from_strings([(2, "a>b"), (1, "b>a")])
    assert serialize_profile(p) == serialize_profile(q)


def test_names_default_to_ids():
    text = "# NUMBER ALTERNATIVES: 2\n1: 1,2\n1: 2,1\n"
    p, _ = parse_election(text)
    assert p.candidates == ("1", "2")
    dup = "# ALTERNATIVE NAME 1: X\n# ALTERNATIVE NAME 2: X\n1: 1,2\n"
    assert parse_election(dup)[0].candidates == ("1", "2")


def test_legacy_layout():
    text = "3\n1,Alice\n2,Bob\n3,Carol\n5,5,2\n3,1,2,3\n2,3,1,2\n"
    p, raw = parse_election(text)
    assert p.candidates == ("Alice", "Bob", "Carol")
    assert p.ballots == ((3, (0, 1, 2)), (2, (2, 0, 1)))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_round_trip(name):
    p = FIXTURES[name]
    assert parse_election(serialize_profile(p))[0] == p


@given(profiles(min_m=1, max_m=8, max_ballots=12))
def test_random_round_trip(p):
    q, raw = parse_election(serialize_profile(p))
    assert q == p and q.candidates == p.candidates
    assert raw.discarded_voters == 0


@given(profiles(min_m=2, max_m=6))
def test_merging_preserves_everything(p):
    q = p.merged()
    assert margin_matrix(q) == margin_matrix(p)
    assert [s.alpha for s in clone_report(q).scores] == [s.alpha for s in clone_report(p).scores]
    for rule in Rule:
        assert evaluate(rule, q) == evaluate(rule, p)


@given(profiles(min_m=3, max_m=5))
def test_strict_equals_drop_without_incomplete_ballots(p):
    text = serialize_profile(p)
    assert parse_election(text, STRICT)[0] == parse_election(text, DROP)[0]


def test_header_party_labels():
    text = BASIC.replace("# NUMBER", "# ALTERNATIVE PARTY 1: SNP\n# ALTERNATIVE PARTY 2: SNP\n# NUMBER")
    _, raw = parse_election(text)
    parties = attach_parties(raw)
    assert parties == {"Alice": "SNP", "Bob": "SNP"}
    assert party_relation(parties, "Alice", "Bob") == "same"
    assert party_relation(parties, "Alice", "Carol") == "unknown"


def test_sidecar_and_mapping_labels():
    _, raw = parse_election(BASIC)
    parties = attach_parties(raw, "1: Lab\n2, Con\n# note\nCarol: Lab\n")
    assert parties == {"Alice": "Lab", "Bob": "Con", "Carol": "Lab"}
    assert party_relation(parties, "Alice", "Bob") == "cross"
    assert attach_parties(raw, {3: " Green "}) == {"Carol": "Green"}
    with pytest.raises(IngestError):
        attach_parties(raw, "9: Lab\n")


def test_sidecar_splits_fixture_report():
    _, raw = parse_election(serialize_profile(FIX_RP4))
    parties = attach_parties(raw, "a: X\nb: X\nc: Y\n")
    rep = clone_report(FIX_RP4)
    same = [s.alpha for s in rep.scores if party_relation(parties, *s.pair) == "same"]
    cross = [s.alpha for s in rep.scores if party_relation(parties, *s.pair) == "cross"]
    assert same == [rep.score("a", "b").alpha]
    assert len(cross) == 2


def test_read_raw_keeps_incomplete():
    raw = read_raw(BASIC + "4: 1,2\n")
    assert raw.ballots[-1] == (4, (1, 2))
