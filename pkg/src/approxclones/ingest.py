"""Reading and writing Preflib-style strict-order files (SOC / SOI).

Accepted layout::

    # NUMBER ALTERNATIVES: 3
    # ALTERNATIVE NAME 1: Alice
    # ALTERNATIVE NAME 2: Bob
    # ALTERNATIVE NAME 3: Carol
    2: 1,2,3
    1: 3,2,1

Header lines start with ``#`` and hold ``KEY: value`` metadata.  Ballot lines
are ``count: id,id,...`` with 1-based alternative ids.  The older Preflib layout
(candidate count, ``id,name`` lines, a voter summary line, then ``count,id,...``)
is detected and read as well.  Party labels may be given as
``# ALTERNATIVE PARTY <id>: <label>`` header lines or through a sidecar text.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .core import CandidateId, DomainError, Profile

STRICT = "strict-complete"
DROP = "drop-incomplete"
POLICIES = (STRICT, DROP)

_NAME_KEY = re.compile(r"ALTERNATIVE NAME (\d+)$", re.IGNORECASE)
_PARTY_KEY = re.compile(r"ALTERNATIVE PARTY (\d+)$", re.IGNORECASE)


class IngestError(DomainError):
    """Malformed or unusable preference data."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass
class RawElection:
    metadata: dict[str, str] = field(default_factory=dict)
    names: dict[int, str] = field(default_factory=dict)
    ballots: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    alternatives: tuple[int, ...] = ()
    discarded_voters: int = 0
    discarded_ballots: int = 0

    def candidate_id(self, alt: int) -> CandidateId:
        return self.candidate_table()[alt]

    def candidate_table(self) -> dict[int, CandidateId]:
        """File id -> candidate id used in the parsed :class:`Profile`."""
        names = [self.names.get(a, str(a)).strip() for a in self.alternatives]
        if len(set(names)) != len(names):
            return {a: str(a) for a in self.alternatives}
        return dict(zip(self.alternatives, names))


def _parse_ballot_ids(text: str, lineno: int, declared) -> tuple[int, ...]:
    if "{" in text or "}" in text:
        raise IngestError("tied alternatives inside a ballot are not supported (strict orders only)", lineno)
    text = text.strip()
    if not text:
        return ()
    try:
        ids = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise IngestError(f"cannot read ballot {text!r}", lineno) from None
    if len(set(ids)) != len(ids):
        raise IngestError(f"repeated candidate within one ballot: {text!r}", lineno)
    if declared is not None:
        for a in ids:
            if a not in declared:
                raise IngestError(f"unknown candidate id {a}", lineno)
    return ids


def _parse_count(text: str, lineno: int) -> int:
    try:
        count = int(text.strip())
    except ValueError:
        raise IngestError(f"cannot read multiplicity {text.strip()!r}", lineno) from None
    if count <= 0:
        raise IngestError(f"multiplicity must be positive, got {count}", lineno)
    return count


def _looks_legacy(lines: list[str]) -> bool:
    body = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    return bool(body) and body[0].isdigit() and ":" not in body[0]


def _read_modern(lines: list[str]) -> RawElection:
    raw = RawElection()
    entries = []
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                key, value = key.strip(), value.strip()
                raw.metadata[key] = value
                match = _NAME_KEY.match(key)
                if match:
                    raw.names[int(match.group(1))] = value
            continue
        if ":" not in stripped:
            raise IngestError(f"expected 'count: ids', got {stripped!r}", lineno)
        count_text, ids_text = stripped.split(":", 1)
        entries.append((lineno, _parse_count(count_text, lineno), ids_text))

    declared = None
    if "NUMBER ALTERNATIVES" in {k.upper() for k in raw.metadata}:
        value = next(v for k, v in raw.metadata.items() if k.upper() == "NUMBER ALTERNATIVES")
        try:
            declared = set(range(1, int(value) + 1))
        except ValueError:
            raise IngestError(f"bad NUMBER ALTERNATIVES value {value!r}") from None
    elif raw.names:
        declared = set(raw.names)
    for lineno, count, ids_text in entries:
        raw.ballots.append((count, _parse_ballot_ids(ids_text, lineno, declared)))
    if declared is None:
        declared = {a for _, ids in raw.ballots for a in ids}
    raw.alternatives = tuple(sorted(declared))
    return raw


def _read_legacy(lines: list[str]) -> RawElection:
    raw = RawElection()
    body = []
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if stripped.startswith("#"):
            body_text = stripped[1:].strip()
            if ":" in body_text:
                key, value = body_text.split(":", 1)
                raw.metadata[key.strip()] = value.strip()
        elif stripped:
            body.append((lineno, stripped))
    lineno, first = body[0]
    m = int(first)
    if len(body) < m + 2:
        raise IngestError("truncated legacy header", lineno)
    for lineno, text in body[1:m + 1]:
        alt, _, name = text.partition(",")
        try:
            raw.names[int(alt)] = name.strip()
        except ValueError:
            raise IngestError(f"bad alternative line {text!r}", lineno) from None
    declared = set(raw.names)
    raw.metadata.setdefault("NUMBER ALTERNATIVES", str(m))
    summary = body[m + 1][1]
    raw.metadata.setdefault("LEGACY VOTER SUMMARY", summary)
    for lineno, text in body[m + 2:]:
        if "{" in text:
            raise IngestError("tied alternatives inside a ballot are not supported (strict orders only)", lineno)
        count_text, _, ids_text = text.partition(",")
        raw.ballots.append((_parse_count(count_text, lineno), _parse_ballot_ids(ids_text, lineno, declared)))
    raw.alternatives = tuple(sorted(declared))
    return raw


def read_raw(text: str) -> RawElection:
    """Parse text into a :class:`RawElection` without applying any completeness policy."""
    if not text or not text.strip():
        raise IngestError("empty input")
    lines = text.splitlines()
    return _read_legacy(lines) if _looks_legacy(lines) else _read_modern(lines)


def parse_election(text: str, policy: str = DROP) -> tuple[Profile, RawElection]:
    """Parse a strict-order election into a :class:`Profile`.

    Under ``"drop-incomplete"`` ballots that rank fewer than all alternatives are
    discarded and counted in ``raw.discarded_voters``; under ``"strict-complete"``
    they are an error.  Identical rankings are merged.
    """
    if policy not in POLICIES:
        raise DomainError(f"unknown policy {policy!r}; use one of {POLICIES}")
    raw = read_raw(text)
    m = len(raw.alternatives)
    if m == 0:
        raise IngestError("no alternatives declared")
    merged: Counter = Counter()
    for count, ids in raw.ballots:
        if len(ids) < m:
            if policy == STRICT:
                raise IngestError(f"incomplete ballot {','.join(map(str, ids))} under strict-complete policy")
            raw.discarded_voters += count
            raw.discarded_ballots += 1
            continue
        merged[ids] += count
    if not merged:
        raise IngestError("no complete ballots survive")
    table = raw.candidate_table()
    index = {a: i for i, a in enumerate(raw.alternatives)}
    candidates = tuple(table[a] for a in raw.alternatives)
    ballots = tuple((merged[ids], tuple(index[a] for a in ids)) for ids in sorted(merged))
    return Profile(candidates, ballots), raw


def serialize_profile(profile: Profile, names: Optional[Mapping[CandidateId, str]] = None,
                      metadata: Optional[Mapping[str, str]] = None) -> str:
    """Canonical text: fixed header, ballots merged and sorted by ranking, LF line endings.

    Alternative ``i`` (1-based) is ``profile.candidates[i - 1]``; its written name
    comes from ``names`` and defaults to the candidate id itself.
    """
    names = names or {}
    merged = profile.merged()
    lines = []
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}: {value}")
    lines += [
        "# DATA TYPE: soc",
        f"# NUMBER ALTERNATIVES: {profile.m}",
        f"# NUMBER VOTERS: {profile.n}",
        f"# NUMBER UNIQUE ORDERS: {len(merged.ballots)}",
    ]
    for i, c in enumerate(profile.candidates, 1):
        lines.append(f"# ALTERNATIVE NAME {i}: {names.get(c, c)}")
    for count, ranking in merged.ballots:
        lines.append(f"{count}: {','.join(str(i + 1) for i in ranking)}")
    return "\n".join(lines) + "\n"


PartyMap = dict


def attach_parties(raw: RawElection, source: Union[None, str, Mapping] = None) -> PartyMap:
    """Map candidate ids to party labels.

    ``source`` may be ``None`` (read ``ALTERNATIVE PARTY`` header entries), a
    mapping from file id or candidate id to label, or sidecar text with one
    ``id: label`` or ``id,label`` entry per line.
    """
    table = raw.candidate_table()
    by_name = {v: k for k, v in table.items()}
    if source is None:
        entries = [(m.group(1), v) for k, v in raw.metadata.items() if (m := _PARTY_KEY.match(k))]
    elif isinstance(source, Mapping):
        entries = list(source.items())
    else:
        entries = []
        for line in source.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            sep = ":" if ":" in line else ","
            key, _, label = line.partition(sep)
            entries.append((key.strip(), label))
    parties: PartyMap = {}
    for key, label in entries:
        alt = None
        if isinstance(key, int) or (isinstance(key, str) and key.strip().isdigit() and int(key) in table):
            alt = int(key)
        elif key in by_name:
            alt = by_name[key]
        if alt is None or alt not in table:
            raise IngestError(f"party label for undeclared candidate {key!r}")
        label = str(label).strip()
        if label:
            parties[table[alt]] = label
    return parties


def party_relation(parties: Mapping[CandidateId, str], x: CandidateId, y: CandidateId) -> str:
    """``"same"``, ``"cross"``, or ``"unknown"`` when either label is missing."""
    px, py = parties.get(x), parties.get(y)
    if px is None or py is None:
        return "unknown"
    return "same" if px == py else "cross"
