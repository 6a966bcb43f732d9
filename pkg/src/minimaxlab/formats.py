"""Profile and witness files.

Profiles are JSON with a format tag and version.  Ballots are grouped by count
and written as tier lists when they are strict weak orders, as pair lists
otherwise.  Witness files wrap an :class:`~minimaxlab.axioms.AxiomWitness`
with engine metadata so ``replay`` can re-derive it.

The line-based import format (``count: a>b=c``) exists for hand-written fixtures.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from . import __version__
from .axioms import AxiomWitness
from .profile import Ballot, DomainError, Profile, parse_tiers
from .transforms import TransformRecord

PROFILE_FORMAT = "minimaxlab-profile"
WITNESS_FORMAT = "minimaxlab-witness"
VERSION = 1


class FormatError(ValueError):
    """Malformed profile or witness file."""


# -- profiles --------------------------------------------------------------------


def profile_to_dict(profile: Profile, keep_voters: bool = False) -> dict:
    """Serializable form; with ``keep_voters`` each entry lists its voter ids."""
    name = dict(zip(profile.alternatives, profile.labels))
    groups: dict = {}
    for voter, ballot in sorted(profile.ballots, key=lambda vb: (vb[1].key, vb[0])):
        groups.setdefault(ballot, []).append(voter)
    entries = []
    for ballot, voters in groups.items():
        entry: dict = {"count": len(voters)}
        tiers = ballot.tiers(profile.alternatives)
        if tiers is None:
            entry["relation"] = [[name[a], name[b]] for a, b in ballot.key]
        else:
            entry["ranking"] = [[name[x] for x in tier] for tier in tiers]
        if keep_voters:
            entry["voters"] = voters
        entries.append(entry)
    out = {"format": PROFILE_FORMAT, "version": VERSION, "alternatives": list(profile.labels)}
    if profile.alternatives != tuple(range(len(profile.alternatives))):
        out["indices"] = list(profile.alternatives)
    out["ballots"] = entries
    return out


def profile_from_dict(data: dict) -> Profile:
    try:
        if data.get("format") != PROFILE_FORMAT:
            raise FormatError(f"not a profile file (format={data.get('format')!r})")
        if data.get("version") != VERSION:
            raise FormatError(f"unsupported profile version {data.get('version')!r}")
        labels = [str(x) for x in data["alternatives"]]
        indices = [int(x) for x in data.get("indices", range(len(labels)))]
        if len(indices) != len(labels):
            raise FormatError("indices and alternatives differ in length")
        index = dict(zip(labels, indices))
        if len(index) != len(labels):
            raise FormatError("duplicate alternative label")
        ballots = []
        next_voter = 0
        for entry in data["ballots"]:
            count = entry["count"]
            if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                raise FormatError(f"ballot count must be a positive integer, got {count!r}")
            if ("ranking" in entry) == ("relation" in entry):
                raise FormatError("each ballot needs exactly one of 'ranking' or 'relation'")
            if "ranking" in entry:
                text = ">".join("=".join(tier) for tier in entry["ranking"])
                ballot = parse_tiers(text, index)
            else:
                pairs = set()
                for a, b in entry["relation"]:
                    if a not in index or b not in index:
                        raise FormatError(f"unknown alternative in pair ({a}, {b})")
                    pairs.add((index[a], index[b]))
                ballot = Ballot(frozenset(pairs))
            voters = entry.get("voters")
            if voters is None:
                voters = list(range(next_voter, next_voter + count))
            elif len(voters) != count:
                raise FormatError("voter list length differs from count")
            next_voter = max([next_voter, *[v + 1 for v in voters]])
            ballots.extend((int(v), ballot) for v in voters)
        order = sorted(range(len(labels)), key=lambda i: indices[i])
        return Profile(
            tuple(indices[i] for i in order),
            tuple(sorted(ballots, key=lambda vb: vb[0])),
            tuple(labels[i] for i in order),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed profile: {exc}") from exc


def serialize_profile(profile: Profile, keep_voters: bool = False) -> str:
    return json.dumps(profile_to_dict(profile, keep_voters), indent=2) + "\n"


def parse_profile(text: str) -> Profile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("profile file must hold a JSON object")
    return profile_from_dict(data)


_LINE = re.compile(r"^\s*(\d+)\s*:\s*(.+?)\s*$")


def parse_external(text: str) -> Profile:
    """One ballot per line, ``count: a>b=c>d``.

    An optional ``alternatives: a, b, c`` line fixes the alternative set (and
    order); otherwise it is the sorted set of labels used.  Alternatives a
    ballot does not mention are tied last.  ``#`` starts a comment.
    """
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("alternatives:"):
            header = [x.strip() for x in line.split(":", 1)[1].split(",") if x.strip()]
            continue
        m = _LINE.match(line)
        if not m:
            raise FormatError(f"line {lineno}: expected 'count: ranking', got {raw!r}")
        count = int(m.group(1))
        if count < 1:
            raise FormatError(f"line {lineno}: count must be positive")
        rows.append((count, m.group(2)))
    if not rows:
        raise FormatError("no ballots")
    try:
        return Profile.from_rankings(rows, labels=header)
    except DomainError as exc:
        raise FormatError(str(exc)) from exc


def load_profile(path) -> Profile:
    """Read a JSON profile file, or the line format if the file is not JSON."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_profile(text)
    return parse_external(text)


def import_external(path) -> Profile:
    return parse_external(Path(path).read_text())


# -- witnesses -------------------------------------------------------------------


def witness_to_dict(w: AxiomWitness) -> dict:
    return {
        "axiom": w.axiom,
        "method": w.method,
        "base_profile": profile_to_dict(w.base_profile, keep_voters=True),
        "transform": None if w.transform is None else {"kind": w.transform.kind, "params": w.transform.params},
        "other_profile": None if w.other_profile is None else profile_to_dict(w.other_profile, keep_voters=True),
        "winners_before": sorted(w.winners_before),
        "winners_after": sorted(w.winners_after),
        "focus": w.focus,
        "note": w.note,
    }


def witness_from_dict(data: dict) -> AxiomWitness:
    try:
        rec = data.get("transform")
        other = data.get("other_profile")
        return AxiomWitness(
            axiom=data["axiom"],
            method=data["method"],
            base_profile=profile_from_dict(data["base_profile"]),
            winners_before=frozenset(data["winners_before"]),
            winners_after=frozenset(data["winners_after"]),
            transform=None if rec is None else TransformRecord(rec["kind"], rec["params"]),
            other_profile=None if other is None else profile_from_dict(other),
            focus=data.get("focus", {}),
            note=data.get("note", ""),
        )
    except (KeyError, TypeError, DomainError) as exc:
        raise FormatError(f"malformed witness: {exc}") from exc


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def witness_key(w: AxiomWitness) -> str:
    return canonical_json(witness_to_dict(w))


def witness_file(witnesses, spec: dict | None = None, seed=None) -> dict:
    return {
        "format": WITNESS_FORMAT,
        "version": VERSION,
        "engine": {"name": "minimaxlab", "version": __version__},
        "spec": spec,
        "seed": seed,
        "witnesses": [witness_to_dict(w) for w in witnesses],
    }


def parse_witness_file(text: str) -> tuple[list[AxiomWitness], dict]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or data.get("format") != WITNESS_FORMAT:
        raise FormatError("not a witness file")
    if data.get("version") != VERSION:
        raise FormatError(f"unsupported witness version {data.get('version')!r}")
    return [witness_from_dict(w) for w in data.get("witnesses", [])], data
