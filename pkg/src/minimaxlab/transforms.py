"""Profile algebra: restriction, sums, scaling, blocks, voter edits, permutations.

Each transform is a pure function.  :class:`TransformRecord` names a transform
with JSON-friendly parameters so that witnesses can be replayed with
:func:`apply`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .profile import LINEAR, Ballot, DomainError, Profile, ballot_space, default_label

KINDS = (
    "restrict",
    "remove-alt",
    "concat",
    "scale",
    "add-block",
    "add-voter",
    "move-last-to-first",
    "improve",
    "permute-voters",
    "permute-alts",
)


@dataclass(frozen=True, eq=True)
class TransformRecord:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown transform {self.kind!r}")


def _pairs(ballot: Ballot) -> list:
    return [list(p) for p in ballot.key]


def _fresh_ids(used, count: int) -> list[int]:
    """First ``count`` nonnegative ids not in ``used``."""
    out, v = [], 0
    while len(out) < count:
        if v not in used:
            out.append(v)
        v += 1
    return out


def _rebuild(profile: Profile, ballots, alternatives=None, labels=None) -> Profile:
    return Profile(
        profile.alternatives if alternatives is None else alternatives,
        tuple(ballots),
        profile.labels if labels is None else labels,
        check=False,
    )


def restrict(profile: Profile, keep) -> Profile:
    keep = frozenset(keep)
    if not keep or not keep < frozenset(profile.alternatives):
        raise DomainError("restriction needs a nonempty proper subset of the alternatives")
    alts = tuple(a for a in profile.alternatives if a in keep)
    labels = tuple(lab for a, lab in zip(profile.alternatives, profile.labels) if a in keep)
    cache: dict = {}
    ballots = []
    for v, b in profile.ballots:
        if b not in cache:
            cache[b] = b.restrict(keep)
        ballots.append((v, cache[b]))
    return _rebuild(profile, ballots, alts, labels)


def remove_alternative(profile: Profile, b: int) -> Profile:
    profile._check_alternative(b)
    return restrict(profile, set(profile.alternatives) - {b})


def _same_alternatives(p: Profile, q: Profile) -> None:
    if p.alternatives != q.alternatives:
        raise DomainError("profiles range over different alternatives")


def concat(first: Profile, second: Profile) -> Profile:
    """``first + second`` with the second profile's voters renumbered to fresh ids.

    Fresh ids are the smallest ids not used by ``first``, assigned in increasing
    order of the second profile's own ids.
    """
    _same_alternatives(first, second)
    used = set(first.voters)
    incoming = sorted(second.ballots, key=lambda vb: vb[0])
    fresh = _fresh_ids(used, len(incoming))
    ballots = list(first.ballots) + [(v, b) for v, (_, b) in zip(fresh, incoming)]
    return _rebuild(first, ballots)


def scale(profile: Profile, factor: int) -> Profile:
    if factor < 1:
        raise DomainError("scale factor must be at least 1")
    out = profile
    for _ in range(factor - 1):
        out = concat(out, profile)
    return out


def block(alternatives, labels=()) -> Profile:
    """One voter per linear order of ``alternatives``."""
    return Profile.from_ballots(tuple(alternatives), ballot_space(tuple(alternatives), LINEAR), labels)


def add_block(profile: Profile) -> Profile:
    return concat(profile, block(profile.alternatives, profile.labels))


def add_voter(profile: Profile, ballot: Ballot) -> Profile:
    alts = set(profile.alternatives)
    if any(a not in alts or b not in alts or a == b for a, b in ballot.pairs):
        raise DomainError("added ballot ranges over other alternatives")
    (fresh,) = _fresh_ids(set(profile.voters), 1)
    return _rebuild(profile, list(profile.ballots) + [(fresh, ballot)])


def _replace_ballot(profile: Profile, voter: int, ballot: Ballot) -> Profile:
    profile.ballot_of(voter)
    return _rebuild(profile, [(v, ballot if v == voter else b) for v, b in profile.ballots])


def move_last_to_first(profile: Profile, voter: int, a: int) -> Profile:
    """The voter lifts ``a`` from uniquely last to uniquely first, keeping the rest."""
    profile._check_alternative(a)
    old = profile.ballot_of(voter)
    if not old.is_uniquely_last(a, profile.alternatives):
        raise DomainError(f"voter {voter} does not rank {profile.label(a)} uniquely last")
    others = [x for x in profile.alternatives if x != a]
    kept = {p for p in old.pairs if a not in p}
    new = Ballot(frozenset(kept | {(a, x) for x in others}))
    return _replace_ballot(profile, voter, new)


def improvement_steps(profile: Profile, voter: int, a: int) -> list[tuple[Profile, TransformRecord]]:
    """Single-step improvements of ``a`` on one ballot.

    A step either adds a missing pair (a, b) or deletes a present pair (b, a);
    every pair not involving ``a`` stays as it was.
    """
    profile._check_alternative(a)
    old = profile.ballot_of(voter)
    out = []
    for b in profile.alternatives:
        if b == a:
            continue
        if (a, b) not in old.pairs:
            new = Ballot(old.pairs | {(a, b)})
            rec = TransformRecord("improve", {"voter": voter, "alternative": a, "add": [[a, b]], "remove": []})
            out.append((_replace_ballot(profile, voter, new), rec))
        if (b, a) in old.pairs:
            new = Ballot(old.pairs - {(b, a)})
            rec = TransformRecord("improve", {"voter": voter, "alternative": a, "add": [], "remove": [[b, a]]})
            out.append((_replace_ballot(profile, voter, new), rec))
    return out


def improve(profile: Profile, voter: int, a: int) -> list[Profile]:
    return [p for p, _ in improvement_steps(profile, voter, a)]


def is_improvement(old: Ballot, new: Ballot, a: int, alternatives) -> bool:
    """``new`` raises ``a`` over ``old`` without touching pairs between other alternatives."""
    changed = False
    for c in alternatives:
        if c == a:
            continue
        if (a, c) in old.pairs and (a, c) not in new.pairs:
            return False
        if (c, a) not in old.pairs and (c, a) in new.pairs:
            return False
        if ((a, c) in new.pairs) != ((a, c) in old.pairs) or ((c, a) in new.pairs) != ((c, a) in old.pairs):
            changed = True
        for d in alternatives:
            if d != a and d != c and ((c, d) in old.pairs) != ((c, d) in new.pairs):
                return False
    return changed


def apply_improvement(profile: Profile, voter: int, a: int, add=(), remove=()) -> Profile:
    old = profile.ballot_of(voter)
    new = Ballot((old.pairs - {tuple(p) for p in remove}) | {tuple(p) for p in add})
    if not is_improvement(old, new, a, profile.alternatives):
        raise DomainError("ballot change is not an improvement of the alternative")
    return _replace_ballot(profile, voter, new)


def permute_voters(profile: Profile, mapping: dict) -> Profile:
    voters = profile.voters
    if set(mapping) != set(voters) or len(set(mapping.values())) != len(voters):
        raise DomainError("voter map must be a bijection from the profile's voters")
    if any(v < 0 for v in mapping.values()):
        raise DomainError("voter ids must be nonnegative")
    return Profile(profile.alternatives, tuple((mapping[v], b) for v, b in profile.ballots), profile.labels)


def permute_alternatives(profile: Profile, mapping: dict) -> Profile:
    """Rename alternatives: (a, b) in P(i) iff (tau(a), tau(b)) in P'(i)."""
    alts = profile.alternatives
    if set(mapping) != set(alts) or len(set(mapping.values())) != len(alts):
        raise DomainError("alternative map must be a bijection from the profile's alternatives")
    image = tuple(sorted(mapping.values()))
    if image == alts:
        labels = profile.labels
    else:
        labels = tuple(default_label(x) for x in image)
    cache: dict = {}
    ballots = []
    for v, b in profile.ballots:
        if b not in cache:
            cache[b] = Ballot(frozenset((mapping[x], mapping[y]) for x, y in b.pairs))
        ballots.append((v, cache[b]))
    return Profile(image, tuple(ballots), labels, check=False)


def record(kind: str, **params) -> TransformRecord:
    return TransformRecord(kind, params)


def apply(rec: TransformRecord, profile: Profile) -> Profile:
    p = rec.params
    if rec.kind == "restrict":
        return restrict(profile, p["keep"])
    if rec.kind == "remove-alt":
        return remove_alternative(profile, p["alternative"])
    if rec.kind == "concat":
        return concat(profile, p["other"])
    if rec.kind == "scale":
        return scale(profile, p["factor"])
    if rec.kind == "add-block":
        return add_block(profile)
    if rec.kind == "add-voter":
        return add_voter(profile, Ballot(frozenset(tuple(x) for x in p["ballot"])))
    if rec.kind == "move-last-to-first":
        return move_last_to_first(profile, p["voter"], p["alternative"])
    if rec.kind == "improve":
        return apply_improvement(profile, p["voter"], p["alternative"], p.get("add", ()), p.get("remove", ()))
    if rec.kind == "permute-voters":
        return permute_voters(profile, {a: b for a, b in p["mapping"]})
    if rec.kind == "permute-alts":
        return permute_alternatives(profile, {a: b for a, b in p["mapping"]})
    raise DomainError(f"unknown transform {rec.kind!r}")


def all_alternative_permutations(profile: Profile):
    alts = profile.alternatives
    for image in itertools.permutations(alts):
        yield dict(zip(alts, image))


ballot_pairs = _pairs
