"""Alternatives, ballots and profiles.

A ballot is an explicit set of ordered pairs ``(a, b)`` read as "ranks a above b".
Ties are the mutual absence of both pairs.  Nothing here assumes transitivity:
the kind of a ballot (linear, strict weak order, arbitrary relation) is
computed, never required.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import InitVar, dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

LINEAR = "linear"
SWO = "strict-weak-order"
RELATION = "relation"
BALLOT_KINDS = (LINEAR, SWO, RELATION)
_KIND_RANK = {LINEAR: 0, SWO: 1, RELATION: 2}

# accepted spellings on the command line and in files
KIND_ALIASES = {"linear": LINEAR, "swo": SWO, "strict-weak-order": SWO, "relation": RELATION}

MAX_BALLOT_SPACE_ALTERNATIVES = 5
MAX_RELATION_SPACE_ALTERNATIVES = 4


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


def default_label(index: int) -> str:
    if index < 26:
        return "abcdefghijklmnopqrstuvwxyz"[index]
    return f"x{index}"


def weakest_kind(kinds: Iterable[str]) -> str:
    return max(kinds, key=_KIND_RANK.__getitem__)


def kind_at_least(kind: str, required: str) -> bool:
    """True if ballots of ``kind`` also belong to the class ``required``."""
    return _KIND_RANK[kind] <= _KIND_RANK[required]


@dataclass(frozen=True)
class Alternative:
    index: int
    label: str | None = None


@lru_cache(maxsize=None)
def _classify(pairs: frozenset, alternatives: tuple) -> str:
    for a, b in pairs:
        if (b, a) in pairs:
            return RELATION
    # negative transitivity: (a,b) not in P and (b,c) not in P imply (a,c) not in P
    for a, b, c in itertools.permutations(alternatives, 3):
        if (a, b) not in pairs and (b, c) not in pairs and (a, c) in pairs:
            return RELATION
    for a, b in itertools.combinations(alternatives, 2):
        if (a, b) not in pairs and (b, a) not in pairs:
            return SWO
    return LINEAR


@dataclass(frozen=True)
class Ballot:
    pairs: frozenset

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Ballot":
        return cls(frozenset(itertools.combinations(order, 2)))

    @classmethod
    def from_tiers(cls, tiers: Sequence[Sequence[int]]) -> "Ballot":
        pairs = set()
        for i, upper in enumerate(tiers):
            for lower in tiers[i + 1:]:
                pairs.update((a, b) for a in upper for b in lower)
        return cls(frozenset(pairs))

    @cached_property
    def key(self) -> tuple:
        return tuple(sorted(self.pairs))

    def ranks_above(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def kind(self, alternatives: Sequence[int]) -> str:
        return _classify(self.pairs, tuple(alternatives))

    def is_uniquely_first(self, a: int, alternatives: Iterable[int]) -> bool:
        return all((a, b) in self.pairs for b in alternatives if b != a)

    def is_uniquely_last(self, a: int, alternatives: Iterable[int]) -> bool:
        return all((b, a) in self.pairs for b in alternatives if b != a)

    def restrict(self, keep: frozenset) -> "Ballot":
        return Ballot(frozenset(p for p in self.pairs if p[0] in keep and p[1] in keep))

    def tiers(self, alternatives: Sequence[int]) -> list[list[int]] | None:
        """Tier list for a strict weak order, ``None`` for other relations."""
        if self.kind(alternatives) == RELATION:
            return None
        # in a strict weak order, the number of alternatives ranked above x fixes x's tier
        above = {x: sum((y, x) in self.pairs for y in alternatives) for x in alternatives}
        levels = sorted(set(above.values()))
        return [sorted(x for x in alternatives if above[x] == lv) for lv in levels]

    def format(self, alternatives: Sequence[int], labels: Sequence[str]) -> str:
        name = dict(zip(alternatives, labels))
        tiers = self.tiers(alternatives)
        if tiers is None:
            return "{" + ",".join(name[a] + name[b] for a, b in self.key) + "}"
        return ">".join("=".join(name[x] for x in tier) for tier in tiers)


@dataclass(frozen=True)
class Profile:
    """An assignment of ballots to voters over a fixed set of alternatives.

    ``alternatives`` holds the global alternative indices in increasing order and
    ``labels`` their names.  ``ballots`` is a tuple of ``(voter_id, Ballot)``.
    """

    alternatives: tuple
    ballots: tuple
    labels: tuple = ()
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", tuple(default_label(a) for a in self.alternatives))
        if check:
            self._validate()

    def _validate(self) -> None:
        alts = self.alternatives
        if not alts:
            raise DomainError("profile needs at least one alternative")
        if list(alts) != sorted(set(alts)) or any(a < 0 for a in alts):
            raise DomainError("alternative indices must be distinct, nonnegative and increasing")
        if len(self.labels) != len(alts) or len(set(self.labels)) != len(alts):
            raise DomainError("alternative labels must be unique, one per alternative")
        if not self.ballots:
            raise DomainError("profile needs at least one ballot")
        seen = set()
        universe = set(alts)
        for voter, ballot in self.ballots:
            if voter < 0 or voter in seen:
                raise DomainError(f"duplicate or negative voter id {voter}")
            seen.add(voter)
            for a, b in ballot.pairs:
                if a == b:
                    raise DomainError(f"reflexive pair ({a}, {a}) on voter {voter}")
                if a not in universe or b not in universe:
                    raise DomainError(f"voter {voter} ranks an unknown alternative")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_ballots(cls, alternatives: Sequence[int], ballots: Iterable[Ballot], labels=(), first_voter=0):
        numbered = tuple((first_voter + i, b) for i, b in enumerate(ballots))
        return cls(tuple(alternatives), numbered, tuple(labels))

    @classmethod
    def from_rankings(cls, rankings: Iterable[tuple[int, str]], labels: str | Sequence[str] | None = None):
        """Build from ``(count, "a>b=c")`` pairs; labels default to the sorted labels used."""
        rankings = list(rankings)
        if labels is None:
            used = set()
            for _, text in rankings:
                used.update(x.strip() for tier in text.split(">") for x in tier.split("="))
            labels = sorted(used)
        labels = list(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        ballots = []
        for count, text in rankings:
            ballot = parse_tiers(text, index)
            ballots.extend([ballot] * count)
        return cls.from_ballots(range(len(labels)), ballots, labels)

    # -- basic queries --------------------------------------------------------

    @property
    def voters(self) -> tuple:
        return tuple(v for v, _ in self.ballots)

    @property
    def num_voters(self) -> int:
        return len(self.ballots)

    @cached_property
    def _by_voter(self) -> dict:
        return dict(self.ballots)

    def ballot_of(self, voter: int) -> Ballot:
        try:
            return self._by_voter[voter]
        except KeyError:
            raise DomainError(f"unknown voter {voter}") from None

    @cached_property
    def ballot_counts(self) -> Counter:
        return Counter(b for _, b in self.ballots)

    @cached_property
    def _supports(self) -> Counter:
        sup: Counter = Counter()
        for ballot, count in self.ballot_counts.items():
            for pair in ballot.pairs:
                sup[pair] += count
        return sup

    def support(self, a: int, b: int) -> int:
        return self._supports[(a, b)]

    def margin(self, a: int, b: int) -> int:
        return self._supports[(a, b)] - self._supports[(b, a)]

    @cached_property
    def ballot_kind(self) -> str:
        return weakest_kind(b.kind(self.alternatives) for b in self.ballot_counts)

    def label(self, a: int) -> str:
        return self.labels[self.alternatives.index(a)]

    def index_of(self, label: str) -> int:
        try:
            return self.alternatives[self.labels.index(label)]
        except ValueError:
            raise DomainError(f"unknown alternative {label!r}") from None

    def names(self, alts: Iterable[int]) -> list[str]:
        """Labels of ``alts`` sorted by label."""
        return sorted(self.label(a) for a in alts)

    def alternative_objects(self) -> tuple:
        return tuple(Alternative(a, lab) for a, lab in zip(self.alternatives, self.labels))

    def _check_alternative(self, *alts: int) -> None:
        for a in alts:
            if a not in self.alternatives:
                raise DomainError(f"unknown alternative {a}")

    def describe(self) -> str:
        rows = sorted(self.ballot_counts.items(), key=lambda item: item[0].key)
        return ", ".join(f"{c}x{b.format(self.alternatives, self.labels)}" for b, c in rows)


def parse_tiers(text: str, index: dict) -> Ballot:
    """Parse ``"a>b=c"`` into a ballot; alternatives not mentioned are tied last."""
    tiers = []
    for tier in text.split(">"):
        names = [x.strip() for x in tier.split("=")]
        if any(not x for x in names):
            raise DomainError(f"empty tier in {text!r}")
        try:
            tiers.append([index[x] for x in names])
        except KeyError as exc:
            raise DomainError(f"unknown alternative {exc.args[0]!r} in {text!r}") from None
    flat = [x for t in tiers for x in t]
    if len(flat) != len(set(flat)):
        raise DomainError(f"alternative repeated in {text!r}")
    rest = sorted(set(index.values()) - set(flat))
    if rest:
        tiers.append(rest)
    return Ballot.from_tiers(tiers)


# -- profile queries ----------------------------------------------------------


def ranks_above(profile: Profile, voter: int, a: int, b: int) -> bool:
    profile._check_alternative(a, b)
    return profile.ballot_of(voter).ranks_above(a, b)


def ranks_uniquely_first(profile: Profile, voter: int, a: int) -> bool:
    profile._check_alternative(a)
    return profile.ballot_of(voter).is_uniquely_first(a, profile.alternatives)


def ranks_uniquely_last(profile: Profile, voter: int, a: int) -> bool:
    profile._check_alternative(a)
    return profile.ballot_of(voter).is_uniquely_last(a, profile.alternatives)


def validate(profile: Profile, require: str = RELATION) -> str:
    """Re-check structure and return the weakest ballot kind present.

    ``require`` names the class every ballot must belong to; a profile holding a
    weaker ballot raises :class:`DomainError`.
    """
    profile._validate()
    kind = profile.ballot_kind
    if not kind_at_least(kind, require):
        raise DomainError(f"profile has {kind} ballots, {require} required")
    return kind


def canonical_form(profile: Profile) -> Profile:
    ordered = sorted((b for _, b in profile.ballots), key=lambda b: b.key)
    return Profile(profile.alternatives, tuple(enumerate(ordered)), profile.labels, check=False)


def _ordered_partitions(items: tuple):
    if not items:
        yield []
        return
    for size in range(1, len(items) + 1):
        for first in itertools.combinations(items, size):
            rest = tuple(x for x in items if x not in first)
            for tail in _ordered_partitions(rest):
                yield [list(first)] + tail


@lru_cache(maxsize=None)
def _ballot_space(alternatives: tuple, kind: str) -> tuple:
    if kind == LINEAR:
        ballots = {Ballot.from_order(p) for p in itertools.permutations(alternatives)}
    elif kind == SWO:
        ballots = {Ballot.from_tiers(t) for t in _ordered_partitions(alternatives)}
    else:
        if len(alternatives) > MAX_RELATION_SPACE_ALTERNATIVES:
            raise DomainError("relation ballot space supported up to 4 alternatives")
        offdiag = list(itertools.permutations(alternatives, 2))
        ballots = {
            Ballot(frozenset(p for p, bit in zip(offdiag, bits) if bit))
            for bits in itertools.product((0, 1), repeat=len(offdiag))
        }
    return tuple(sorted(ballots, key=lambda b: b.key))


def ballot_space(alternatives: int | Sequence[int], kind: str = LINEAR) -> list[Ballot]:
    """All distinct ballots of ``kind``, ordered by their sorted pair lists."""
    if isinstance(alternatives, int):
        alternatives = range(alternatives)
    alternatives = tuple(sorted(alternatives))
    if not 1 <= len(alternatives) <= MAX_BALLOT_SPACE_ALTERNATIVES:
        raise DomainError("ballot space supports 1 to 5 alternatives")
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in BALLOT_KINDS:
        raise DomainError(f"unknown ballot kind {kind!r}")
    return list(_ballot_space(alternatives, kind))
