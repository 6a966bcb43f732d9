"""Margins, supports, margin graphs and the three-alternative cycle taxonomy."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Protocol

from .profile import DomainError, Profile

CONDORCET_WINNER = "condorcet-winner"
ASCENDING = "ascending"
STRICTLY_ASCENDING = "strictly-ascending"
DESCENDING = "descending"
CONDORCET_LOSER = "condorcet-loser"
SYMMETRIC = "symmetric"


class HasMargins(Protocol):
    alternatives: tuple

    def margin(self, a: int, b: int) -> int: ...


def _check_pair(source: HasMargins, a: int, b: int) -> None:
    if a == b:
        raise DomainError("margin is defined only between distinct alternatives")
    if a not in source.alternatives or b not in source.alternatives:
        raise DomainError(f"unknown alternative in pair ({a}, {b})")


def margin(profile: Profile, a: int, b: int) -> int:
    _check_pair(profile, a, b)
    return profile.margin(a, b)


def support(profile: Profile, a: int, b: int) -> int:
    """Number of voters ranking ``a`` above ``b``."""
    _check_pair(profile, a, b)
    return profile.support(a, b)


@dataclass(frozen=True)
class MarginGraph:
    """Complete antisymmetric margin matrix; the positive edges are a view."""

    alternatives: tuple
    weights: tuple  # ((a, b), margin) for every ordered pair of distinct alternatives

    @classmethod
    def from_margins(cls, alternatives: Iterable[int], margins: dict) -> "MarginGraph":
        alternatives = tuple(sorted(alternatives))
        full = {}
        for a, b in itertools.combinations(alternatives, 2):
            if (a, b) in margins:
                w = margins[(a, b)]
            else:
                w = -margins.get((b, a), 0)
            full[(a, b)], full[(b, a)] = w, -w
        return cls(alternatives, tuple(sorted(full.items())))

    def margin(self, a: int, b: int) -> int:
        return self._table[(a, b)]

    @property
    def _table(self) -> dict:
        table = self.__dict__.get("_table_cache")
        if table is None:
            table = dict(self.weights)
            object.__setattr__(self, "_table_cache", table)
        return table

    def edges(self) -> list[tuple[int, int, int]]:
        return [(a, b, w) for (a, b), w in self.weights if w > 0]


@dataclass(frozen=True)
class OrdinalMarginGraph:
    """Positive edges ranked by weight (rank 0 = weakest); equal weights share a rank."""

    alternatives: tuple
    edges: frozenset  # of (a, b, rank)


def margin_graph(source: HasMargins) -> MarginGraph:
    if isinstance(source, MarginGraph):
        return source
    alts = tuple(source.alternatives)
    return MarginGraph(
        alts, tuple(sorted(((a, b), source.margin(a, b)) for a, b in itertools.permutations(alts, 2)))
    )


def ordinal_margin_graph(source: HasMargins) -> OrdinalMarginGraph:
    alts = tuple(source.alternatives)
    positive = [(a, b, source.margin(a, b)) for a, b in itertools.permutations(alts, 2)]
    positive = [e for e in positive if e[2] > 0]
    rank = {w: i for i, w in enumerate(sorted({w for _, _, w in positive}))}
    return OrdinalMarginGraph(alts, frozenset((a, b, rank[w]) for a, b, w in positive))


# -- Condorcet notions ----------------------------------------------------------


def condorcet_winner(source: HasMargins) -> int | None:
    for a in source.alternatives:
        if all(source.margin(a, b) > 0 for b in source.alternatives if b != a):
            return a
    return None


def weak_condorcet_winners(source: HasMargins) -> frozenset:
    return frozenset(
        a for a in source.alternatives
        if all(source.margin(a, b) >= 0 for b in source.alternatives if b != a)
    )


def condorcet_loser(source: HasMargins) -> int | None:
    for a in source.alternatives:
        if all(source.margin(a, b) < 0 for b in source.alternatives if b != a):
            return a
    return None


def smith_set(source: HasMargins) -> frozenset:
    """Smallest set whose members all have positive margins over every outsider.

    The dominant sets are nested, so the Smith set is the smallest dominance
    closure of a single alternative.
    """
    alts = tuple(source.alternatives)
    best = None
    for seed in alts:
        closure = {seed}
        grew = True
        while grew:
            grew = False
            for x in alts:
                if x not in closure and any(source.margin(s, x) <= 0 for s in closure):
                    closure.add(x)
                    grew = True
        if best is None or len(closure) < len(best):
            best = closure
    return frozenset(best)


def defensible_set(source: HasMargins) -> frozenset:
    """Alternatives a such that every b's margin over a is matched by some c's margin over b."""
    alts = tuple(source.alternatives)

    def defensible(a):
        for b in alts:
            if b == a:
                continue
            threat = source.margin(b, a)
            if not any(source.margin(c, b) >= threat for c in alts if c != b):
                return False
        return True

    return frozenset(a for a in alts if defensible(a))


def is_uniquely_weighted(source: HasMargins) -> bool:
    """Margins on distinct ordered pairs are pairwise distinct.

    Since margin(b, a) = -margin(a, b), this means every margin is nonzero and
    the magnitudes of different contests are distinct.
    """
    alts = tuple(source.alternatives)
    values = [source.margin(a, b) for a, b in itertools.permutations(alts, 2)]
    return len(values) == len(set(values))


# -- three-alternative taxonomy -------------------------------------------------


@dataclass(frozen=True)
class CycleCase:
    case: str
    n: int
    m: int
    k: int
    a: int
    b: int
    c: int

    @property
    def is_ascending(self) -> bool:
        return self.case in (ASCENDING, STRICTLY_ASCENDING)

    @property
    def roles(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


def _cycle_candidates(g: HasMargins, alts: tuple):
    for a, b, c in itertools.permutations(alts):
        ab, bc, ca = g.margin(a, b), g.margin(b, c), g.margin(c, a)
        # ascending: a->b n, b->c m, c->a k with 0 <= n <= m < k
        if 0 <= ab <= bc < ca:
            case = STRICTLY_ASCENDING if ab < bc else ASCENDING
            yield CycleCase(case, ab, bc, ca, a, b, c)
        # descending: a->b n, c->a m, b->c k with 0 <= n < m <= k
        if 0 <= ab < ca <= bc:
            yield CycleCase(DESCENDING, ab, ca, bc, a, b, c)
        # symmetric: all three equal and nonnegative around the cycle
        if 0 <= ab == bc == ca:
            yield CycleCase(SYMMETRIC, ab, ca, bc, a, b, c)
        # Condorcet loser a: b->a n, c->a k with 0 < n <= k and b, c tied
        ba, ca_ = g.margin(b, a), g.margin(c, a)
        if 0 < ba <= ca_ and g.margin(b, c) == 0:
            yield CycleCase(CONDORCET_LOSER, ba, 0, ca_, a, b, c)


def classify_three_cycle(source: HasMargins) -> CycleCase:
    """Place a three-alternative margin graph in the Condorcet-winner / cycle taxonomy.

    Role ambiguity is resolved by the lexicographically least (a, b, c).
    """
    alts = tuple(sorted(source.alternatives))
    if len(alts) != 3:
        raise DomainError("cycle taxonomy needs exactly three alternatives")
    winner = condorcet_winner(source)
    if winner is not None:
        others = [x for x in alts if x != winner]
        return CycleCase(CONDORCET_WINNER, 0, 0, 0, winner, others[0], others[1])
    found = list(_cycle_candidates(source, alts))
    labels = {c.case for c in found}
    if len(labels) != 1:
        raise AssertionError(f"taxonomy not a partition here: {sorted(labels)}")
    return min(found, key=lambda c: (c.a, c.b, c.c))
