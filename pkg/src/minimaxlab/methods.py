"""Voting methods and the method registry.

Every method maps a profile to a nonempty frozenset of alternative indices.
Margin-based methods also accept a :class:`~minimaxlab.margins.MarginGraph`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .margins import HasMargins, weak_condorcet_winners
from .profile import LINEAR, RELATION, Ballot, DomainError, Profile, kind_at_least

MINIMAX_AXIOMS = (
    "anonymity",
    "neutrality",
    "weak-positive-responsiveness",
    "positive-involvement",
    "near-immunity-to-spoilers",
    "homogeneity",
    "block-preservation",
)


def _argmin(alts, score) -> frozenset:
    values = {a: score(a) for a in alts}
    best = min(values.values())
    return frozenset(a for a, v in values.items() if v == best)


def _argmax(alts, score) -> frozenset:
    values = {a: score(a) for a in alts}
    best = max(values.values())
    return frozenset(a for a, v in values.items() if v == best)


def majority(profile: HasMargins) -> frozenset:
    if len(profile.alternatives) != 2:
        raise DomainError("majority voting needs exactly two alternatives")
    a, b = profile.alternatives
    m = profile.margin(a, b)
    if m > 0:
        return frozenset({a})
    if m < 0:
        return frozenset({b})
    return frozenset({a, b})


def minimax_score(source: HasMargins, a: int) -> int:
    """Largest margin any rival has over ``a`` (0 when there is no rival)."""
    return max((source.margin(b, a) for b in source.alternatives if b != a), default=0)


def minimax(source: HasMargins) -> frozenset:
    return _argmin(source.alternatives, lambda a: minimax_score(source, a))


def support_loss(profile: Profile, a: int) -> int:
    """Largest support behind a defeat of ``a``; 0 if nobody beats ``a``."""
    return max(
        (profile.support(b, a) for b in profile.alternatives if b != a and profile.margin(b, a) > 0),
        default=0,
    )


def minimax_support(profile: Profile) -> frozenset:
    return _argmin(profile.alternatives, lambda a: support_loss(profile, a))


def marginal_borda_score(source: HasMargins, a: int) -> int:
    return sum(source.margin(a, b) for b in source.alternatives if b != a)


def borda_marginal(source: HasMargins) -> frozenset:
    return _argmax(source.alternatives, lambda a: marginal_borda_score(source, a))


def minimax_mb(source: HasMargins) -> frozenset:
    return _argmax(minimax(source), lambda a: marginal_borda_score(source, a))


def plurality_score(profile: Profile, a: int) -> int:
    alts = profile.alternatives
    return sum(c for b, c in profile.ballot_counts.items() if b.is_uniquely_first(a, alts))


def condorcet_plurality(profile: Profile) -> frozenset:
    weak = weak_condorcet_winners(profile)
    if weak:
        return weak
    return _argmax(profile.alternatives, lambda a: plurality_score(profile, a))


def _top(ballot: Ballot, among) -> int:
    for x in among:
        if all((x, y) in ballot.pairs for y in among if y != x):
            return x
    raise DomainError("ballot has no unique top among the remaining alternatives")


def _bottom(ballot: Ballot, among) -> int:
    for x in among:
        if all((y, x) in ballot.pairs for y in among if y != x):
            return x
    raise DomainError("ballot has no unique bottom among the remaining alternatives")


def bucklin_counts(profile: Profile, r: int) -> dict:
    """How many voters place each alternative among their top ``r`` (linear ballots)."""
    alts = profile.alternatives
    counts = dict.fromkeys(alts, 0)
    for ballot, c in profile.ballot_counts.items():
        for x in alts:
            if sum((y, x) in ballot.pairs for y in alts) < r:
                counts[x] += c
    return counts


def bucklin(profile: Profile) -> frozenset:
    """First round r where some top-r count passes half the voters; argmax at that round."""
    n = profile.num_voters
    for r in range(1, len(profile.alternatives) + 1):
        counts = bucklin_counts(profile, r)
        if max(counts.values()) * 2 > n:
            return _argmax(profile.alternatives, counts.__getitem__)
    raise AssertionError("unreachable: every alternative is in everyone's top |X|")


def coombs_rounds(profile: Profile) -> tuple[list[frozenset], frozenset]:
    """Eliminated sets round by round, and the winners.

    Each round, an alternative with a first-place majority wins; otherwise
    everyone tied for most last places is dropped.  If that would drop
    everyone, the last group standing wins together.
    """
    n = profile.num_voters
    remaining = list(profile.alternatives)
    eliminated = []
    while len(remaining) > 1:
        firsts = dict.fromkeys(remaining, 0)
        lasts = dict.fromkeys(remaining, 0)
        for ballot, c in profile.ballot_counts.items():
            firsts[_top(ballot, remaining)] += c
            lasts[_bottom(ballot, remaining)] += c
        leader = max(remaining, key=firsts.__getitem__)
        if firsts[leader] * 2 > n:
            return eliminated, frozenset({leader})
        worst = max(lasts.values())
        out = frozenset(x for x in remaining if lasts[x] == worst)
        if len(out) == len(remaining):
            return eliminated, out
        eliminated.append(out)
        remaining = [x for x in remaining if x not in out]
    return eliminated, frozenset(remaining)


def coombs(profile: Profile) -> frozenset:
    return coombs_rounds(profile)[1]


def kemeny_score(profile: Profile, order) -> int:
    """Voters disagreeing with each pair of ``order``, summed."""
    return sum(profile.support(y, x) for x, y in itertools.combinations(order, 2))


def kemeny(profile: Profile) -> frozenset:
    if len(profile.alternatives) > 5:
        raise DomainError("kemeny enumerates orders; at most 5 alternatives")
    scored = [(kemeny_score(profile, o), o[0]) for o in itertools.permutations(profile.alternatives)]
    best = min(s for s, _ in scored)
    return frozenset(top for s, top in scored if s == best)


def trivial(profile: HasMargins) -> frozenset:
    return frozenset(profile.alternatives)


def fixed_order(profile: HasMargins) -> frozenset:
    return frozenset({min(profile.alternatives)})


def dictator_pair(profile: Profile, i: int = 0, j: int = 1) -> frozenset:
    """Voter i's favorite when exactly voters i and j cast reversed linear orders; else Minimax."""
    if set(profile.voters) == {i, j}:
        bi, bj = profile.ballot_of(i), profile.ballot_of(j)
        alts = profile.alternatives
        if (
            bi.kind(alts) == LINEAR
            and bj.pairs == frozenset((b, a) for a, b in bi.pairs)
        ):
            return frozenset({_top(bi, alts)})
    return minimax(profile)


def homogeneity_violator(source: HasMargins) -> frozenset:
    """Minimax, widened to the runner-up when scores are distinct, one apart, and the runner-up beats the winner."""
    alts = source.alternatives
    if len(alts) > 3:
        raise DomainError("defined for two or three alternatives")
    scores = {a: minimax_score(source, a) for a in alts}
    if len(alts) < 2 or len(set(scores.values())) != len(alts):
        return minimax(source)
    ranked = sorted(alts, key=scores.__getitem__)
    winner, second = ranked[0], ranked[1]
    if scores[second] - scores[winner] <= 1 and source.margin(second, winner) > 0:
        return frozenset({winner, second})
    return frozenset({winner})


def block_condition_roles(profile: Profile) -> list[tuple[int, int, int]]:
    """Role assignments (x, y, z) meeting the cycle inequality and the no-yxz condition."""
    alts = profile.alternatives
    hits = []
    if len(alts) != 3:
        return hits
    for x, y, z in itertools.permutations(alts):
        n, k, m = profile.margin(x, y), profile.margin(y, z), profile.margin(z, x)
        if n > 0 and k > 0 and m > 0 and 0 <= m - n < k - m:
            forbidden = Ballot.from_order((y, x, z))
            if forbidden not in profile.ballot_counts:
                hits.append((x, y, z))
    return hits


def block_violator(profile: Profile) -> frozenset:
    if len(profile.alternatives) > 3:
        raise DomainError("defined for two or three alternatives")
    roles = block_condition_roles(profile)
    # the cycle inequality forces the weakest edge onto x -> y, so one rotation at most
    assert len(roles) <= 1, roles
    if roles:
        return frozenset({roles[0][0]})
    return minimax(profile)


# -- registry ------------------------------------------------------------------


@dataclass(frozen=True)
class Method:
    id: str
    func: Callable
    min_alternatives: int = 1
    max_alternatives: int | None = None
    ballot_kind: str = RELATION  # weakest ballot kind accepted
    anonymous: bool = True
    claims: frozenset = field(default_factory=frozenset)
    scores: Callable | None = None
    score_name: str = ""

    def accepts(self, profile: Profile) -> bool:
        n = len(profile.alternatives)
        if n < self.min_alternatives or (self.max_alternatives is not None and n > self.max_alternatives):
            return False
        return kind_at_least(profile.ballot_kind, self.ballot_kind)

    def __call__(self, profile: Profile) -> frozenset:
        if not self.accepts(profile):
            raise DomainError(
                f"{self.id} is not defined on {len(profile.alternatives)} alternatives "
                f"with {profile.ballot_kind} ballots"
            )
        if len(profile.alternatives) == 1:
            return frozenset(profile.alternatives)
        winners = self.func(profile)
        assert winners and winners <= set(profile.alternatives), (self.id, winners)
        return winners


_ALL = frozenset(MINIMAX_AXIOMS)


def _without(*names: str) -> frozenset:
    return _ALL - set(names)


METHODS = {
    m.id: m
    for m in [
        Method("majority", majority, min_alternatives=2, max_alternatives=2,
               claims=frozenset({"anonymity", "neutrality", "weak-positive-responsiveness"})),
        Method("minimax", minimax, claims=_ALL | {"immunity-to-spoilers"},
               scores=minimax_score, score_name="minimax score"),
        Method("minimax-support", minimax_support, claims=_without("positive-involvement"),
               scores=support_loss, score_name="support loss"),
        Method("minimax-mb", minimax_mb, claims=_ALL | {"positive-responsiveness-full"},
               scores=marginal_borda_score, score_name="marginal Borda score"),
        Method("borda-marginal", borda_marginal, claims=_without("near-immunity-to-spoilers"),
               scores=marginal_borda_score, score_name="marginal Borda score"),
        Method("condorcet-plurality", condorcet_plurality,
               claims=_without("positive-involvement") | {"immunity-to-spoilers"},
               scores=plurality_score, score_name="plurality score"),
        Method("bucklin", bucklin, max_alternatives=3, ballot_kind=LINEAR),
        Method("coombs", coombs, max_alternatives=3, ballot_kind=LINEAR),
        Method("kemeny", kemeny, max_alternatives=5, ballot_kind=LINEAR,
               claims=frozenset({"anonymity", "neutrality", "weak-positive-responsiveness"}),
               scores=None),
        Method("trivial", trivial, claims=_without("weak-positive-responsiveness")),
        Method("fixed-order", fixed_order, claims=_without("neutrality")),
        Method("dictator-pair", dictator_pair, anonymous=False, claims=_without("anonymity")),
        Method("homogeneity-violator", homogeneity_violator, max_alternatives=3,
               claims=_without("homogeneity"), scores=minimax_score, score_name="minimax score"),
        Method("block-violator", block_violator, max_alternatives=3,
               claims=_without("block-preservation"), scores=minimax_score, score_name="minimax score"),
    ]
}


def get_method(method_id: str) -> Method:
    try:
        return METHODS[method_id]
    except KeyError:
        raise DomainError(f"unknown method {method_id!r}") from None


def resolve(method) -> Method:
    return method if isinstance(method, Method) else get_method(method)
