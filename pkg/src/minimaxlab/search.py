"""Exhaustive and random exploration of profile space.

Anonymous methods are searched over anonymous classes: one representative per
ballot-count multiset, ordered by voter total and then by
``itertools.combinations_with_replacement`` order over the ballot space.
Methods that are not anonymous get labelled profiles (every assignment of
ballots to voters 0..n-1).

Every profile in a stream has an index, so a search can be split into disjoint
index ranges and the pieces merged back deterministically.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from math import comb

from . import axioms
from .formats import canonical_json, witness_key, witness_to_dict
from .methods import resolve
from .profile import KIND_ALIASES, LINEAR, Ballot, DomainError, Profile, ballot_space

MODES = ("exhaustive", "random")
REFINES = "refines-minimax"


@dataclass(frozen=True)
class SearchSpec:
    method: str
    target: str
    alternatives: int = 3
    max_voters: int = 5
    ballot_kind: str = LINEAR
    mode: str = "exhaustive"
    seed: int | None = None
    budget: int | None = None
    start: int = 0
    stop: int | None = None
    max_witnesses: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "ballot_kind", KIND_ALIASES.get(self.ballot_kind, self.ballot_kind))
        resolve(self.method)
        if self.target not in axioms.AXIOMS and self.target not in axioms.CRITERIA:
            raise DomainError(f"unknown axiom or criterion {self.target!r}")
        if self.mode not in MODES:
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.max_voters < 1 or self.alternatives < 1:
            raise DomainError("need at least one alternative and one voter")
        if self.mode == "exhaustive":
            if self.alternatives > 4:
                raise DomainError("exhaustive search supports at most 4 alternatives")
            if self.alternatives == 4 and self.ballot_kind != LINEAR:
                raise DomainError("4-alternative enumeration is linear-only")
        else:
            if self.seed is None:
                raise DomainError("random mode requires a seed")
            if self.budget is None and self.stop is None:
                raise DomainError("random mode requires a budget")
            if self.alternatives > 5:
                raise DomainError("random search supports at most 5 alternatives")
        if self.start < 0 or (self.stop is not None and self.stop < self.start):
            raise DomainError("invalid index range")

    @property
    def end(self) -> int | None:
        """Exclusive end of the index range covered by this spec."""
        ends = [x for x in (self.stop, None if self.budget is None else self.start + self.budget) if x is not None]
        total = stream_size(self)
        if total is not None:
            ends.append(total)
        return min(ends) if ends else None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchReport:
    spec: SearchSpec
    profiles_examined: int
    witnesses: list  # of (index, AxiomWitness)
    elapsed: float
    exhausted: bool
    skipped_indices: list = field(default_factory=list)  # outside the method's or checker's domain

    @property
    def skipped(self) -> int:
        return len(self.skipped_indices)

    def witness_list(self) -> list:
        return [w for _, w in self.witnesses]

    def to_dict(self) -> dict:
        """Canonical content; elapsed time is left out so equal runs compare equal."""
        return {
            "spec": self.spec.to_dict(),
            "profiles_examined": self.profiles_examined,
            "skipped": self.skipped,
            "exhausted": self.exhausted,
            "witnesses": [{"index": i, **witness_to_dict(w)} for i, w in self.witnesses],
        }

    def canonical(self) -> str:
        return canonical_json(self.to_dict())


# -- streams ---------------------------------------------------------------------


def class_count(t: int, max_voters: int, min_voters: int = 1) -> int:
    """Number of ballot-count multisets over ``t`` ballots with min..max voters."""
    return sum(comb(n + t - 1, t - 1) for n in range(min_voters, max_voters + 1))


def _check_enumeration(alternatives: int, ballot_kind: str) -> None:
    if alternatives > 4:
        raise DomainError("enumeration supports at most 4 alternatives")
    if alternatives == 4 and ballot_kind != LINEAR:
        raise DomainError("4-alternative enumeration is linear-only")


def _ballot_tuples(alternatives: int, max_voters: int, ballot_kind: str, anonymous: bool):
    ballot_kind = KIND_ALIASES.get(ballot_kind, ballot_kind)
    _check_enumeration(alternatives, ballot_kind)
    space = ballot_space(tuple(range(alternatives)), ballot_kind)
    for n in range(1, max_voters + 1):
        if anonymous:
            yield from itertools.combinations_with_replacement(space, n)
        else:
            yield from itertools.product(space, repeat=n)


def enumerate_profiles(alternatives: int, max_voters: int, ballot_kind: str = LINEAR, anonymous: bool = True):
    """Yield one profile per anonymous class (or every labelled profile)."""
    alts = tuple(range(alternatives))
    for combo in _ballot_tuples(alternatives, max_voters, ballot_kind, anonymous):
        yield Profile.from_ballots(alts, combo)


def stream_size(spec: SearchSpec) -> int | None:
    if spec.mode != "exhaustive":
        return None
    t = len(ballot_space(spec.alternatives, spec.ballot_kind))
    if resolve(spec.method).anonymous:
        return class_count(t, spec.max_voters)
    return sum(t**n for n in range(1, spec.max_voters + 1))


def random_profile(seed, alternatives: int, voters: int, ballot_kind: str = LINEAR) -> Profile:
    """``voters`` i.i.d. uniform ballots from the ballot space, reproducible from ``seed``."""
    if voters < 1:
        raise DomainError("need at least one voter")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    alts = tuple(range(alternatives))
    space = ballot_space(alts, ballot_kind)
    return Profile.from_ballots(alts, [rng.choice(space) for _ in range(voters)])


def _random_stream(spec: SearchSpec, start: int, end: int):
    for i in range(start, end):
        rng = random.Random(f"{spec.seed}-{i}")
        n = rng.randint(1, spec.max_voters)
        yield i, random_profile(rng, spec.alternatives, n, spec.ballot_kind)


def profile_stream(spec: SearchSpec):
    """``(index, profile)`` pairs for the search spec's index range."""
    end = spec.end
    if spec.mode == "random":
        yield from _random_stream(spec, spec.start, end)
        return
    anonymous = resolve(spec.method).anonymous
    alts = tuple(range(spec.alternatives))
    combos = _ballot_tuples(spec.alternatives, spec.max_voters, spec.ballot_kind, anonymous)
    for i, combo in itertools.islice(enumerate(combos), spec.start, end):
        yield i, Profile.from_ballots(alts, combo)


# -- search ----------------------------------------------------------------------


def find_violation(spec: SearchSpec) -> SearchReport:
    method = resolve(spec.method)
    t0 = time.perf_counter()
    found = []
    skipped = []
    examined = 0
    stopped_early = False
    for index, profile in profile_stream(spec):
        examined += 1
        if not method.accepts(profile):
            skipped.append(index)
            continue
        try:
            w = axioms.check(method, profile, spec.target, ballot_kind=spec.ballot_kind)
        except DomainError:
            skipped.append(index)
            continue
        if w is not None:
            found.append((index, w))
            if spec.max_witnesses is not None and len(found) >= spec.max_witnesses:
                stopped_early = True
                break
    total = stream_size(spec)
    exhausted = (
        spec.mode == "exhaustive"
        and not stopped_early
        and spec.start == 0
        and spec.end == total
    )
    return SearchReport(spec, examined, found, time.perf_counter() - t0, exhausted, skipped)


def verify_refines_minimax(method, alternatives: int = 3, max_voters: int = 7, ballot_kind: str = LINEAR,
                           workers: int = 1) -> SearchReport:
    """Every enumerated profile where F(P) is not a subset of Minimax(P)."""
    spec = SearchSpec(resolve(method).id, REFINES, alternatives, max_voters, ballot_kind)
    return run(spec, workers)


# -- partitioning and merging ----------------------------------------------------


def partition(spec: SearchSpec, workers: int) -> list[SearchSpec]:
    """Disjoint index ranges covering the search spec's range."""
    if workers < 1:
        raise DomainError("workers must be at least 1")
    if workers == 1:
        return [spec]
    end = spec.end
    if end is None:
        raise DomainError("cannot partition an unbounded stream")
    size = end - spec.start
    bounds = [spec.start + size * k // workers for k in range(workers + 1)]
    return [replace(spec, start=lo, stop=hi, budget=None) for lo, hi in zip(bounds, bounds[1:])]


def merge(spec: SearchSpec, reports: list[SearchReport]) -> SearchReport:
    """Combine sub-reports of ``partition(spec, k)`` into the serial report."""
    found = sorted((pair for r in reports for pair in r.witnesses), key=lambda p: (p[0], witness_key(p[1])))
    skipped = sorted(i for r in reports for i in r.skipped_indices)
    examined = sum(r.profiles_examined for r in reports)
    stopped_early = spec.max_witnesses is not None and len(found) >= spec.max_witnesses
    if stopped_early:
        found = found[: spec.max_witnesses]
        last = found[-1][0]
        examined = last + 1 - spec.start
        skipped = [i for i in skipped if i <= last]
    total = stream_size(spec)
    exhausted = spec.mode == "exhaustive" and not stopped_early and spec.start == 0 and spec.end == total \
        and examined == total
    elapsed = max((r.elapsed for r in reports), default=0.0)
    return SearchReport(spec, examined, found, elapsed, exhausted, skipped)


def run(spec: SearchSpec, workers: int = 1) -> SearchReport:
    if workers <= 1:
        return find_violation(spec)
    parts = partition(spec, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(find_violation, parts))
    return merge(spec, reports)


# -- paired search ---------------------------------------------------------------


def margin_profile(alternatives, margins: dict) -> Profile:
    """A linear profile realizing even ``margins`` (McGarvey's construction).

    Each unit of two on the edge (x, y) is one pair of voters, x > y > rest and
    reversed(rest) > x > y, which cancel on every other pair.
    """
    alternatives = tuple(alternatives)
    ballots = []
    for (x, y), w in sorted(margins.items()):
        if w < 0 or w % 2:
            raise DomainError("margins must be even and nonnegative")
        rest = [a for a in alternatives if a not in (x, y)]
        ballots += [Ballot.from_order([x, y, *rest]), Ballot.from_order([*reversed(rest), x, y])] * (w // 2)
    if not ballots:
        raise DomainError("all margins are zero")
    # well-formed by construction
    return Profile(alternatives, tuple(enumerate(ballots)), check=False)


def ordinal_pair(seed, alternatives: int = 4, max_weight: int = 8) -> tuple[Profile, Profile]:
    """Two profiles with the same ordinal margin graph but different weights.

    A random tournament gets weights from a few levels; the second profile
    relabels the levels by a random increasing map.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    alts = tuple(range(alternatives))
    levels = sorted(rng.sample(range(1, max_weight + 1), min(3, max_weight)))
    weights = {}
    for x, y in itertools.combinations(alts, 2):
        edge = (x, y) if rng.random() < 0.5 else (y, x)
        weights[edge] = rng.choice(levels)
    used = sorted(set(weights.values()))
    image = sorted(rng.sample(range(1, max_weight + 1), len(used)))
    relabel = dict(zip(used, image))
    first = margin_profile(alts, {e: 2 * w for e, w in weights.items()})
    second = margin_profile(alts, {e: 2 * relabel[w] for e, w in weights.items()})
    return first, second


@dataclass
class PairSearchReport:
    pairs_examined: int
    witnesses: list = field(default_factory=list)  # of (index, AxiomWitness)


def search_ordinal_invariance(method, seed: int, pairs: int, alternatives: int = 4, max_weight: int = 8,
                              max_witnesses: int | None = 1) -> PairSearchReport:
    """Random profile pairs sharing an ordinal margin graph, checked for equal winners."""
    method = resolve(method)
    report = PairSearchReport(0)
    for i in range(pairs):
        first, second = ordinal_pair(random.Random(f"{seed}-pair-{i}"), alternatives, max_weight)
        report.pairs_examined += 1
        w = axioms.check_ordinal_margin_invariance(method, first, second)
        if w is not None:
            report.witnesses.append((i, w))
            if max_witnesses is not None and len(report.witnesses) >= max_witnesses:
                break
    return report
