"""Per-profile axiom and criterion checkers.

Each ``check_*`` function returns ``None`` when the profile passes and an
:class:`AxiomWitness` describing the first violation otherwise.  A witness
records the base profile and either a replayable transform or a second
profile, so :func:`verify_witness` can re-derive the violation from scratch.

Convention: ``winners_before`` is F(base profile) and ``winners_after`` is F
of the derived profile.  For spoiler witnesses the derived profile is the base
with the spoiler removed.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from . import transforms as tf
from .margins import (
    condorcet_loser,
    condorcet_winner,
    is_uniquely_weighted,
    ordinal_margin_graph,
    smith_set,
)
from .methods import Method, minimax, resolve
from .profile import LINEAR, Ballot, DomainError, Profile, ballot_space, canonical_form

AXIOMS = (
    "anonymity",
    "neutrality",
    "weak-positive-responsiveness",
    "positive-responsiveness-full",
    "positive-involvement",
    "immunity-to-spoilers",
    "near-immunity-to-spoilers",
    "homogeneity",
    "block-preservation",
    "condorcet-consistency",
    "condorcet-loser-criterion",
    "smith-criterion",
    "resolvability-uw",
    "ordinal-margin-invariance",
)
CRITERIA = (
    "condorcet-consistency",
    "condorcet-loser-criterion",
    "smith-criterion",
    "resolvability-uw",
    "refines-minimax",
)


@dataclass(frozen=True)
class AxiomWitness:
    axiom: str
    method: str
    base_profile: Profile
    winners_before: frozenset
    winners_after: frozenset
    transform: tf.TransformRecord | None = None
    other_profile: Profile | None = None
    focus: dict = field(default_factory=dict)
    note: str = ""

    def derived_profile(self) -> Profile:
        if self.transform is not None:
            return tf.apply(self.transform, self.base_profile)
        if self.other_profile is not None:
            return self.other_profile
        return self.base_profile


def _evaluate(method: Method, profile: Profile):
    """F(profile), or None when the profile lies outside the method's domain."""
    return method(profile) if method.accepts(profile) else None


def _require(method: Method, profile: Profile) -> frozenset:
    return method(profile)


def _names(profile: Profile, alts) -> str:
    return "{" + ",".join(profile.names(alts)) + "}"


# -- May-style axioms ----------------------------------------------------------


def check_wpr(method, profile: Profile) -> AxiomWitness | None:
    method = resolve(method)
    before = _require(method, profile)
    for a in sorted(before):
        for voter, ballot in profile.ballots:
            if not ballot.is_uniquely_last(a, profile.alternatives):
                continue
            rec = tf.record("move-last-to-first", voter=voter, alternative=a)
            after = _evaluate(method, tf.apply(rec, profile))
            if after is not None and after != {a}:
                return AxiomWitness(
                    "weak-positive-responsiveness", method.id, profile, before, after, rec,
                    focus={"alternative": a, "voter": voter},
                    note=f"voter {voter} lifts {profile.label(a)} last->first; winners {_names(profile, after)}",
                )
    return None


def check_anonymity(method, profile: Profile, sample: int = 24, seed: int = 0) -> AxiomWitness | None:
    """Canonical renumbering, then every voter permutation when there are at most
    ``sample`` of them, otherwise ``sample`` seeded random ones."""
    method = resolve(method)
    before = _require(method, profile)
    voters = list(profile.voters)
    order = sorted(profile.ballots, key=lambda vb: (vb[1].key, vb[0]))
    mappings = [{v: i for i, (v, _) in enumerate(order)}]
    if math.factorial(len(voters)) <= sample:
        perms = itertools.permutations(voters)
    else:
        rng = random.Random(seed)
        perms = (rng.sample(voters, len(voters)) for _ in range(sample))
    mappings.extend(dict(zip(voters, p)) for p in perms)
    for mapping in mappings:
        if all(k == v for k, v in mapping.items()):
            continue
        rec = tf.record("permute-voters", mapping=sorted([k, v] for k, v in mapping.items()))
        after = _evaluate(method, tf.apply(rec, profile))
        if after is not None and after != before:
            return AxiomWitness(
                "anonymity", method.id, profile, before, after, rec,
                note=f"renaming voters changes winners to {_names(profile, after)}",
            )
    return None


def check_neutrality(method, profile: Profile) -> AxiomWitness | None:
    method = resolve(method)
    if len(profile.alternatives) > 5:
        raise DomainError("neutrality is checked exhaustively up to 5 alternatives")
    before = _require(method, profile)
    for mapping in tf.all_alternative_permutations(profile):
        if all(k == v for k, v in mapping.items()):
            continue
        rec = tf.record("permute-alts", mapping=sorted([k, v] for k, v in mapping.items()))
        derived = tf.apply(rec, profile)
        after = _evaluate(method, derived)
        if after is not None and frozenset(mapping[a] for a in before) != after:
            return AxiomWitness(
                "neutrality", method.id, profile, before, after, rec,
                note="renaming alternatives does not rename the winners",
            )
    return None


def check_positive_responsiveness_full(method, profile: Profile) -> AxiomWitness | None:
    method = resolve(method)
    before = _require(method, profile)
    for a in sorted(before):
        for voter in profile.voters:
            for derived, rec in tf.improvement_steps(profile, voter, a):
                after = _evaluate(method, derived)
                if after is not None and after != {a}:
                    return AxiomWitness(
                        "positive-responsiveness-full", method.id, profile, before, after, rec,
                        focus={"alternative": a, "voter": voter},
                        note=f"voter {voter} improves {profile.label(a)}; winners {_names(profile, after)}",
                    )
    return None


# -- variable-voter and variable-alternative axioms ------------------------------


def check_positive_involvement(method, profile: Profile, ballot_kind: str = LINEAR) -> AxiomWitness | None:
    method = resolve(method)
    before = _require(method, profile)
    space = ballot_space(profile.alternatives, ballot_kind)
    for a in sorted(before):
        for ballot in space:
            if not ballot.is_uniquely_first(a, profile.alternatives):
                continue
            rec = tf.record("add-voter", ballot=tf.ballot_pairs(ballot))
            after = _evaluate(method, tf.apply(rec, profile))
            if after is not None and a not in after:
                return AxiomWitness(
                    "positive-involvement", method.id, profile, before, after, rec,
                    focus={"alternative": a},
                    note=(f"adding {ballot.format(profile.alternatives, profile.labels)} "
                          f"drops {profile.label(a)}"),
                )
    return None


def check_immunity(method, profile: Profile, near: bool = False, any_size: bool = False) -> AxiomWitness | None:
    """a wins without b and beats b head-to-head, b loses, yet a loses.

    Scoped to three alternatives unless ``any_size`` is set; random searches
    over four alternatives opt in.
    """
    method = resolve(method)
    n = len(profile.alternatives)
    if n != 3 and not (any_size and n >= 3):
        raise DomainError("spoiler checks are scoped to three-alternative profiles")
    full = _require(method, profile)
    axiom = "near-immunity-to-spoilers" if near else "immunity-to-spoilers"
    for a, b in itertools.permutations(profile.alternatives, 2):
        if b in full or a in full:
            continue
        rec = tf.record("remove-alt", alternative=b)
        without_b = _evaluate(method, tf.apply(rec, profile))
        if without_b is None:
            continue
        if (without_b != {a}) if near else (a not in without_b):
            continue
        head_to_head = _evaluate(method, tf.restrict(profile, {a, b}))
        if head_to_head != {a}:
            continue
        return AxiomWitness(
            axiom, method.id, profile, full, without_b, rec,
            focus={"alternative": a, "spoiler": b},
            note=(f"{profile.label(a)} wins without {profile.label(b)} and beats it, "
                  f"but winners with it are {_names(profile, full)}"),
        )
    return None


def check_homogeneity(method, profile: Profile) -> AxiomWitness | None:
    method = resolve(method)
    before = _require(method, profile)
    rec = tf.record("scale", factor=2)
    after = _evaluate(method, tf.apply(rec, profile))
    if after is not None and not before <= after:
        return AxiomWitness("homogeneity", method.id, profile, before, after, rec,
                            note=f"doubling loses {_names(profile, before - after)}")
    return None


def check_block_preservation(method, profile: Profile) -> AxiomWitness | None:
    method = resolve(method)
    before = _require(method, profile)
    rec = tf.record("add-block")
    after = _evaluate(method, tf.apply(rec, profile))
    if after is not None and not before <= after:
        return AxiomWitness("block-preservation", method.id, profile, before, after, rec,
                            note=f"adding a block loses {_names(profile, before - after)}")
    return None


# -- single-profile criteria -----------------------------------------------------


def _criterion_fails(criterion: str, profile: Profile, winners: frozenset) -> str | None:
    if criterion == "condorcet-consistency":
        cw = condorcet_winner(profile)
        if cw is not None and winners != {cw}:
            return f"Condorcet winner {profile.label(cw)} not the unique winner"
    elif criterion == "condorcet-loser-criterion":
        cl = condorcet_loser(profile)
        if cl is not None and cl in winners:
            return f"Condorcet loser {profile.label(cl)} selected"
    elif criterion == "smith-criterion":
        smith = smith_set(profile)
        if not winners <= smith:
            return f"winners outside the Smith set {_names(profile, smith)}"
    elif criterion == "resolvability-uw":
        if is_uniquely_weighted(profile) and len(winners) > 1:
            return "several winners in a uniquely-weighted profile"
    elif criterion == "refines-minimax":
        mm = minimax(profile)
        if not winners <= mm:
            return f"winners not among the Minimax winners {_names(profile, mm)}"
    else:
        raise DomainError(f"unknown criterion {criterion!r}")
    return None


def check_criterion(method, profile: Profile, criterion: str) -> AxiomWitness | None:
    method = resolve(method)
    if criterion not in CRITERIA:
        raise DomainError(f"unknown criterion {criterion!r}")
    winners = _require(method, profile)
    note = _criterion_fails(criterion, profile, winners)
    if note is None:
        return None
    after = minimax(profile) if criterion == "refines-minimax" else winners
    return AxiomWitness(criterion, method.id, profile, winners, after, note=note)


def check_ordinal_margin_invariance(method, first: Profile, second: Profile) -> AxiomWitness | None:
    method = resolve(method)
    if first.alternatives != second.alternatives:
        return None
    if ordinal_margin_graph(first) != ordinal_margin_graph(second):
        return None
    before = _require(method, first)
    after = _evaluate(method, second)
    if after is not None and after != before:
        return AxiomWitness(
            "ordinal-margin-invariance", method.id, first, before, after, other_profile=second,
            note=f"same ordinal margin graph, winners {_names(first, before)} vs {_names(first, after)}",
        )
    return None


def ordinal_companions(profile: Profile) -> list[Profile]:
    """Profiles sharing the ordinal margin graph: multiples and block additions."""
    return [tf.scale(profile, 2), tf.scale(profile, 5), tf.add_block(profile)]


def check(method, profile: Profile, axiom: str, ballot_kind: str | None = None) -> AxiomWitness | None:
    """Dispatch on an axiom or criterion id."""
    if axiom == "weak-positive-responsiveness":
        return check_wpr(method, profile)
    if axiom == "positive-involvement":
        return check_positive_involvement(method, profile, ballot_kind or LINEAR)
    if axiom in ("immunity-to-spoilers", "near-immunity-to-spoilers"):
        return check_immunity(method, profile, near=axiom.startswith("near"),
                              any_size=len(profile.alternatives) > 3)
    if axiom == "homogeneity":
        return check_homogeneity(method, profile)
    if axiom == "block-preservation":
        return check_block_preservation(method, profile)
    if axiom == "anonymity":
        return check_anonymity(method, profile)
    if axiom == "neutrality":
        return check_neutrality(method, profile)
    if axiom == "positive-responsiveness-full":
        return check_positive_responsiveness_full(method, profile)
    if axiom == "ordinal-margin-invariance":
        for other in ordinal_companions(profile):
            w = check_ordinal_margin_invariance(method, profile, other)
            if w is not None:
                return w
        return None
    if axiom in CRITERIA:
        return check_criterion(method, profile, axiom)
    raise DomainError(f"unknown axiom {axiom!r}")


# -- replay ----------------------------------------------------------------------


def violation_holds(w: AxiomWitness, method: Method) -> bool:
    """Re-derive, from the recorded profiles alone, that the axiom's implication fails."""
    base = w.base_profile
    derived = w.derived_profile()
    before, after = w.winners_before, w.winners_after
    rec = w.transform
    kind = rec.kind if rec is not None else None
    axiom = w.axiom
    if axiom == "weak-positive-responsiveness":
        a, voter = rec.params["alternative"], rec.params["voter"]
        return kind == "move-last-to-first" and a in before and after != {a} and \
            base.ballot_of(voter).is_uniquely_last(a, base.alternatives)
    if axiom == "positive-responsiveness-full":
        a = rec.params["alternative"]
        return kind == "improve" and a in before and after != {a}
    if axiom == "positive-involvement":
        ballot = Ballot(frozenset(tuple(p) for p in rec.params["ballot"]))
        a = w.focus["alternative"]
        return kind == "add-voter" and ballot.is_uniquely_first(a, base.alternatives) \
            and a in before and a not in after
    if axiom in ("immunity-to-spoilers", "near-immunity-to-spoilers"):
        a, b = w.focus["alternative"], w.focus["spoiler"]
        if kind != "remove-alt" or rec.params["alternative"] != b:
            return False
        entry = after == {a} if axiom.startswith("near") else a in after
        return entry and method(tf.restrict(base, {a, b})) == {a} and b not in before and a not in before
    if axiom == "homogeneity":
        return kind == "scale" and rec.params["factor"] == 2 and not before <= after
    if axiom == "block-preservation":
        return kind == "add-block" and not before <= after
    if axiom == "anonymity":
        return kind == "permute-voters" and before != after
    if axiom == "neutrality":
        mapping = {x: y for x, y in rec.params["mapping"]}
        return kind == "permute-alts" and frozenset(mapping[x] for x in before) != after
    if axiom == "ordinal-margin-invariance":
        return ordinal_margin_graph(base) == ordinal_margin_graph(derived) and before != after
    if axiom in CRITERIA:
        return _criterion_fails(axiom, base, before) is not None
    raise DomainError(f"unknown axiom {axiom!r}")


def verify_witness(w: AxiomWitness, method=None) -> bool:
    """Replay: recompute both winner sets, compare with the record, re-check the violation."""
    method = resolve(method if method is not None else w.method)
    if method(w.base_profile) != w.winners_before:
        return False
    if w.axiom == "refines-minimax":
        expected_after = minimax(w.base_profile)
    elif w.axiom in CRITERIA:
        expected_after = w.winners_before
    else:
        expected_after = method(w.derived_profile())
    if expected_after != w.winners_after:
        return False
    return violation_holds(w, method)


# -- the positive-responsiveness / spoiler tradeoff ------------------------------


def tradeoff_profiles() -> tuple[Profile, Profile, dict]:
    """The eight-voter profile (a block plus cba and bca) and the bac -> bca switch."""
    base = tf.concat(
        tf.block((0, 1, 2)),
        Profile.from_ballots((0, 1, 2), [Ballot.from_order((2, 1, 0)), Ballot.from_order((1, 2, 0))]),
    )
    bac = Ballot.from_order((1, 0, 2))
    voter = next(v for v, b in base.ballots if b == bac)
    change = {"voter": voter, "alternative": 2, "add": [[2, 0]], "remove": [[0, 2]]}
    switched = tf.apply_improvement(base, voter, 2, change["add"], change["remove"])
    return base, switched, change


def tradeoff_witness(method) -> AxiomWitness | None:
    """Look for the axiom ``method`` gives up on the tradeoff construction.

    With anonymity and neutrality, c wins the eight-voter profile; the bac -> bca
    switch then forces {c} by positive responsiveness, while immunity keeps b in.
    """
    method = resolve(method)
    base, switched, change = tradeoff_profiles()
    c = 2
    for check_fn in (check_anonymity, check_neutrality):
        w = check_fn(method, base)
        if w is not None:
            return w
    before = method(base)
    if c in before:
        rec = tf.TransformRecord("improve", change)
        after = method(switched)
        if after != {c}:
            return AxiomWitness(
                "positive-responsiveness-full", method.id, base, before, after, rec,
                focus={"alternative": c, "voter": change["voter"]},
                note="bac -> bca improves c, yet c is not the unique winner",
            )
    for profile in (switched, base):
        w = check_immunity(method, profile) or check_positive_responsiveness_full(method, profile)
        if w is not None:
            return w
    return None


def tradeoff_refutes(method) -> AxiomWitness | None:
    """Witness against a method claiming both full positive responsiveness and immunity."""
    method = resolve(method)
    w = tradeoff_witness(method)
    return w if w is not None and w.axiom in method.claims else None
