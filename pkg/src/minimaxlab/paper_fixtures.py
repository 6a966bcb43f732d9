"""Worked examples with known outcomes, checked by ``minimaxlab paper-examples``.

Each fixture recomputes a value from a profile and compares it with the
published outcome.  Profiles use the line format (``count: ranking``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import methods as M
from . import transforms as tf
from .formats import parse_external
from .margins import MarginGraph, condorcet_winner
from .profile import Profile, parse_tiers

PROFILES = {
    "support-vs-margin": "8: b>c>a\n6: a>b=c\n4: c>a>b\n",
    "cp-no-show": "4: a>b>c\n4: b>c>a\n3: c>a>b\n2: c>b>a\n",
    "homogeneity-split": "6: a>b=c\n1: b>a=c\n4: b>c>a\n3: c>a>b\n",
    "block-switch": "4: x>y>z\n5: y>z>x\n2: z>x>y\n",
    "bucklin-block": "1: a>b>c\n3: c>a>b\n",
    "coombs-block": "2: a>b>c\n2: c>b>a\n2: c>a>b\n1: b>a>c\n",
    "pr-spoiler-tradeoff": "1: a>b>c\n1: a>c>b\n1: b>a>c\n1: b>c>a\n1: c>a>b\n1: c>b>a\n1: c>b>a\n1: b>c>a\n",
}


def profile(name: str) -> Profile:
    return parse_external(PROFILES[name])


@dataclass(frozen=True)
class Fixture:
    name: str
    source: str
    compute: Callable[[], object]
    expected: object


def _labels(p: Profile, winners) -> list[str]:
    return p.names(winners)


def _margins(p: Profile, pairs) -> list[int]:
    return [p.margin(p.index_of(a), p.index_of(b)) for a, b in pairs]


def _supports(p: Profile, pairs) -> list[int]:
    return [p.support(p.index_of(a), p.index_of(b)) for a, b in pairs]


def _add(p: Profile, text: str, times: int = 1) -> Profile:
    index = {lab: a for a, lab in zip(p.alternatives, p.labels)}
    ballot = parse_tiers(text, index)
    for _ in range(times):
        p = tf.add_voter(p, ballot)
    return p


def _minimax_example():
    g = MarginGraph.from_margins((0, 1, 2), {(0, 1): 10, (1, 2): 6, (2, 0): 8})
    return sorted("abc"[x] for x in M.minimax(g))


def _cw_label(p: Profile):
    cw = condorcet_winner(p)
    return None if cw is None else p.label(cw)


def _coombs_trace(p: Profile):
    eliminated, winners = M.coombs_rounds(p)
    return [_labels(p, e) for e in eliminated], _labels(p, winners)


def _tradeoff_switch() -> Profile:
    p = profile("pr-spoiler-tradeoff")
    voter = next(v for v, b in p.ballots if b.format(p.alternatives, p.labels) == "b>a>c")
    return tf.apply_improvement(p, voter, p.index_of("c"), add=[[2, 0]], remove=[[0, 2]])


def fixtures() -> list[Fixture]:
    r3, l3, l4, l5 = profile("support-vs-margin"), profile("cp-no-show"), profile("homogeneity-split"), profile("block-switch")
    bk, cb, ap = profile("bucklin-block"), profile("coombs-block"), profile("pr-spoiler-tradeoff")
    cyc = [("b", "c"), ("c", "a"), ("a", "b")]
    return [
        Fixture("minimax-three-cycle", "margins a>b 10, b>c 6, c>a 8", _minimax_example, ["c"]),
        Fixture("support-vs-margin-margins", "support vs margin", lambda: _margins(r3, cyc), [4, 6, 2]),
        Fixture("support-vs-margin-supports", "support vs margin", lambda: _supports(r3, cyc), [8, 12, 10]),
        Fixture("support-vs-margin-support-minimax", "support vs margin", lambda: _labels(r3, M.minimax_support(r3)), ["c"]),
        Fixture("support-vs-margin-margin-minimax", "support vs margin", lambda: _labels(r3, M.minimax(r3)), ["b"]),
        Fixture("support-vs-margin-minimax-scores", "support vs margin",
                lambda: {r3.label(a): M.minimax_score(r3, a) for a in r3.alternatives}, {"a": 6, "b": 2, "c": 4}),
        Fixture("support-vs-margin-plus-3cba-condorcet", "support vs margin", lambda: _cw_label(_add(r3, "c>b>a", 3)), "b"),
        Fixture("support-vs-margin-plus-3cba-support-minimax", "support vs margin",
                lambda: _labels(r3, M.minimax_support(_add(r3, "c>b>a", 3))), ["b"]),
        Fixture("cp-no-show-margins", "Condorcet-Plurality no-show", lambda: _margins(l3, [("a", "b"), ("b", "c"), ("c", "a")]), [1, 3, 5]),
        Fixture("cp-no-show-cp", "Condorcet-Plurality no-show", lambda: _labels(l3, M.condorcet_plurality(l3)), ["c"]),
        Fixture("cp-no-show-cp-plus-cba", "Condorcet-Plurality no-show",
                lambda: _labels(l3, M.condorcet_plurality(_add(l3, "c>b>a"))), ["b"]),
        Fixture("homogeneity-violator", "homogeneity violator", lambda: _labels(l4, M.homogeneity_violator(l4)), ["a", "c"]),
        Fixture("homogeneity-violator-doubled", "homogeneity violator",
                lambda: _labels(l4, M.homogeneity_violator(tf.scale(l4, 2))), ["a"]),
        Fixture("block-switch-violator", "block violator", lambda: _labels(l5, M.block_violator(l5)), ["x"]),
        Fixture("block-switch-minimax", "block violator", lambda: _labels(l5, M.minimax(l5)), ["y"]),
        Fixture("block-switch-violator-plus-block", "block violator",
                lambda: _labels(l5, M.block_violator(tf.add_block(l5))), ["y"]),
        Fixture("bucklin-before-block", "block sensitivity", lambda: _labels(bk, M.bucklin(bk)), ["c"]),
        Fixture("bucklin-top2-after-block", "block sensitivity",
                lambda: {k: v for k, v in _named_counts(tf.add_block(bk)).items() if k in "ac"}, {"a": 8, "c": 7}),
        Fixture("bucklin-after-block", "block sensitivity", lambda: _labels(bk, M.bucklin(tf.add_block(bk))), ["a"]),
        Fixture("coombs-before-block", "block sensitivity", lambda: _coombs_trace(cb), ([], ["c"])),
        Fixture("coombs-after-block", "block sensitivity", lambda: _coombs_trace(tf.add_block(cb)), ([["c"]], ["a"])),
        Fixture("tradeoff-margins", "PR vs spoilers",
                lambda: _margins(ap, [("c", "b"), ("b", "a"), ("c", "a")]), [0, 2, 2]),
        Fixture("tradeoff-minimax", "PR vs spoilers", lambda: _labels(ap, M.minimax(ap)), ["b", "c"]),
        Fixture("tradeoff-switch-minimax-mb", "PR vs spoilers",
                lambda: _labels(ap, M.minimax_mb(_tradeoff_switch())), ["c"]),
    ]


def _named_counts(p: Profile) -> dict:
    return {p.label(a): c for a, c in M.bucklin_counts(p, 2).items()}


def _normalize(value):
    if isinstance(value, tuple):
        return [_normalize(v) for v in value]
    if isinstance(value, list):
        return [_normalize(v) for v in value]
    return value


def run(fixture_list=None) -> tuple[bool, list[str]]:
    """Evaluate every fixture; returns (all passed, report lines)."""
    fixture_list = fixtures() if fixture_list is None else fixture_list
    lines = []
    ok = True
    for fx in fixture_list:
        got = fx.compute()
        passed = _normalize(got) == _normalize(fx.expected)
        ok &= passed
        status = "PASS" if passed else "FAIL"
        line = f"{status}  {fx.name:<40} [{fx.source}]"
        if not passed:
            line += f"  expected {fx.expected!r}, got {got!r}"
        lines.append(line)
    return ok, lines
