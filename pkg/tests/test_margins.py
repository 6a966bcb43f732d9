import itertools

import pytest
from hypothesis import given, settings

import oracles
from conftest import rankings, to_profile
from minimaxlab.margins import (
    ASCENDING,
    CONDORCET_LOSER,
    CONDORCET_WINNER,
    DESCENDING,
    STRICTLY_ASCENDING,
    SYMMETRIC,
    MarginGraph,
    classify_three_cycle,
    condorcet_loser,
    condorcet_winner,
    defensible_set,
    is_uniquely_weighted,
    margin,
    margin_graph,
    ordinal_margin_graph,
    smith_set,
    support,
    weak_condorcet_winners,
)
from minimaxlab.profile import DomainError, Profile
from minimaxlab.search import enumerate_profiles


@settings(max_examples=80, deadline=None)
@given(rankings())
def test_margins_and_supports_match_oracle(data):
    alts, ranks = data
    p = to_profile(alts, ranks)
    for a, b in itertools.permutations(alts, 2):
        assert support(p, a, b) == oracles.support(ranks, a, b)
        assert margin(p, a, b) == oracles.margin(ranks, a, b) == -margin(p, b, a)


@settings(max_examples=80, deadline=None)
@given(rankings())
def test_smith_and_condorcet_match_oracle(data):
    alts, ranks = data
    p = to_profile(alts, ranks)
    assert smith_set(p) == oracles.smith_set(ranks, alts)
    assert condorcet_winner(p) == oracles.condorcet_winner(ranks, alts)


def test_margin_rejects_equal_alternatives():
    p = Profile.from_rankings([(1, "a>b")])
    with pytest.raises(DomainError):
        margin(p, 0, 0)


def test_weak_winners_loser_and_defensible():
    p = Profile.from_rankings([(1, "a>b>c"), (1, "b>a>c")])
    assert weak_condorcet_winners(p) == {0, 1}
    assert condorcet_loser(p) == 2
    assert condorcet_winner(p) is None
    assert defensible_set(p) == {0, 1}


def test_defensible_definition_brute_force():
    for p in enumerate_profiles(3, 4):
        alts = p.alternatives
        expected = {
            a for a in alts
            if all(any(p.margin(c, b) >= p.margin(b, a) for c in alts if c != b) for b in alts if b != a)
        }
        assert defensible_set(p) == expected


def test_uniquely_weighted():
    g = MarginGraph.from_margins((0, 1, 2), {(0, 1): 1, (1, 2): 3, (2, 0): 5})
    assert is_uniquely_weighted(g)
    assert not is_uniquely_weighted(MarginGraph.from_margins((0, 1, 2), {(0, 1): 1, (1, 2): 1, (2, 0): 5}))
    assert not is_uniquely_weighted(MarginGraph.from_margins((0, 1, 2), {(0, 1): 0, (1, 2): 3, (2, 0): 5}))


def test_ordinal_margin_graph_ignores_scale():
    p = Profile.from_rankings([(4, "a>b>c"), (5, "b>c>a"), (2, "c>a>b")])
    q = Profile.from_rankings([(8, "a>b>c"), (10, "b>c>a"), (4, "c>a>b")])
    assert ordinal_margin_graph(p) == ordinal_margin_graph(q)
    assert margin_graph(p) != margin_graph(q)


def _graph(ab, bc, ca):
    return MarginGraph.from_margins((0, 1, 2), {(0, 1): ab, (1, 2): bc, (2, 0): ca})


@pytest.mark.parametrize(
    "edges, case, roles",
    [
        ((1, 3, 5), STRICTLY_ASCENDING, (0, 1, 2)),
        ((2, 2, 4), ASCENDING, (0, 1, 2)),
        ((0, 2, 4), STRICTLY_ASCENDING, (0, 1, 2)),
        ((1, 4, 3), DESCENDING, (0, 1, 2)),
        ((3, 3, 3), SYMMETRIC, (0, 1, 2)),
        ((0, 0, 0), SYMMETRIC, (0, 1, 2)),
    ],
)
def test_cycle_cases(edges, case, roles):
    c = classify_three_cycle(_graph(*edges))
    assert c.case == case
    assert (c.a, c.b, c.c) == roles


def test_condorcet_cases():
    assert classify_three_cycle(_graph(2, 2, -2)).case == CONDORCET_WINNER
    loser = classify_three_cycle(MarginGraph.from_margins((0, 1, 2), {(1, 0): 2, (2, 0): 4, (1, 2): 0}))
    assert loser.case == CONDORCET_LOSER and loser.a == 0 and (loser.n, loser.k) == (2, 4)


def test_taxonomy_is_a_partition_on_enumerated_profiles():
    seen = set()
    for kind, nv in (("linear", 5), ("swo", 3)):
        for p in enumerate_profiles(3, nv, kind):
            seen.add(classify_three_cycle(p).case)
    assert {CONDORCET_WINNER, CONDORCET_LOSER, SYMMETRIC, DESCENDING} <= seen
    assert seen & {ASCENDING, STRICTLY_ASCENDING}
