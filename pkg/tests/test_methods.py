import pytest
from hypothesis import given, settings

import oracles
from conftest import rankings, to_profile
from minimaxlab import methods as M
from minimaxlab import transforms as tf
from minimaxlab.margins import MarginGraph
from minimaxlab.profile import DomainError, Profile
from minimaxlab.search import enumerate_profiles


@settings(max_examples=80, deadline=None)
@given(rankings())
def test_minimax_matches_oracle(data):
    alts, ranks = data
    assert M.minimax(to_profile(alts, ranks)) == oracles.minimax(ranks, alts)


@settings(max_examples=40, deadline=None)
@given(rankings(min_alts=3, max_alts=4, ties=False))
def test_kemeny_matches_brute_force(data):
    alts, ranks = data
    assert M.kemeny(to_profile(alts, ranks)) == oracles.kemeny(ranks, alts)


def test_minimax_on_margin_graph():
    g = MarginGraph.from_margins((0, 1, 2), {(0, 1): 10, (1, 2): 6, (2, 0): 8})
    assert M.minimax(g) == {2}
    assert [M.minimax_score(g, a) for a in range(3)] == [8, 10, 6]


def test_minimax_score_can_be_negative_or_zero():
    p = Profile.from_rankings([(3, "a>b>c")])
    assert M.minimax_score(p, 0) == -3
    assert M.minimax_score(Profile.from_rankings([(1, "a")]), 0) == 0


def test_support_minimax_uses_winning_votes():
    p = Profile.from_rankings([(8, "b>c>a"), (6, "a>b=c"), (4, "c>a>b")])
    assert [M.support_loss(p, a) for a in range(3)] == [12, 10, 8]
    assert M.minimax_support(p) == {2}
    assert M.minimax(p) == {1}


def test_minimax_mb_breaks_ascending_ties():
    g = MarginGraph.from_margins((0, 1, 2), {(0, 1): 2, (1, 2): 2, (2, 0): 4})
    assert M.minimax(g) == {1, 2}
    assert M.minimax_mb(g) == {2}


def test_condorcet_plurality():
    p = Profile.from_rankings([(4, "a>b>c"), (4, "b>c>a"), (3, "c>a>b"), (2, "c>b>a")])
    assert M.condorcet_plurality(p) == {2}
    assert M.plurality_score(p, 2) == 5


def test_bucklin_and_coombs_need_linear_ballots():
    p = Profile.from_rankings([(1, "a>b=c")])
    with pytest.raises(DomainError):
        M.get_method("bucklin")(p)
    with pytest.raises(DomainError):
        M.get_method("coombs")(p)


def test_coombs_eliminates_ties_together():
    p = Profile.from_rankings([(1, "a>b>c"), (1, "b>c>a"), (1, "c>a>b")])
    assert M.coombs(p) == {0, 1, 2}


def test_dictator_pair():
    p = Profile.from_rankings([(1, "a>b>c"), (1, "c>b>a")])
    assert M.dictator_pair(p) == {0}
    swapped = tf.permute_voters(p, {0: 1, 1: 0})
    assert M.dictator_pair(swapped) == {2}


def test_fixed_order_and_trivial():
    p = Profile.from_rankings([(1, "b>a")])
    assert M.fixed_order(p) == {0}
    assert M.trivial(p) == {0, 1}


def test_homogeneity_violator_example():
    p = Profile.from_rankings([(6, "a>b=c"), (1, "b>a=c"), (4, "b>c>a"), (3, "c>a>b")])
    assert [M.minimax_score(p, a) for a in range(3)] == [1, 4, 2]
    assert M.homogeneity_violator(p) == {0, 2}
    assert M.homogeneity_violator(tf.scale(p, 2)) == {0}


def test_block_violator_example():
    p = Profile.from_rankings([(4, "x>y>z"), (5, "y>z>x"), (2, "z>x>y")])
    assert M.block_condition_roles(p) == [(0, 1, 2)]
    assert M.block_violator(p) == {0}
    assert M.block_violator(tf.add_block(p)) == {1}


def test_single_alternative_and_registry():
    p = Profile.from_rankings([(2, "a")])
    for m in M.METHODS.values():
        if m.accepts(p):
            assert m(p) == {0}
    with pytest.raises(DomainError):
        M.get_method("nope")


def test_every_method_returns_nonempty_subset():
    for p in enumerate_profiles(3, 3, "swo"):
        for m in M.METHODS.values():
            if m.accepts(p):
                w = m(p)
                assert w and w <= set(p.alternatives)


@pytest.mark.parametrize("method", ["minimax", "minimax-mb", "condorcet-plurality",
                                    "homogeneity-violator", "block-violator"])
def test_two_alternative_methods_agree_with_majority(method):
    m = M.get_method(method)
    for p in enumerate_profiles(2, 4, "swo"):
        assert m(p) == M.majority(p)
