import itertools

import pytest

from minimaxlab import axioms as A
from minimaxlab import transforms as tf
from minimaxlab.margins import CONDORCET_LOSER, classify_three_cycle
from minimaxlab.methods import METHODS, get_method
from minimaxlab.paper_fixtures import profile as fixture
from minimaxlab.profile import Ballot, DomainError, Profile, ballot_space
from minimaxlab.search import enumerate_profiles

SMALL = [p for p in enumerate_profiles(3, 3, "swo")] + list(enumerate_profiles(3, 4))
CHECKED = ["minimax", "minimax-mb", "condorcet-plurality", "borda-marginal", "trivial",
           "homogeneity-violator", "block-violator", "minimax-support"]


# -- slow checkers straight from the definitions --------------------------------


def slow_wpr(m, p):
    for a in m(p):
        for v, b in p.ballots:
            if all((x, a) in b.pairs for x in p.alternatives if x != a):
                rest = {pair for pair in b.pairs if a not in pair}
                lifted = Ballot(frozenset(rest | {(a, x) for x in p.alternatives if x != a}))
                q = Profile(p.alternatives, tuple((u, lifted if u == v else c) for u, c in p.ballots), p.labels)
                if m(q) != {a}:
                    return False
    return True


def slow_pi(m, p, kind):
    for a in m(p):
        for b in ballot_space(p.alternatives, kind):
            if all((a, x) in b.pairs for x in p.alternatives if x != a):
                q = Profile(p.alternatives, p.ballots + ((max(p.voters) + 1, b),), p.labels)
                if a not in m(q):
                    return False
    return True


def slow_immunity(m, p, near):
    full = m(p)
    for a, b in itertools.permutations(p.alternatives, 2):
        keep = [x for x in p.alternatives if x != b]
        without = Profile(tuple(keep), tuple((v, Ballot(frozenset(q for q in c.pairs if b not in q)))
                                             for v, c in p.ballots), tuple(p.label(x) for x in keep))
        pair = tuple(sorted((a, b)))
        head = Profile(pair, tuple((v, Ballot(frozenset(q for q in c.pairs if set(q) <= {a, b})))
                                   for v, c in p.ballots), tuple(p.label(x) for x in pair))
        entry = m(without) == {a} if near else a in m(without)
        if entry and m(head) == {a} and b not in full and a not in full:
            return False
    return True


def slow_homogeneity(m, p):
    doubled = Profile(p.alternatives, p.ballots + tuple((v + 1000, b) for v, b in p.ballots), p.labels)
    return m(p) <= m(doubled)


def slow_block(m, p):
    extra = tuple((1000 + i, Ballot(frozenset(itertools.combinations(o, 2))))
                  for i, o in enumerate(itertools.permutations(p.alternatives)))
    return m(p) <= m(Profile(p.alternatives, p.ballots + extra, p.labels))


@pytest.mark.parametrize("method", CHECKED)
def test_checkers_agree_with_slow_definitions(method):
    m = get_method(method)
    for p in SMALL:
        if not m.accepts(p):
            continue
        assert (A.check_wpr(m, p) is None) == slow_wpr(m, p)
        assert (A.check_positive_involvement(m, p, "swo") is None) == slow_pi(m, p, "swo")
        assert (A.check_immunity(m, p) is None) == slow_immunity(m, p, False)
        assert (A.check_immunity(m, p, near=True) is None) == slow_immunity(m, p, True)
        assert (A.check_homogeneity(m, p) is None) == slow_homogeneity(m, p)
        assert (A.check_block_preservation(m, p) is None) == slow_block(m, p)


# -- examples --------------------------------------------------------------------


def test_trivial_violates_wpr():
    p = Profile.from_rankings([(1, "a>b>c"), (1, "c>b>a")])
    w = A.check_wpr("trivial", p)
    assert w is not None and w.winners_after == {0, 1, 2}
    assert A.verify_witness(w)


def test_wpr_vacuous_without_last_ranked_winner():
    p = Profile.from_rankings([(1, "a>b=c")])
    assert A.check_wpr("trivial", p) is None


def test_cp_positive_involvement_witness():
    w = A.check_positive_involvement("condorcet-plurality", fixture("cp-no-show"))
    assert w is not None and w.winners_before == {2} and w.winners_after == {1}
    assert w.transform.params["ballot"] == [[1, 0], [2, 0], [2, 1]]  # c>b>a
    assert A.verify_witness(w)


def test_support_minimax_violation_by_adding_cba_voters():
    p = fixture("support-vs-margin")
    cba = Ballot.from_order((2, 1, 0))
    for added in range(3):
        w = A.check_positive_involvement("minimax-support", p, "linear")
        if w is not None:
            break
        p = tf.add_voter(p, cba)
    # one cba voter keeps c winning; the second one hands the win to b
    assert w is not None and added == 1
    assert w.winners_before == {2} and w.winners_after == {1}
    assert A.verify_witness(w)


def test_homogeneity_and_block_witnesses():
    w = A.check_homogeneity("homogeneity-violator", fixture("homogeneity-split"))
    assert w.winners_before == {0, 2} and w.winners_after == {0}
    w2 = A.check_block_preservation("block-violator", fixture("block-switch"))
    assert w2.winners_before == {0} and w2.winners_after == {1}
    assert A.verify_witness(w) and A.verify_witness(w2)
    assert A.check_homogeneity("minimax", fixture("homogeneity-split")) is None


def test_anonymity_and_neutrality_witnesses():
    p = Profile.from_rankings([(1, "a>b>c"), (1, "c>b>a")])
    w = A.check_anonymity("dictator-pair", p)
    assert w is not None and A.verify_witness(w)
    q = Profile.from_rankings([(1, "a>b"), (1, "b>a")])
    w = A.check_neutrality("fixed-order", q)
    assert w is not None and A.verify_witness(w)
    assert A.check_anonymity("minimax", p) is None and A.check_neutrality("minimax", q) is None


def test_minimax_mb_fails_full_immunity_in_condorcet_loser_case():
    # loser c; a->c 2, b->c 4, a~b: Minimax MB picks only b
    p = Profile.from_rankings([(2, "a>b>c"), (1, "b>a>c"), (1, "b>c>a")])
    case = classify_three_cycle(p)
    assert case.case == CONDORCET_LOSER and case.n < case.k
    assert get_method("minimax")(p) == {0, 1}
    assert get_method("minimax-mb")(p) == {1}
    w = A.check_immunity("minimax-mb", p)
    # a wins without c and beats c, yet loses
    assert w is not None and w.focus == {"alternative": 0, "spoiler": 2}
    assert A.check_immunity("minimax-mb", p, near=True) is None
    assert A.verify_witness(w)


def test_minimax_fails_full_positive_responsiveness_on_tradeoff_profile():
    base, _, _ = A.tradeoff_profiles()
    w = A.check_positive_responsiveness_full("minimax", base)
    assert w is not None and w.winners_after == {1, 2}
    assert A.verify_witness(w)


def test_criteria():
    cw = Profile.from_rankings([(2, "a>b>c"), (1, "b>c>a")])
    assert A.check_criterion("minimax", cw, "condorcet-consistency") is None
    w = A.check_criterion("trivial", cw, "condorcet-consistency")
    assert w is not None and A.verify_witness(w)
    assert A.check_criterion("trivial", cw, "condorcet-loser-criterion") is not None
    assert A.check_criterion("trivial", cw, "smith-criterion") is not None
    with pytest.raises(DomainError):
        A.check_criterion("minimax", cw, "bogus")


def test_minimax_resolves_uniquely_weighted_profiles():
    for p in enumerate_profiles(3, 7):
        assert A.check_criterion("minimax", p, "resolvability-uw") is None


def test_ordinal_invariance_pass_cases():
    p = fixture("block-switch")
    assert A.check_ordinal_margin_invariance("minimax", p, tf.scale(p, 5)) is None
    assert A.check_ordinal_margin_invariance("minimax", p, tf.add_block(p)) is None


def test_immunity_scope():
    with pytest.raises(DomainError):
        A.check_immunity("minimax", Profile.from_rankings([(1, "a>b")]))
    with pytest.raises(DomainError):
        A.check_immunity("minimax", Profile.from_rankings([(1, "a>b>c>d")]))


def test_full_immunity_witness_with_unique_winner_is_near_witness():
    for p in enumerate_profiles(3, 5):
        for mid in ("borda-marginal", "minimax-mb"):
            w = A.check_immunity(mid, p)
            if w is not None and len(w.winners_after) == 1:
                assert A.check_immunity(mid, p, near=True) is not None


def test_tampered_witness_fails_replay():
    w = A.check_wpr("trivial", Profile.from_rankings([(1, "a>b>c")]))
    forged = A.AxiomWitness(w.axiom, w.method, w.base_profile, w.winners_before, frozenset({2}), w.transform,
                            focus=w.focus)
    assert not A.verify_witness(forged)


def test_every_method_escapes_none_of_the_tradeoff():
    for mid, m in METHODS.items():
        base, _, _ = A.tradeoff_profiles()
        if not m.accepts(base):
            continue
        w = A.tradeoff_witness(m)
        assert w is not None and A.verify_witness(w), mid
