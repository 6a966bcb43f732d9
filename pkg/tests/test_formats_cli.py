import json
from dataclasses import replace

import pytest
from hypothesis import given, settings

from conftest import rankings, to_profile
from minimaxlab import axioms as A
from minimaxlab import paper_fixtures
from minimaxlab.cli import main
from minimaxlab.formats import (
    FormatError,
    parse_external,
    parse_profile,
    parse_witness_file,
    serialize_profile,
    witness_file,
)
from minimaxlab.profile import Ballot, Profile, canonical_form
from minimaxlab.search import random_profile


@settings(max_examples=60, deadline=None)
@given(rankings())
def test_profile_round_trip(data):
    p = to_profile(*data)
    assert canonical_form(parse_profile(serialize_profile(p))) == canonical_form(p)
    assert parse_profile(serialize_profile(p, keep_voters=True)) == p


def test_relation_ballots_round_trip():
    cyclic = Ballot(frozenset({(0, 1), (1, 2), (2, 0)}))
    p = Profile.from_ballots((0, 1, 2), [cyclic, Ballot.from_order((0, 1, 2))])
    text = serialize_profile(p)
    assert '"relation"' in text
    assert canonical_form(parse_profile(text)) == canonical_form(p)


def test_random_round_trip():
    for seed in range(50):
        p = random_profile(seed, 4, 6, "swo")
        assert canonical_form(parse_profile(serialize_profile(p))) == canonical_form(p)


def test_import_line_format():
    p = parse_external("8: b>c>a\n6: a>b=c\n4: c>a>b")
    assert p == Profile.from_rankings([(8, "b>c>a"), (6, "a>b=c"), (4, "c>a>b")])
    tie = parse_external("1: a=b")
    assert tie.num_voters == 1 and tie.ballots[0][1].pairs == frozenset()
    header = parse_external("alternatives: a, b, c, d\n2: b>a\n")
    assert header.labels == ("a", "b", "c", "d")
    assert header.ballot_of(0).ranks_above(0, 3)


@pytest.mark.parametrize("text", ["x: a>b", "1 a>b", "2: a>>b", "1: a>q\nalternatives: a, b", "0: a>b", ""])
def test_import_errors(text):
    with pytest.raises(FormatError):
        parse_external("alternatives: a, b\n" + text if text.startswith("1: a>q") else text)


def test_profile_file_errors():
    with pytest.raises(FormatError):
        parse_profile("{not json")
    with pytest.raises(FormatError):
        parse_profile(json.dumps({"format": "other", "version": 1}))
    good = json.loads(serialize_profile(Profile.from_rankings([(2, "a>b")])))
    good["ballots"][0]["count"] = 0
    with pytest.raises(FormatError):
        parse_profile(json.dumps(good))


def test_witness_file_round_trip():
    w = A.check_positive_involvement("condorcet-plurality", paper_fixtures.profile("cp-no-show"))
    witnesses, meta = parse_witness_file(json.dumps(witness_file([w], spec={"x": 1}, seed=3)))
    assert witnesses == [w]
    assert meta["engine"]["name"] == "minimaxlab" and meta["seed"] == 3
    assert A.verify_witness(witnesses[0])


# -- CLI -------------------------------------------------------------------------


def test_cli_winners(fixtures_dir, capsys):
    assert main(["winners", str(fixtures_dir / "support_vs_margin.txt"), "--method", "minimax"]) == 0
    out = capsys.readouterr().out
    assert "winners: b" in out and "a:6 b:2 c:4" in out
    assert main(["winners", str(fixtures_dir / "support_vs_margin.txt"), "--method", "minimax-support"]) == 0
    assert "winners: c" in capsys.readouterr().out
    assert main(["winners", str(fixtures_dir / "cp_no_show.txt"), "--method", "condorcet-plurality"]) == 0
    assert "winners: c" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path, fixtures_dir):
    bad = tmp_path / "bad.txt"
    bad.write_text("1: a>>b\n")
    assert main(["winners", str(bad), "--method", "minimax"]) == 2
    assert main(["winners", str(tmp_path / "missing.txt"), "--method", "minimax"]) == 2
    assert main(["winners", str(fixtures_dir / "cp_no_show.txt"), "--method", "majority"]) == 3
    with pytest.raises(SystemExit) as exc:
        main(["winners", str(fixtures_dir / "cp_no_show.txt"), "--method", "nope"])
    assert exc.value.code == 2


def test_cli_check_writes_replayable_witness(tmp_path, fixtures_dir, capsys):
    out = tmp_path / "w.json"
    code = main(["check", str(fixtures_dir / "cp_no_show.txt"), "--method", "condorcet-plurality",
                 "--axiom", "positive-involvement", "--out", str(out)])
    assert code == 1 and out.exists()
    assert main(["replay", str(out)]) == 0
    assert main(["check", "--replay", str(out)]) == 0
    assert main(["check", str(fixtures_dir / "cp_no_show.txt"), "--method", "minimax",
                 "--axiom", "positive-involvement"]) == 0


def test_cli_replay_detects_tampering(tmp_path, fixtures_dir):
    out = tmp_path / "w.json"
    main(["check", str(fixtures_dir / "cp_no_show.txt"), "--method", "condorcet-plurality",
          "--axiom", "positive-involvement", "--out", str(out)])
    data = json.loads(out.read_text())
    data["witnesses"][0]["winners_after"] = [2]
    out.write_text(json.dumps(data))
    assert main(["replay", str(out)]) == 1


def test_cli_search_and_refinement(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["search", "--method", "trivial", "--axiom", "weak-positive-responsiveness",
                 "--max-voters", "2", "--out", str(out)]) == 1
    assert main(["replay", str(out)]) == 0
    capsys.readouterr()
    assert main(["verify-refinement", "--method", "minimax-mb", "--alternatives", "3", "--max-voters", "7"]) == 0
    assert "1715 profiles, 0 witness(es), 0 skipped, exhausted" in capsys.readouterr().out
    assert main(["search", "--method", "minimax", "--axiom", "homogeneity", "--mode", "random",
                 "--budget", "10"]) == 3  # random mode without a seed


def test_cli_search_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["search", "--method", "minimax-mb", "--axiom", "near-immunity-to-spoilers", "--alternatives", "4",
            "--max-voters", "6", "--mode", "random", "--seed", "9", "--budget", "3000"]
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b), "--workers", "2"])
    assert a.read_bytes() == b.read_bytes()


def test_paper_examples(capsys):
    assert main(["paper-examples"]) == 0
    first = capsys.readouterr().out
    assert main(["paper-examples"]) == 0
    assert capsys.readouterr().out == first
    assert "FAIL" not in first


def test_paper_examples_negative_control():
    fixtures = paper_fixtures.fixtures()
    fixtures[3] = replace(fixtures[3], expected=["a"])
    ok, lines = paper_fixtures.run(fixtures)
    assert not ok and lines[3].startswith("FAIL")


def test_fixture_files_match_builtin_profiles(fixtures_dir):
    names = {"support-vs-margin": "support_vs_margin", "cp-no-show": "cp_no_show",
             "homogeneity-split": "homogeneity_split", "block-switch": "block_switch",
             "bucklin-block": "bucklin_block", "coombs-block": "coombs_block",
             "pr-spoiler-tradeoff": "pr_spoiler_tradeoff"}
    for key, stem in names.items():
        from minimaxlab.formats import load_profile

        assert load_profile(fixtures_dir / f"{stem}.txt") == paper_fixtures.profile(key)
