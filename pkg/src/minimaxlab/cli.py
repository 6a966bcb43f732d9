"""Command-line interface.

Exit codes: 0 pass / nothing found, 1 witness found (or a failed replay or
fixture), 2 bad input or flags, 3 method not defined on the profile.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, axioms, paper_fixtures, search
from .formats import FormatError, load_profile, parse_witness_file, witness_file
from .methods import METHODS, get_method
from .profile import DomainError

EXIT_OK, EXIT_FOUND, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3
AXIOM_CHOICES = sorted(set(axioms.AXIOMS) | set(axioms.CRITERIA))


def _winner_line(profile, winners) -> str:
    return "winners: " + " ".join(profile.names(winners))


def _write(path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def cmd_winners(args) -> int:
    profile = load_profile(args.profile)
    method = get_method(args.method)
    winners = method(profile)
    print(_winner_line(profile, winners))
    if method.scores is not None:
        scores = {profile.label(a): method.scores(profile, a) for a in profile.alternatives}
        print(f"{method.score_name}: " + " ".join(f"{k}:{scores[k]}" for k in sorted(scores)))
    return EXIT_OK


def _replay(path) -> int:
    witnesses, _ = parse_witness_file(Path(path).read_text())
    bad = 0
    for i, w in enumerate(witnesses):
        ok = axioms.verify_witness(w)
        bad += not ok
        print(f"{'OK  ' if ok else 'FAIL'} witness {i}: {w.method} violates {w.axiom}: {w.note}")
    print(f"replayed {len(witnesses)} witness(es), {bad} failed")
    return EXIT_FOUND if bad else EXIT_OK


def cmd_replay(args) -> int:
    return _replay(args.witness)


def cmd_check(args) -> int:
    if args.replay:
        return _replay(args.replay)
    if not (args.profile and args.method and args.axiom):
        raise FormatError("check needs a profile, --method and --axiom (or --replay FILE)")
    profile = load_profile(args.profile)
    method = get_method(args.method)
    if not method.accepts(profile):
        raise DomainError(f"{method.id} is not defined on this profile")
    w = axioms.check(method, profile, args.axiom, ballot_kind=args.ballots)
    if w is None:
        print(f"pass: {method.id} satisfies {args.axiom} on {args.profile}")
        return EXIT_OK
    print(f"witness: {method.id} violates {args.axiom}: {w.note}")
    if args.out:
        _write(args.out, witness_file([w], spec={"profile": str(args.profile), "axiom": args.axiom}))
        print(f"witness written to {args.out}")
    return EXIT_FOUND


def _report_out(args, report: search.SearchReport) -> None:
    if not args.out:
        return
    data = witness_file(report.witness_list(), spec=report.spec.to_dict(), seed=report.spec.seed)
    data["report"] = {k: v for k, v in report.to_dict().items() if k not in ("witnesses", "spec")}
    _write(args.out, data)
    print(f"report written to {args.out}")


def _summary(report: search.SearchReport, label: str) -> str:
    state = "exhausted" if report.exhausted else "not exhausted"
    return (f"{label}: {report.profiles_examined} profiles, {len(report.witnesses)} witness(es), "
            f"{report.skipped} skipped, {state}")


def cmd_search(args) -> int:
    spec = search.SearchSpec(
        method=args.method, target=args.axiom, alternatives=args.alternatives, max_voters=args.max_voters,
        ballot_kind=args.ballots, mode=args.mode, seed=args.seed, budget=args.budget,
        max_witnesses=args.max_witnesses,
    )
    report = search.run(spec, args.workers)
    print(_summary(report, f"search {spec.method} {spec.target}"))
    for i, w in report.witnesses[:5]:
        print(f"  #{i}: {w.base_profile.describe()} -- {w.note}")
    _report_out(args, report)
    return EXIT_FOUND if report.witnesses else EXIT_OK


def cmd_verify_refinement(args) -> int:
    report = search.verify_refines_minimax(args.method, args.alternatives, args.max_voters, args.ballots,
                                           workers=args.workers)
    print(_summary(report, f"refines-minimax {args.method}"))
    for i, w in report.witnesses[:5]:
        print(f"  #{i}: {w.base_profile.describe()} -- {w.note}")
    _report_out(args, report)
    return EXIT_FOUND if report.witnesses else EXIT_OK


def cmd_paper_examples(args) -> int:
    ok, lines = paper_fixtures.run()
    print("\n".join(lines))
    print(f"{sum(line.startswith('PASS') for line in lines)}/{len(lines)} fixtures match")
    return EXIT_OK if ok else EXIT_FOUND


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minimaxlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"minimaxlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    methods = sorted(METHODS)

    def search_flags(p, axiom: bool):
        p.add_argument("--method", required=True, choices=methods)
        if axiom:
            p.add_argument("--axiom", required=True, choices=AXIOM_CHOICES)
        p.add_argument("--alternatives", type=_positive, default=3)
        p.add_argument("--max-voters", type=_positive, default=5)
        p.add_argument("--ballots", choices=["linear", "swo"], default="linear")
        p.add_argument("--workers", type=_positive, default=1)
        p.add_argument("--out")

    p = sub.add_parser("winners", help="winner set and scores for a profile file")
    p.add_argument("profile")
    p.add_argument("--method", required=True, choices=methods)
    p.set_defaults(func=cmd_winners)

    p = sub.add_parser("check", help="check one axiom on one profile, or replay a witness file")
    p.add_argument("profile", nargs="?")
    p.add_argument("--method", choices=methods)
    p.add_argument("--axiom", choices=AXIOM_CHOICES)
    p.add_argument("--ballots", choices=["linear", "swo"], default="linear",
                   help="kind of ballot added by the positive-involvement check")
    p.add_argument("--replay", metavar="WITNESS_FILE")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="look for axiom violations over many profiles")
    search_flags(p, axiom=True)
    p.add_argument("--mode", choices=search.MODES, default="exhaustive")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=_positive)
    p.add_argument("--max-witnesses", type=_positive)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-refinement", help="profiles where a method picks outside the Minimax winners")
    search_flags(p, axiom=False)
    p.set_defaults(func=cmd_verify_refinement)

    p = sub.add_parser("paper-examples", help="recompute the worked examples")
    p.set_defaults(func=cmd_paper_examples)

    p = sub.add_parser("replay", help="re-derive every witness in a witness file")
    p.add_argument("witness")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        # unknown axiom ids and bad search bounds are flag errors, the rest domain mismatches
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
