"""Command-line entry point.

Subcommands: ``serve`` (run the HTTP service), ``repl`` (terminal
dialogue), ``simulate`` (fold a CSV of ratings and report the resulting
functions), ``demo-paper`` (self-check against the published worked
examples), ``export`` (dump the lexicon document to stdout).
"""
from __future__ import annotations

import argparse
import csv
import socket
import sys
from pathlib import Path

from .decision import decision_coefficient
from .dialogue import Policy, SessionStatus, parse_query, start_session, submit_ratings
from .errors import DomainError, FuzzyLexError, NotFoundError
from .lexicon import Lexicon, TermKind, dumps, load, save
from .trapezoid import Trapezoid

SPARK_BLOCKS = " ▁▂▃▄▅▆▇█"
REPORT_COLUMNS = [
    "surface",
    "kind",
    "candidate",
    "gamma",
    "alpha",
    "beta",
    "delta",
    "left_count",
    "right_count",
    "decision_coefficient",
    "final_coefficient",
    "chosen",
]


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FuzzyLexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--lexicon",
        type=Path,
        default=Path("lexicon.json"),
        help="lexicon file (default: lexicon.json; created on first save)",
    )
    common.add_argument(
        "--always-elicit",
        action="store_true",
        help="ask for ratings even when the word was already learned",
    )
    common.add_argument(
        "--min-final",
        type=float,
        default=None,
        metavar="DEGREE",
        help="keep eliciting while the final decision coefficient is below this",
    )

    parser = argparse.ArgumentParser(prog="fuzzylex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8714)
    p.add_argument("--ui-dir", type=Path, default=None, help="static web UI bundle to serve")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("repl", parents=[common], help="interactive terminal dialogue")
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("simulate", parents=[common], help="fold a rating CSV and report")
    p.add_argument("input_csv", type=Path, help="CSV with columns surface,kind,candidate,theta")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("demo-paper", parents=[common], help="run the published worked examples")
    p.set_defaults(func=cmd_demo_paper)

    p = sub.add_parser("export", parents=[common], help="dump the lexicon document to stdout")
    p.set_defaults(func=cmd_export)
    return parser


def _load_or_empty(path: Path) -> Lexicon:
    return load(path) if path.exists() else Lexicon()


def _policy(args: argparse.Namespace) -> Policy:
    return Policy(always_elicit=args.always_elicit, min_final_coefficient=args.min_final)


# -- serve ---------------------------------------------------------------


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot listen on {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1
    finally:
        probe.close()

    config = ServiceConfig(
        lexicon_path=args.lexicon,
        ui_dir=args.ui_dir,
        host=args.host,
        port=args.port,
        always_elicit=args.always_elicit,
        min_final_coefficient=args.min_final,
    )
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    app.state.engine.persist()
    return 0


# -- repl ----------------------------------------------------------------


def sparkline(t: Trapezoid, width: int = 21) -> str:
    levels = len(SPARK_BLOCKS) - 1
    cells = [t.evaluate(i / (width - 1)) for i in range(width)]
    return "".join(SPARK_BLOCKS[round(mu * levels)] for mu in cells)


def _print_entry_table(lexicon: Lexicon, surface: str, kind: TermKind) -> None:
    entry = lexicon.entry(surface, kind)
    print(f"  {'candidate':<20} {'[g, a, b, d]':<34} {'n':>5}  {'D_c':<20} shape")
    for candidate, t in entry.functions.items():
        tup = f"[{t.gamma:.4g}, {t.alpha:.4g}, {t.beta:.4g}, {t.delta:.4g}]"
        counts = f"{t.left_count}/{t.right_count}"
        dc = decision_coefficient(t)
        print(f"  {candidate:<20} {tup:<34} {counts:>5}  {dc:<20.12g} {sparkline(t)}")


def _read_ratings(candidates: list[str], stdin) -> dict[str, float]:
    """One prompt per candidate; blank skips, malformed input re-prompts."""
    while True:
        ratings: dict[str, float] = {}
        for candidate in candidates:
            while True:
                print(f"  {candidate} [0..1, blank skips]: ", end="", flush=True)
                line = stdin.readline()
                if not line:
                    raise EOFError
                line = line.strip()
                if not line:
                    break
                try:
                    theta = float(line)
                except ValueError:
                    print("    not a number, try again")
                    continue
                if not 0.0 <= theta <= 1.0:
                    print("    must be between 0 and 1, try again")
                    continue
                ratings[candidate] = theta
                break
        if ratings:
            return ratings
        print("at least one rating is required; let's go over them again")


def cmd_repl(args: argparse.Namespace) -> int:
    lexicon = _load_or_empty(args.lexicon)
    policy = _policy(args)
    print('fuzzylex dialogue. Ask "How to <goal> a <object>?" (quit to exit)')
    while True:
        print("query> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            return 0
        line = line.strip()
        if not line:
            continue
        if line.lower() in ("quit", "exit"):
            return 0
        try:
            session = start_session(lexicon, parse_query(line), policy)
        except FuzzyLexError as exc:
            print(f"error: {exc}")
            continue
        if session.status is SessionStatus.RESOLVED:
            print(f"resolved: {session.rewritten}")
            continue
        if session.status is SessionStatus.DECIDED:
            print("recognized from earlier ratings")
            _print_decided(lexicon, session)
            continue
        assert session.unknown_kind is not None
        print(
            f"'{session.unknown_surface}' is an unknown {session.unknown_kind.value}; "
            "rate how well each candidate matches it:"
        )
        try:
            ratings = _read_ratings(session.candidates, sys.stdin)
        except EOFError:
            return 0
        submit_ratings(lexicon, session, ratings)
        _print_decided(lexicon, session)
        save(lexicon, args.lexicon)


def _print_decided(lexicon: Lexicon, session) -> None:
    surface = session.unknown_surface
    kind = session.unknown_kind
    if surface is not None and kind is not None:
        _print_entry_table(lexicon, surface, kind)
    decision = session.decision
    if decision is None:
        return
    if session.status is SessionStatus.NEEDS_RATINGS:
        print(
            f"best candidate {decision.chosen!r} scores {decision.final_coefficient:.12g}, "
            "below the configured minimum; more ratings needed"
        )
        return
    print(f"decision: {decision.chosen} (final coefficient {decision.final_coefficient:.12g})")
    print(f"rewritten: {session.rewritten}")


# -- simulate ------------------------------------------------------------


def _format_number(value: float) -> str:
    return repr(value)


def cmd_simulate(args: argparse.Namespace) -> int:
    lexicon = _load_or_empty(args.lexicon)
    try:
        with open(args.input_csv, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None:
                rows = []
            else:
                missing = {"surface", "kind", "candidate", "theta"} - set(reader.fieldnames)
                if missing:
                    print(
                        f"error: line 1: missing column(s) {', '.join(sorted(missing))}",
                        file=sys.stderr,
                    )
                    return 1
                rows = list(reader)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    for index, row in enumerate(rows, start=2):  # header is line 1
        try:
            kind = TermKind.parse(row["kind"])
            theta = _parse_theta(row["theta"])
            lexicon.record_rating(row["surface"], kind, row["candidate"], theta)
        except FuzzyLexError as exc:
            print(f"error: line {index}: {exc}", file=sys.stderr)
            return 1

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for entry in lexicon.entries():
        result = lexicon.interpret(entry.surface, entry.kind)
        for candidate, t in entry.functions.items():
            writer.writerow(
                [
                    entry.surface,
                    entry.kind.value,
                    candidate,
                    _format_number(t.gamma),
                    _format_number(t.alpha),
                    _format_number(t.beta),
                    _format_number(t.delta),
                    t.left_count,
                    t.right_count,
                    _format_number(decision_coefficient(t)),
                    _format_number(result.final_coefficient),
                    result.chosen,
                ]
            )
    return 0


def _parse_theta(text: str) -> float:
    try:
        theta = float(text)
    except (TypeError, ValueError):
        raise DomainError(f"theta must be a number, got {text!r}") from None
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta must be in [0, 1], got {theta!r}")
    return theta


# -- demo-paper ----------------------------------------------------------


def cmd_demo_paper(args: argparse.Namespace) -> int:
    tolerance = 1e-12
    failures: list[str] = []

    def check(name: str, computed: float, expected: float) -> None:
        diff = abs(computed - expected)
        status = "ok" if diff <= tolerance else "FAIL"
        if status == "FAIL":
            failures.append(name)
        print(f"  {name:<34} expected {expected:<8g} computed {computed:<22.17g} {status}")

    def check_text(name: str, computed: str, expected: str) -> None:
        status = "ok" if computed == expected else "FAIL"
        if status == "FAIL":
            failures.append(name)
        print(f"  {name:<34} expected {expected:<8} computed {computed:<22} {status}")

    print("Worked example 1: learn 'Substantive' against the object 'Word'")
    lexicon = Lexicon()
    lexicon.add_term(TermKind.OBJECT, "Word")
    first = lexicon.record_rating("Substantive", TermKind.OBJECT, "Word", 0.7)
    check("construct(0.7) gamma", first.gamma, 0.4)
    check("construct(0.7) alpha", first.alpha, 0.7)
    check("construct(0.7) beta", first.beta, 0.7)
    check("construct(0.7) delta", first.delta, 1.0)
    second = lexicon.record_rating("Substantive", TermKind.OBJECT, "Word", 0.5)
    check("adjust(0.5) gamma", second.gamma, 0.45)
    check("adjust(0.5) alpha", second.alpha, 0.6)
    check("adjust(0.5) beta (unchanged)", second.beta, 0.7)
    check("adjust(0.5) delta (unchanged)", second.delta, 1.0)
    check_text("adjust(0.5) counters", f"{second.left_count}/{second.right_count}", "2/1")

    print("Worked example 2: decide between three candidate objects")
    # Rating streams chosen to land the nuclei on the published values.
    streams = {
        "CandidateA": [0.6, 0.0],  # nucleus (0.3, 0.6)
        "CandidateB": [0.2, 1.0, 0.9],  # nucleus (0.2, 0.7)
        "CandidateC": [0.5, 0.3],  # nucleus (0.4, 0.5)
    }
    lexicon = Lexicon()
    for name in streams:
        lexicon.add_term(TermKind.OBJECT, name)
    for name, ratings in streams.items():
        for theta in ratings:
            lexicon.record_rating("Substantive", TermKind.OBJECT, name, theta)
    entry = lexicon.entry("Substantive", TermKind.OBJECT)
    nuclei = {name: (t.alpha, t.beta) for name, t in entry.functions.items()}
    for name, (alpha, beta) in zip(streams, [(0.3, 0.6), (0.2, 0.7), (0.4, 0.5)]):
        check(f"{name} nucleus alpha", nuclei[name][0], alpha)
        check(f"{name} nucleus beta", nuclei[name][1], beta)
    scores = {s.candidate: s.coefficient for s in lexicon.interpret("Substantive", TermKind.OBJECT).scores}
    check("D_c(CandidateA)", scores["CandidateA"], 0.525)
    check("D_c(CandidateB)", scores["CandidateB"], 0.575)
    check("D_c(CandidateC)", scores["CandidateC"], 0.475)
    result = lexicon.interpret("Substantive", TermKind.OBJECT)
    check("final decision coefficient", result.final_coefficient, 0.575)
    check_text("chosen candidate", result.chosen, "CandidateB")

    if failures:
        print(f"FAILED: {len(failures)} quantities off by more than {tolerance}:")
        for name in failures:
            print(f"  - {name}")
        return 1
    print("all worked-example quantities reproduced")
    return 0


# -- export --------------------------------------------------------------


def cmd_export(args: argparse.Namespace) -> int:
    if not args.lexicon.exists():
        raise NotFoundError(f"lexicon file {args.lexicon} does not exist")
    print(dumps(load(args.lexicon)), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
