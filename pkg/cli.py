"""
Command-line interface for the K-g-frame toolkit.

    kgframes check <scenario>
    kgframes construct --theorem <id> <scenario>
    kgframes fuzz --theorem <id> --trials N --seed S [--dims d,n,N,m] [--tol x]
    kgframes report --format text|structured <report>
    kgframes generate --theorem <id> --seed S [--dims d,n,N,m] --output <scenario>

Theorem ids: 1.9 2.1 2.2 2.3 2.4 2.5 2.6 3.1i 3.1ii 3.2 3.3 frame-check, or their
descriptive aliases (precompose, k-sum, dual-sum, ...).

Exit codes: 0 success, 1 hard failure, 2 usage or parse error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from config import config
from errors import DimensionMismatch, KGFrameError, ParseError, UnsupportedKind
from graph import run_theorem_suite
from harness.generator import Dims, TrialConfig, generate_instance
from harness.report import load_report, render, render_outcome, save_report, summarize_outcome
from harness.runner import frame_check_verdict, run_construction
from harness.scenario import KIND_ALIASES, KINDS, canonical_kind, load_scenario, save_scenario

logger = logging.getLogger("kgframes")

THEOREMS = KINDS + tuple(KIND_ALIASES)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def parse_dims(text: str):
    """Parse 'd,n,N,m' into Dims."""
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("dims must be four comma-separated integers d,n,N,m")
    try:
        d, n, atoms, fiber = (int(p) for p in parts)
        return Dims(alg_dim=d, length=n, atoms=atoms, fiber=fiber)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid dims {text!r}: {e}")


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgframes", description="Certified K-g-frame constructions over M_d")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log INFO (-v) or DEBUG (-vv) to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = dict(choices=("text", "structured"), default="text", help="output format")

    check = sub.add_parser("check", help="full K-g-frame check of a scenario's family")
    check.add_argument("scenario")
    check.add_argument("--tol", type=positive_float)
    check.add_argument("--format", **fmt)

    construct = sub.add_parser("construct", help="run one construction on a scenario")
    construct.add_argument("--theorem", required=True, choices=THEOREMS, metavar="ID")
    construct.add_argument("scenario")
    construct.add_argument("--tol", type=positive_float)
    construct.add_argument("--strict", action="store_true", help="fail on the first unmet hypothesis")
    construct.add_argument("--format", **fmt)

    fuzz = sub.add_parser("fuzz", help="run a seeded fuzz campaign")
    fuzz.add_argument("--theorem", required=True, choices=THEOREMS, metavar="ID")
    fuzz.add_argument("--trials", type=int, default=100)
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--dims", type=parse_dims, help="fixed dims d,n,N,m instead of sampled ones")
    fuzz.add_argument("--tol", type=positive_float)
    fuzz.add_argument("--format", **fmt)
    fuzz.add_argument("--save", help="also write the structured report to this path")
    fuzz.add_argument("--timing", action="store_true", help="include wall-clock time")

    report = sub.add_parser("report", help="re-render a saved structured report")
    report.add_argument("path")
    report.add_argument("--format", **fmt)
    report.add_argument("--timing", action="store_true")

    generate = sub.add_parser("generate", help="write a generated scenario file")
    generate.add_argument("--theorem", required=True, choices=THEOREMS, metavar="ID")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--trial", type=int, default=0)
    generate.add_argument("--dims", type=parse_dims, default="1,2,2,1")
    generate.add_argument("--output", required=True)
    return parser


def _check(args: argparse.Namespace) -> int:
    verdict = frame_check_verdict(load_scenario(args.scenario), args.tol)
    sys.stdout.write(render_outcome(summarize_outcome(verdict), args.format))
    is_frame = bool(verdict.values.get("is_kg_frame"))
    return EXIT_OK if verdict.consistent and is_frame else EXIT_FAILURE


def _construct(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    theorem = canonical_kind(args.theorem)
    if scenario.kind != theorem:
        logger.info(f"running {theorem} on a scenario generated for {scenario.kind}")
        scenario = scenario.model_copy(update={"kind": theorem})
    try:
        outcome = run_construction(scenario, args.tol, strict=args.strict)
    except KGFrameError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_FAILURE
    summary = summarize_outcome(outcome)
    sys.stdout.write(render_outcome(summary, args.format))
    return EXIT_OK if summary.consistent else EXIT_FAILURE


def _fuzz(args: argparse.Namespace) -> int:
    options = {"master_seed": args.seed, "trials": args.trials, "tol": args.tol}
    trial_config = TrialConfig.fixed(args.dims, **options) if args.dims else TrialConfig(**options)
    report = run_theorem_suite(args.theorem, trial_config)
    if args.save:
        save_report(report, args.save)
    sys.stdout.write(render(report, args.format, args.timing))
    return EXIT_FAILURE if report.hard_failure else EXIT_OK


def _report(args: argparse.Namespace) -> int:
    report = load_report(args.path)
    sys.stdout.write(render(report, args.format, args.timing))
    return EXIT_FAILURE if report.hard_failure else EXIT_OK


def _generate(args: argparse.Namespace) -> int:
    scenario = generate_instance(args.seed, args.dims, args.theorem, args.trial)
    if scenario is None:
        sys.stderr.write("error: rejection sampling exhausted; try another seed or trial\n")
        return EXIT_FAILURE
    save_scenario(scenario, args.output)
    logger.info(f"wrote {args.output}")
    return EXIT_OK


COMMANDS = {
    "check": _check,
    "construct": _construct,
    "fuzz": _fuzz,
    "report": _report,
    "generate": _generate,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the kgframes command.

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    level = config.LOG_LEVEL if args.verbose == 0 else ("INFO" if args.verbose == 1 else "DEBUG")
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr)

    try:
        config.validate()
        return COMMANDS[args.command](args)
    except (ParseError, DimensionMismatch, UnsupportedKind, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except KGFrameError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
