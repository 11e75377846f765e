"""
Black-box checker - temporal properties of systems with unspecified components

Main entry point. Subcommands check CTL formulas, liveness and tableau-given
path formulas against a host system whose component is only reachable
through experiments, export the prepared graphs, and run the differential
comparison against the explicit-state oracle.
"""

import argparse
import logging
import sys
from typing import List, Optional

from config import get_config, validate_setup
from src.agent.verification_agent import VerificationAgent
from src.liveness.bounds import BoundMode
from src.model.errors import AdapterFailure, CheckerError, DeterminismViolation, ExperimentLengthExceeded
from src.oracle.random_instances import InstanceLimits

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INPUT = 2
EXIT_ADAPTER = 3

_BOUND_MODES = {"auto": BoundMode.AUTO, "exact": BoundMode.EXACT, "over": BoundMode.OVERAPPROX}


def _seed_range(text: str) -> range:
    start, sep, stop = text.partition("..")
    try:
        if not sep:
            return range(int(start), int(start) + 1)
        return range(int(start), int(stop) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--system", required=True, help="host system file")
    parser.add_argument("--component", required=True, help="reference component file or exec:<command>")
    parser.add_argument("--bound-mode", choices=sorted(_BOUND_MODES), help="communication bound computation")
    parser.add_argument("--dot", metavar="DIR", help="write the communication/witness graphs here")
    parser.add_argument("--trace", metavar="FILE", help="line-delimited JSON record of the search")
    parser.add_argument("--log", metavar="FILE", help="line-delimited JSON experiment log")
    parser.add_argument("--no-cache", action="store_true", help="reset and replay for every experiment")
    parser.add_argument("--timeout-ms", type=int, help="reply timeout for exec: components")
    parser.add_argument("--state-bound", type=int, help="upper bound on the component's states")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bbcheck", description=__doc__.strip().splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    ctl = commands.add_parser("check-ctl", help="check a CTL formula at a state")
    _add_common(ctl)
    ctl.add_argument("--formula", required=True, help="formula text or @file")
    ctl.add_argument("--state", help="state to check (default: first initial state)")

    liveness = commands.add_parser("check-liveness", help="is a state reachable infinitely often")
    _add_common(liveness)
    liveness.add_argument("--from", dest="source", required=True)
    liveness.add_argument("--target", required=True)

    ltl = commands.add_parser("check-ltl", help="check the path formula a tableau accepts")
    _add_common(ltl)
    ltl.add_argument("--tableau", required=True)
    ltl.add_argument("--state", help="state to check (default: every initial state)")

    export = commands.add_parser("export-dot", help="write the graphs of a query without testing")
    export.add_argument("--system", required=True)
    export.add_argument("--out", required=True, metavar="DIR")
    export.add_argument("--formula")
    export.add_argument("--state")
    export.add_argument("--from", dest="source")
    export.add_argument("--target")
    export.add_argument("--bound-mode", choices=sorted(_BOUND_MODES))

    compare = commands.add_parser("oracle-compare", help="differential run against the oracle")
    compare.add_argument("--seeds", type=_seed_range, default=range(1, 101), metavar="A..B")
    compare.add_argument("--limits", default="", help="key=value,... e.g. host_states=5,state_bound=2")
    compare.add_argument("--no-cache", action="store_true")
    return parser


def _agent(args) -> VerificationAgent:
    return VerificationAgent(
        bound_mode=_BOUND_MODES.get(getattr(args, "bound_mode", None) or ""),
        use_cache=False if getattr(args, "no_cache", False) else None,
        timeout_ms=getattr(args, "timeout_ms", None),
        state_bound=getattr(args, "state_bound", None),
        trace_path=getattr(args, "trace", None),
        log_path=getattr(args, "log", None),
        dot_directory=getattr(args, "dot", None),
    )


def _run(args) -> int:
    agent = _agent(args)
    if args.command == "check-ctl":
        report = agent.check_ctl(args.system, args.component, args.formula, args.state)
    elif args.command == "check-liveness":
        report = agent.check_liveness(args.system, args.component, args.source, args.target)
    elif args.command == "check-ltl":
        report = agent.check_ltl(args.system, args.component, args.tableau, args.state)
    elif args.command == "export-dot":
        if args.formula is None and (args.source is None or args.target is None):
            raise CheckerError("export-dot needs --formula or both --from and --target")
        written = agent.export_dot(args.system, args.out, args.formula, args.source, args.target, args.state)
        print(f"graphs_written: {len(written)}")
        if not written:
            print("note: query decided without testing, no graph to export")
        for path in written:
            print(f"graph: {path}")
        return EXIT_OK
    else:
        report = agent.oracle_compare(args.seeds, InstanceLimits.parse(args.limits))
        for case in report.cases:
            status = case.classification or "agree"
            print(f"seed {case.seed} {case.kind} {status} expected={case.expected} actual={case.actual} {case.query}")
        for key, value in report.summary().items():
            print(f"{key}: {value}")
        return EXIT_OK if report.passed else EXIT_DISAGREEMENT

    for line in report.lines():
        print(line)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main function to run the checker."""
    app_config = get_config()
    logging.basicConfig(
        level=getattr(logging, app_config.log_level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    if not validate_setup():
        return EXIT_INPUT

    try:
        return _run(args)
    except (AdapterFailure, DeterminismViolation, ExperimentLengthExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ADAPTER
    except CheckerError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ADAPTER


if __name__ == "__main__":
    sys.exit(main())
