"""
Main entry point for the proofmin package.

Results go to stdout, progress and logs to stderr. Exit codes: 0 success
(optimal), 1 usage or input error, 2 valid result without an optimality
proof, 3 resource failure with the incumbent still reported.
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from .core.bounds import LowerBounder
from .core.cnf import Formula, parse_dimacs
from .core.config import SearchConfig, SearchMode
from .core.exceptions import ProofminError
from .core.generators import FAMILY_PARAMS, InstanceSpec, generate, generate_mus_variant
from .core.lrat import expand_to_resolution, measure, parse_lrat
from .core.proof import read_proof, verify_proof, write_proof
from .core.search import ProgressEvent, SearchStatus, minimize
from .core.subproblem import root_subproblem
from .utils.logger import get_logger, setup_comprehensive_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FEASIBLE = 2
EXIT_RESOURCE = 3

MEMORY_CAP_ENV = "PROOFMIN_MEMORY_CAP_MB"


def _read_formula(path: str) -> Formula:
    return parse_dimacs(Path(path).read_bytes())


def _seed_arg(value: str) -> str:
    if value != "dynamic":
        try:
            int(value)
        except ValueError:
            raise argparse.ArgumentTypeError("seed must be an integer or 'dynamic'")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proofmin",
        description="proofmin - shortest resolution refutations by branch-and-bound",
    )
    parser.add_argument("--verbose", "-v", action="store_true",
                        help="Enable verbose logging")
    parser.add_argument("--quiet", "-q", action="store_true",
                        help="Only log warnings and errors")
    parser.add_argument("--log-dir", type=str,
                        help="Also write text and JSON logs to this directory")
    commands = parser.add_subparsers(dest="command", required=True)

    mini = commands.add_parser("minimize", help="Search for a short refutation")
    mini.add_argument("cnf", help="DIMACS CNF file")
    preset = mini.add_mutually_exclusive_group()
    preset.add_argument("--mode", choices=[m.value for m in SearchMode],
                        default=SearchMode.OPTIMAL.value,
                        help="Search preset (default: optimal)")
    preset.add_argument("--config", "-c", type=str,
                        help="Preset file (YAML or JSON); flags override it")
    mini.add_argument("--time-limit", type=float, help="Wall-clock limit in seconds")
    mini.add_argument("--node-limit", type=int, help="Maximum expanded subproblems")
    mini.add_argument("--seed", type=_seed_arg,
                      help="Static completion seed N, or 'dynamic'")
    mini.add_argument("--emit-proof", type=str, help="Write the proof to this file")
    mini.add_argument("--queue-limit", type=int, help="Maximum open subproblems")
    mini.add_argument("--branch-width", type=int,
                      help="Branch on at most this many clauses per subproblem")
    mini.add_argument("--mus", action="store_true",
                      help="The formula is minimally unsatisfiable")
    mini.add_argument("--initial-lrat", type=str,
                      help="LRAT certificate whose expansion seeds the incumbent")
    mini.add_argument("--report", type=str, help="Write a JSON report to this file")
    mini.add_argument("--memory-cap", type=int,
                      help=f"Peak memory cap in MB (default: ${MEMORY_CAP_ENV})")

    ver = commands.add_parser("verify", help="Check a resolution proof")
    ver.add_argument("cnf", help="DIMACS CNF file")
    ver.add_argument("proof", help="Proof file")

    meas = commands.add_parser("measure", help="Resolution length of an LRAT certificate")
    meas.add_argument("cnf", help="DIMACS CNF file")
    meas.add_argument("lrat", help="ASCII LRAT file")
    meas.add_argument("--json", action="store_true", help="Print JSON instead of text")
    meas.add_argument("--strict", action="store_true",
                      help="Reject hints that name deleted clauses")

    bnd = commands.add_parser("bound", help="Lower bound on the proof length")
    bnd.add_argument("cnf", help="DIMACS CNF file")
    bnd.add_argument("--mus", action="store_true",
                     help="The formula is minimally unsatisfiable")
    bnd.add_argument("--smus-budget", type=float, default=1.0,
                     help="Seconds per SMUS call (default: 1.0)")
    bnd.add_argument("--m-switch", type=int, default=28,
                     help="Largest SMUS input solved exactly (default: 28)")

    gen = commands.add_parser("generate", help="Write a benchmark formula")
    gen.add_argument("family", choices=[f.value for f in FAMILY_PARAMS])
    gen.add_argument("--params", nargs="*", default=[],
                     help="Family parameters, positional or name=value")
    gen.add_argument("--seed", type=int, help="Seed for randomized families")
    gen.add_argument("--output", "-o", type=str, help="Output file (default: stdout)")
    gen.add_argument("--mus-variant", action="store_true",
                     help="Emit a minimally unsatisfiable subset instead")
    return parser


def _search_config(args: argparse.Namespace) -> SearchConfig:
    if args.config:
        config = SearchConfig.from_file(args.config)
    else:
        config = SearchConfig.for_mode(args.mode)

    overrides = {
        "time_limit": args.time_limit,
        "node_limit": args.node_limit,
        "queue_limit": args.queue_limit,
        "branch_width": args.branch_width,
        "is_mus": True if args.mus else None,
    }
    if args.seed == "dynamic":
        overrides.update(dynamic_seeding=True, seed=time.time_ns() % 2 ** 31)
    elif args.seed is not None:
        overrides.update(dynamic_seeding=False, seed=int(args.seed))

    cap = args.memory_cap
    if cap is None and os.environ.get(MEMORY_CAP_ENV):
        cap = int(os.environ[MEMORY_CAP_ENV])
    overrides["memory_cap_mb"] = cap
    return config.with_overrides(**overrides)


def _progress(event: ProgressEvent) -> None:
    print(event.to_text(), file=sys.stderr, flush=True)


def cmd_minimize(args: argparse.Namespace) -> int:
    formula = _read_formula(args.cnf)
    config = _search_config(args)

    initial = None
    if args.initial_lrat:
        lines = parse_lrat(Path(args.initial_lrat).read_bytes())
        initial, _, _ = expand_to_resolution(formula, lines)

    outcome = minimize(formula, config, progress=_progress, initial_proof=initial)
    print(outcome.to_text())
    if outcome.mus_gap is not None:
        print(f"mus_gap={outcome.mus_gap}")

    if args.emit_proof:
        Path(args.emit_proof).write_text(write_proof(outcome.incumbent))
    if args.report:
        report = outcome.to_dict()
        report.update(cnf=args.cnf, config=config.model_dump(mode="json"))
        Path(args.report).write_text(json.dumps(report, indent=2))

    if outcome.status is SearchStatus.OPTIMAL:
        return EXIT_OK
    if outcome.status is SearchStatus.FEASIBLE:
        return EXIT_FEASIBLE
    return EXIT_RESOURCE


def cmd_verify(args: argparse.Namespace) -> int:
    formula = _read_formula(args.cnf)
    proof = read_proof(Path(args.proof).read_bytes())
    verdict = verify_proof(formula, proof)
    print(verdict.to_text(len(proof)))
    return EXIT_OK if verdict else EXIT_ERROR


def cmd_measure(args: argparse.Namespace) -> int:
    formula = _read_formula(args.cnf)
    report = measure(formula, Path(args.lrat).read_bytes(), strict=args.strict)
    print(json.dumps(report.to_dict()) if args.json else report.to_text())
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    formula = _read_formula(args.cnf)
    bounder = LowerBounder(formula, is_mus=args.mus, m_switch=args.m_switch,
                           time_budget=args.smus_budget)
    result = bounder.bound(root_subproblem(formula))
    print(result.to_text())
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    spec = InstanceSpec.from_args(args.family, args.params, args.seed)
    formula = generate(spec)
    if args.mus_variant:
        formula = generate_mus_variant(formula)
    text = formula.to_dimacs()
    if args.output:
        Path(args.output).write_text(text)
        logger.info(f"Wrote {len(formula)} clauses to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "minimize": cmd_minimize,
    "verify": cmd_verify,
    "measure": cmd_measure,
    "bound": cmd_bound,
    "generate": cmd_generate,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR

    setup_comprehensive_logging(
        verbose=args.verbose,
        quiet=args.quiet,
        log_to_file=args.log_dir is not None,
        log_directory=args.log_dir,
    )

    try:
        return COMMANDS[args.command](args)
    except MemoryError:
        print("Error: out of memory", file=sys.stderr)
        return EXIT_RESOURCE
    except (ProofminError, OSError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except KeyboardInterrupt:
        print("\nInterrupted", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    """Main entry point for the CLI."""
    load_dotenv()
    sys.exit(run())


if __name__ == "__main__":
    main()
