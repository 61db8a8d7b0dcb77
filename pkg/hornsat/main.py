"""Main entry point for hornsat."""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from hornsat import __version__
from hornsat.agents import VerificationWorkflow
from hornsat.generators import ReportGenerator, RunReport
from hornsat.generators.report_generator import EXIT_DISPROVED, EXIT_INPUT_ERROR, EXIT_PROVED
from hornsat.models import list_models
from hornsat.oracle import run_self_check
from hornsat.utils import get_engine_settings, load_config, setup_environment


def _derivations(state) -> dict:
    return {
        v.label: {
            "kind": v.kind.value,
            "statement": v.statement,
            "outcome": v.outcome.value,
            "witnesses": v.witnesses,
            "failures": v.failures,
        }
        for v in state.get("verdicts") or []
    }


def verify(args: argparse.Namespace) -> RunReport:
    """
    Verify every statement of a specification and print the report.

    Args:
        args: Parsed `verify` arguments

    Returns:
        The run report; its exit_code is the process exit status
    """
    try:
        config = load_config(args.config)
        settings = get_engine_settings(
            config, max_clauses=args.max_clauses, max_steps=args.max_steps, jobs=args.jobs
        )
    except ValueError as e:
        report = ReportGenerator.build(
            [], source=args.source or "", version=__version__, error=str(e)
        )
        print(f"✗ {e}", file=sys.stderr)
        return report
    as_json = args.json or (config.get("report") or {}).get("format") == "json"
    out = sys.stderr if as_json else sys.stdout

    if not as_json:
        print(f"Verifying {args.source}")
    state = VerificationWorkflow(settings).run(args.source)
    report = state["report"]

    if state.get("error"):
        if as_json:
            print(ReportGenerator.to_json(report))
        else:
            print(f"✗ Error: {state['error']}")
        return report

    if args.emit_clauses:
        print(f"Initial clauses ({len(state['clauses'])}):", file=out)
        for clause in state["clauses"]:
            print(f"  {clause}", file=out)
    if args.emit_saturated:
        for label, clauses in (state.get("saturated") or {}).items():
            print(f"Saturated clauses [{label}] ({len(clauses)}):", file=out)
            for clause in clauses:
                print(f"  {clause}", file=out)
    if args.emit_derivation:
        Path(args.emit_derivation).write_text(
            json.dumps(_derivations(state), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        print(f"Derivations written to {args.emit_derivation}", file=out)

    print(ReportGenerator.to_json(report) if as_json else ReportGenerator.to_text(report))
    return report


def self_check(args: argparse.Namespace) -> int:
    """Run the soundness harness on the bundled small processes."""
    try:
        settings = get_engine_settings(load_config(args.config))
    except ValueError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print("Running soundness harness on bundled small models...")
    violations = run_self_check(settings)
    for violation in violations:
        print(f"✗ {violation}")
    if violations:
        print(f"✗ {len(violations)} violation(s)")
        return EXIT_DISPROVED
    print("✓ No violations")
    return EXIT_PROVED


def show_models() -> int:
    for model_id, title in list_models().items():
        print(f"{model_id:36} {title}")
    return EXIT_PROVED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hornsat",
        description="hornsat: saturation-based protocol verification with user-defined predicates",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  hornsat verify hornsat/models/hash_list_interface.hsl
  hornsat verify transparent_decryption_interface --json
  hornsat verify protocol.hsl --emit-clauses --max-clauses 50000
  hornsat verify --self-check
  hornsat models

Exit codes: 0 all proved, 1 input error, 2 inconclusive, 3 disproved candidate.
        """,
    )
    parser.add_argument("--version", action="version", version=f"hornsat {__version__}")
    commands = parser.add_subparsers(dest="command")

    run = commands.add_parser("verify", help="Verify the statements of a specification")
    run.add_argument("source", nargs="?", help="Path to a .hsl file or a bundled model id")
    run.add_argument("--json", action="store_true", help="Print the report as JSON")
    run.add_argument("--emit-clauses", action="store_true", help="Print the initial clauses")
    run.add_argument(
        "--emit-saturated", action="store_true", help="Print the saturated clause sets"
    )
    run.add_argument(
        "--emit-derivation",
        metavar="PATH",
        default=None,
        help="Write clause histories and proofs as JSON to PATH",
    )
    run.add_argument("--max-clauses", type=int, default=None, help="Clause cap of the first phase")
    run.add_argument("--max-steps", type=int, default=None, help="Resolution step cap")
    run.add_argument("--jobs", "-j", type=int, default=None, help="Queries verified in parallel")
    run.add_argument(
        "--config",
        "-c",
        default=None,
        help="Path to configuration file (default: searches for hornsat.yaml)",
    )
    run.add_argument(
        "--self-check", action="store_true", help="Run the soundness harness instead"
    )

    commands.add_parser("models", help="List the bundled models")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    setup_environment()
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "models":
        return show_models()
    if args.command != "verify":
        parser.print_help()
        return EXIT_INPUT_ERROR
    if args.self_check:
        return self_check(args)
    if not args.source:
        print("✗ verify needs a specification path or model id", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return verify(args).exit_code


if __name__ == "__main__":
    sys.exit(main())
