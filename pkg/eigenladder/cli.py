"""
Command-line interface for eigenladder.
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .core import EigenLadder
from .fdlie import failing_rows, identity_table
from .oracle import oracle_rows
from .utils.config import DEFAULT_CONFIG, METHODS, RunConfig, dump_config, flag_overrides, load_config, merge_configs
from .utils.error_handling import EigenladderError, VerificationFailure, exit_code_for, handle_error
from .utils.logging_setup import configure_logging
from .utils.output import header_block, write_table, write_text
from .verify import SUITE_NAMES, render_report, run_suites

logger = logging.getLogger(__name__)

# subcommand -> config section its --tol flag sets
TOLERANCE_SECTION = {
    "spectrum": "oracle",
    "oracle": "oracle",
    "lambda": "quadrature",
    "thermal": "thermal",
}


def _common_options() -> argparse.ArgumentParser:
    # defaults are suppressed so a flag given before the subcommand is not reset by the subparser
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=str, help="YAML configuration file")
    common.add_argument("--out", type=str, help="Write output here instead of stdout")
    common.add_argument("--kappa", type=str, help="Coupling, decimal or p/q")
    common.add_argument("--n-max", type=int, help="Highest level index")
    common.add_argument("--beta", type=str, nargs="+", help="Inverse temperatures")
    common.add_argument("--method", choices=METHODS, help="Spectrum method")
    common.add_argument("--tol", type=float, help="Tolerance of the subcommand's main computation")
    common.add_argument("--allow-negative-oracle", action="store_true",
                        help="Diagonalize kappa < 0 anyway")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    common.add_argument("--quiet", "-q", action="store_true", help="Warnings only")
    common.add_argument("--dump-config", action="store_true", help="Print the merged configuration and exit")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="eigenladder",
        description="Eigenoperator spectra of nonlinear oscillators",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
        epilog="""
Examples:
  # Perturbative, semiclassical and oracle levels side by side
  eigenladder spectrum --kappa 1/100 --n-max 5

  # Level spacing on an energy grid
  eigenladder lambda --kappa 0.01 --energies 1 10 100

  # Partition function and identity residuals
  eigenladder thermal --beta 0.5 1 2

  # Run every verification suite
  eigenladder verify all
        """,
    )
    parser.add_argument("--version", action="version", version=f"eigenladder {__version__}")

    sub = parser.add_subparsers(dest="command")
    sub.add_parser("spectrum", parents=[common], help="Level table: pert, semiclassical, oracle")
    lam = sub.add_parser("lambda", parents=[common], help="Level spacing on an energy grid")
    lam.add_argument("--energies", type=float, nargs="+", help="Energies (default: lambda_grid from config)")
    sub.add_parser("thermal", parents=[common], help="Partition function and thermal identities")
    sub.add_parser("oracle", parents=[common], help="Fock-matrix eigenvalues")
    fd = sub.add_parser("fdlie", parents=[common], help="Finite-difference Lie operator identity table")
    fd.add_argument("--seed", type=int, default=0, help="Sample seed")
    fd.add_argument("--samples", type=int, default=4, help="Sample points per check")
    verify = sub.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("suite", nargs="?", default="all", choices=SUITE_NAMES + ("all",))
    return parser


def _opt(args: argparse.Namespace, name: str):
    return getattr(args, name, None)


def _overrides(args: argparse.Namespace) -> dict:
    tolerance_section = TOLERANCE_SECTION.get(args.command)
    return flag_overrides([
        ("oscillator", "kappa", _opt(args, "kappa")),
        ("ladder", "n_max", _opt(args, "n_max")),
        ("thermal", "betas", _opt(args, "beta")),
        ("method", "name", _opt(args, "method")),
        ("oracle", "allow_negative", _opt(args, "allow_negative_oracle")),
        ("output", "path", _opt(args, "out")),
        (tolerance_section, "tolerance", _opt(args, "tol") if tolerance_section else None),
    ])


def _merged_config(args: argparse.Namespace) -> dict:
    path = _opt(args, "config")
    base = load_config(path) if path else {}
    return merge_configs(merge_configs(DEFAULT_CONFIG, base), _overrides(args))


def _header(run: RunConfig, command: str, warnings: Optional[List[str]] = None) -> List[str]:
    return header_block(__version__, run.hash, command, warnings)


def cmd_spectrum(pipeline: EigenLadder):
    rows, columns = pipeline.spectrum_rows()
    header = _header(pipeline.config, "spectrum", pipeline.regime_warnings())
    write_table(rows, columns, pipeline.config.out_path, header)


def cmd_lambda(pipeline: EigenLadder, energies: Optional[List[float]] = None):
    rows, columns = pipeline.lambda_rows(energies)
    header = _header(pipeline.config, "lambda", pipeline.regime_warnings())
    write_table(rows, columns, pipeline.config.out_path, header)


def cmd_thermal(pipeline: EigenLadder):
    rows, columns = pipeline.thermal_rows()
    header = _header(pipeline.config, "thermal", pipeline.regime_warnings())
    write_table(rows, columns, pipeline.config.out_path, header)


def cmd_oracle(pipeline: EigenLadder):
    pipeline.require_oracle()
    levels = pipeline.oracle_levels(pipeline.config.n_max + 1)
    header = _header(pipeline.config, "oracle")
    write_table(oracle_rows(levels), ["n", "e_oracle", "dim", "residual"], pipeline.config.out_path, header)


def cmd_fdlie(pipeline: EigenLadder, seed: int = 0, samples: int = 4):
    rows = identity_table(seed, samples)
    bad = failing_rows(rows)
    warnings = [f"{len(bad)} rows above 1e-12 * scale"] if bad else []
    header = _header(pipeline.config, f"fdlie seed={seed}", warnings)
    write_table(rows, ["check", "x", "value", "scale"], pipeline.config.out_path, header)


def cmd_verify(pipeline: EigenLadder, suite: str = "all"):
    """
    Run the suites and write the report.

    Raises:
        VerificationFailure: if any check is outside its limit
    """
    checks, notes = run_suites(suite)
    report = render_report(checks, notes, _header(pipeline.config, f"verify {suite}"))
    write_text(report, pipeline.config.out_path)
    failed = [check.name for check in checks if not check.passed]
    if failed:
        raise VerificationFailure(f"{len(failed)} check(s) failed: {', '.join(failed)}")
    logger.info("All %d checks passed", len(checks))


def run(args: argparse.Namespace) -> int:
    merged = _merged_config(args)
    if _opt(args, "dump_config"):
        write_text(dump_config(merged), _opt(args, "out"))
        return 0
    pipeline = EigenLadder(RunConfig.from_mapping(merged))

    if args.command == "spectrum":
        cmd_spectrum(pipeline)
    elif args.command == "lambda":
        cmd_lambda(pipeline, args.energies)
    elif args.command == "thermal":
        cmd_thermal(pipeline)
    elif args.command == "oracle":
        cmd_oracle(pipeline)
    elif args.command == "fdlie":
        cmd_fdlie(pipeline, args.seed, args.samples)
    elif args.command == "verify":
        cmd_verify(pipeline, args.suite)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None and not _opt(args, "dump_config"):
        parser.print_help(sys.stderr)
        return 2

    configure_logging(-1 if _opt(args, "quiet") else (1 if _opt(args, "verbose") else 0))
    try:
        return run(args)
    except EigenladderError as e:
        handle_error(e, context=args.command or "")
        return exit_code_for(e)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
