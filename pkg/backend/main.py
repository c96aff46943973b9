"""
tempcorr command-line entry point
Temporal correlation of interference and link success in Poisson networks
"""
from typing import List, Optional
import argparse
import logging
import sys

from commands import register_commands
from commands.common import EXIT_NUMERIC, EXIT_USAGE

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="tempcorr",
        description="Joint success, correlation and local delay of a link in a Poisson field of "
                    "ALOHA interferers: analytic results, figure data and a Monte Carlo oracle.",
    )
    network = parser.add_argument_group("network parameters (override --config)")
    network.add_argument("--lambda", type=float, dest="lam", help="Interferer intensity λ")
    network.add_argument("--r", type=float, help="Link distance")
    network.add_argument("--theta", type=float, help="SIR threshold θ (linear)")
    exponent = network.add_mutually_exclusive_group()
    exponent.add_argument("--alpha", type=float, help="Path-loss exponent α > 2")
    exponent.add_argument("--delta", type=float, help="δ = 2/α")
    network.add_argument("--p", type=float, help="ALOHA transmit probability")
    network.add_argument("--mu", type=float, help="Receiver intensity of the Rayleigh link distance")

    run = parser.add_argument_group("run settings")
    run.add_argument("--seed", type=int, help="Master seed (default: 0)")
    run.add_argument("--n-realizations", type=int, dest="n_realizations", help="Monte Carlo realizations")
    run.add_argument("--window-radius", type=float, dest="window_radius", help="Simulation disk radius")
    run.add_argument("--workers", type=int, help="Worker processes (default: 1)")
    run.add_argument("--config", help="Flat key = value settings file")
    run.add_argument("--db", help="Run-history database file (default: backend/data/tempcorr_runs.db)")

    output = parser.add_argument_group("output")
    output.add_argument("--out", help="Output file (default: standard output)")
    output.add_argument("--format", default="csv", choices=["csv", "json"], help="Output format (default: csv)")
    verbosity = output.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", action="store_true", help="Warnings and errors only")

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    register_commands(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level)
    logging.getLogger().setLevel(level)
    logger.debug(f"[CLI] {args.command} with {vars(args)}")

    try:
        return args.func(args)
    except ValueError as e:
        logger.error(f"[CLI] {e}", exc_info=args.verbose)
        return EXIT_USAGE
    except ArithmeticError as e:
        logger.error(f"[CLI] Numeric failure: {e}", exc_info=True)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
