"""
Command-line entry point: ``rotary-coverage --config cfg.json [--out DIR] [overrides]``.
"""
from typing import List, Optional
import argparse
import logging
import sys

from Rotary_Coverage_Sim.utils.errors import ConfigError
from Rotary_Coverage_Sim.utils.logging_setup import setup_logging
from .checks import run_checks
from .config import MAX_SEED, load_config
from .runner import EXIT_CONFIG_ERROR, EXIT_OK, run

logger = logging.getLogger(__name__)

EXIT_USAGE = 64


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser that exits with status 64 on bad usage."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits: {text}")
    return value


def build_parser() -> UsageParser:
    parser = UsageParser(prog="rotary-coverage",
                         description="Simulate distributed rotary coverage control on a ring of agents.")
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--out", default="./out", help="output directory (default ./out)")
    parser.add_argument("--seed", type=_u64, help="override the configured seed")
    parser.add_argument("--t-final", type=float, dest="t_final", help="override integrator.t_final (s)")
    parser.add_argument("--dt", type=float, help="override integrator.dt (s)")
    parser.add_argument("--emit-every", type=int, dest="emit_every", help="emit every n steps")
    parser.add_argument("--workers", type=int, help="threads for per-agent sector integrals")
    parser.add_argument("--check", action="store_true",
                        help="run the gradient and conservation checks on the configured region and density")
    parser.add_argument("--log-level", default="INFO", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    parser.add_argument("--no-progress", action="store_true", help="hide the progress bar")
    return parser


def cli_main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    setup_logging(args.log_level)

    try:
        config = load_config(args.config).update(
            seed=args.seed, t_final=args.t_final, dt=args.dt,
            emit_every=args.emit_every, workers=args.workers,
        )
    except ConfigError as err:
        logger.error(f"Invalid configuration: {err}")
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    if args.check:
        try:
            results = run_checks(config)
        except ConfigError as err:
            print(f"config error: {err}", file=sys.stderr)
            return EXIT_CONFIG_ERROR
        for result in results:
            print(result.line())
        failed = [r.name for r in results if not r.passed]
        if failed:
            print(f"{len(failed)} check(s) failed: {', '.join(failed)}")
            return EXIT_CONFIG_ERROR
        print(f"all {len(results)} checks passed")
        return EXIT_OK

    return run(config, args.out, progress=not args.no_progress)


def main() -> None:
    sys.exit(cli_main())
