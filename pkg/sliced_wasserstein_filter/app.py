"""
Command-line entry point.

Exit codes: 0 success, 1 data error, 2 usage error, 3 validation findings.
"""
import argparse
import sys

from dotenv import load_dotenv
from loguru import logger

from sliced_wasserstein_filter.commands import (
    eval_command,
    filter_command,
    generate_command,
    rank_command,
    validate_command,
)
from sliced_wasserstein_filter.components.errors import ConfigError, DataError, ShapeError
from sliced_wasserstein_filter.config import EXIT_DATA, EXIT_OK, EXIT_USAGE, get_log_level

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level:<8} | {message}"

COMMANDS = {
    "filter": filter_command,
    "eval": eval_command,
    "generate": generate_command,
    "validate-lcpr": validate_command,
    "rank": rank_command,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sliced_wasserstein_filter",
        description="Sliced-Wasserstein outlier filtering, baselines, evaluation and LCPR validation",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO level")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command in COMMANDS.items():
        command.add_arguments(subparsers.add_parser(name, help=command.HELP, description=command.HELP))
    return parser


def configure_logging(verbose: bool) -> None:
    level = "INFO" if verbose else get_log_level()
    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)
    logger.enable("sliced_wasserstein_filter")


def main(argv: list[str] | None = None) -> int:
    load_dotenv()  # only SWFILTER_LOG_LEVEL is read from the environment
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        configure_logging(args.verbose)
    except ValueError as e:
        print(f"❌ Invalid log level: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command].run(args)
    except ConfigError as e:
        print(f"❌ {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ShapeError) as e:
        print(f"❌ {e.message}", file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_DATA
