"""
UCS Hybrid Toolkit command line
"""
import argparse
import logging
from typing import Optional, Sequence

from ucs_hybrid import __description__, __version__
from ucs_hybrid.commands import compare, predict, summarize, sweep, synth, train
from ucs_hybrid.config.settings import LOG_FORMAT, LOG_LEVEL
from ucs_hybrid.exceptions import UCSHybridError

logger = logging.getLogger(__name__)

# Subcommands, in the order they appear in --help
COMMANDS = (train, sweep, compare, predict, synth, summarize)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ucs_hybrid", description=__description__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="logging level (default $UCS_LOG_LEVEL or INFO)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(level=(level or LOG_LEVEL).upper(), format=LOG_FORMAT)


# ============================================================================
# EXCEPTION HANDLER
# ============================================================================
def handle_error(exc: UCSHybridError) -> int:
    """
    Convert a domain exception into a logged warning and an exit code.

    Services raise ValidationError, ResourceNotFoundError, etc.; anything
    that is not a UCSHybridError propagates with its traceback.
    """
    logger.warning(f"{type(exc).__name__}: {exc.message} (exit={exc.exit_code})")
    return exc.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except UCSHybridError as exc:
        return handle_error(exc)


if __name__ == "__main__":
    raise SystemExit(main())
