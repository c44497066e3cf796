# qfridge/main.py
"""
Command-line entry point: `python -m qfridge <command> ...`.

Exit status: 0 success, 1 invalid input, 2 solver failure, 3 failed verification.
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .commands import figure as figure_cmd
from .commands import steady as steady_cmd
from .commands import sweep as sweep_cmd
from .commands import transient as transient_cmd
from .commands import verify as verify_cmd
from .config import settings
from .errors import FridgeError

logger = logging.getLogger("qfridge")

COMMANDS = (steady_cmd, sweep_cmd, transient_cmd, figure_cmd, verify_cmd)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfridge",
        description="Three-qubit autonomous refrigerator in common thermal reservoirs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", dest="log_level", default=settings.log_level)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except FridgeError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
