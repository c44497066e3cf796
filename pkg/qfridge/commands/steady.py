# qfridge/commands/steady.py
import argparse
import logging
from pathlib import Path

from ..services.sweep import run_steady, to_json, write_json
from . import add_run_options, config_from_args

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("steady", help="solve one operating point, report as JSON")
    add_run_options(parser)
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.set_defaults(func=handle)


def handle(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    row = run_steady(config)
    payload = row.to_dict()
    out = args.out or config.out
    if out:
        write_json(payload, Path(out))
        logger.info("steady report written to %s", out)
    else:
        print(to_json(payload))
    return 0
