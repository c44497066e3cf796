# qfridge/commands/sweep.py
import argparse
from pathlib import Path

from ..errors import ValidationError
from ..services.sweep import run_sweep
from . import add_run_options, config_from_args, parse_axis


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="solve a one- or two-axis parameter grid into CSV")
    add_run_options(parser)
    parser.add_argument(
        "--axis",
        action="append",
        default=[],
        metavar="NAME:START:STOP:NUM",
        help="repeat for a second axis; names: e1, e2, g, alpha, beta2_ratio, beta3_ratio",
    )
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out", help="CSV path")
    parser.set_defaults(func=handle)


def handle(args: argparse.Namespace) -> int:
    extra = {"workers": args.workers, "out": args.out}
    if args.axis:
        extra["sweep"] = tuple(parse_axis(a) for a in args.axis)
    config = config_from_args(args, **extra)
    if not config.sweep:
        raise ValidationError("sweep needs at least one --axis (or a sweep entry in --config)")
    if not config.out:
        raise ValidationError("sweep needs --out")

    frame = run_sweep(config, out=Path(config.out), workers=config.workers)
    failed = int((frame["error"] != "").sum())
    print(f"{len(frame)} points written to {config.out} ({failed} failed)")
    return 0
