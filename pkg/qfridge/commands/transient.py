# qfridge/commands/transient.py
import argparse
from pathlib import Path

from ..errors import ValidationError
from ..services.sweep import run_transient
from . import add_run_options, config_from_args


def register(subparsers) -> None:
    parser = subparsers.add_parser("transient", help="integrate the rate equations from an initial state")
    add_run_options(parser)
    parser.add_argument("--t-max", dest="t_max", type=float, help="horizon in units of 1/gamma0[0]")
    parser.add_argument("--samples", type=int)
    parser.add_argument("--out", help="CSV path")
    parser.set_defaults(func=handle)


def handle(args: argparse.Namespace) -> int:
    config = config_from_args(args, t_max=args.t_max, samples=args.samples, out=args.out)
    if not config.out:
        raise ValidationError("transient needs --out")
    frame = run_transient(config, out=Path(config.out))
    print(f"{len(frame)} samples written to {config.out}")
    return 0
