# qfridge/commands/figure.py
import argparse
from pathlib import Path

from ..config import settings
from ..services.presets import PRESETS, figure_preset


def register(subparsers) -> None:
    parser = subparsers.add_parser("figure", help="write the CSV datasets of a figure preset")
    parser.add_argument("name", choices=sorted(PRESETS) + ["all"])
    parser.add_argument("--out", default=settings.output_dir, help="output directory")
    parser.add_argument("--workers", type=int)
    parser.set_defaults(func=handle)


def handle(args: argparse.Namespace) -> int:
    names = sorted(PRESETS) if args.name == "all" else [args.name]
    for name in names:
        for path in figure_preset(name, Path(args.out), workers=args.workers):
            print(path)
    return 0
