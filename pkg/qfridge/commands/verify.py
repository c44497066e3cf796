# qfridge/commands/verify.py
import argparse
from pathlib import Path

from ..errors import VerificationFailure
from ..services.sweep import to_json, write_json
from ..services.verify import LEVELS, SEED, verify


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="run the self-check suites")
    parser.add_argument("--level", choices=sorted(LEVELS), default="fast")
    parser.add_argument("--seed", type=int, default=SEED)
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.set_defaults(func=handle)


def handle(args: argparse.Namespace) -> int:
    report = verify(level=args.level, seed=args.seed)
    if args.out:
        write_json(report, Path(args.out))
    else:
        print(to_json(report))
    if not report["passed"]:
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        raise VerificationFailure(f"failed checks: {', '.join(failed)}")
    return 0
