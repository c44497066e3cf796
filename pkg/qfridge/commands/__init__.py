# qfridge/commands/__init__.py
"""
CLI subcommands. Each module exposes register(subparsers), which adds its
parser and binds the handler as `func`; main.py wires them up like routers.
"""

import argparse
from typing import Any, Dict, List, Optional

from ..errors import ValidationError
from ..models.params import DissipationModel
from ..models.run import RunConfig, SweepAxis
from ..models.states import InitialKind


def _triple(text: str) -> List[float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def parse_axis(text: str) -> SweepAxis:
    """name:start:stop:num, e.g. alpha:0:0.99:34."""
    parts = text.split(":")
    if len(parts) != 4:
        raise ValidationError(f"sweep axis must read name:start:stop:num, got {text!r}")
    name, start, stop, num = parts
    try:
        return SweepAxis(name=name, start=float(start), stop=float(stop), num=int(num))
    except ValueError as e:
        raise ValidationError(f"bad sweep axis {text!r}: {e}") from e


def add_run_options(parser: argparse.ArgumentParser) -> None:
    """Flags shared by steady, sweep and transient; each overrides the config file."""
    parser.add_argument("--config", help="flat JSON file with RunConfig keys")
    parser.add_argument("--e1", type=float)
    parser.add_argument("--e2", type=float)
    parser.add_argument("--g", type=float)
    parser.add_argument("--beta", type=_triple, help="beta1,beta2,beta3")
    parser.add_argument("--gamma0", type=_triple, help="gamma0 per reservoir")
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--model", choices=[m.value for m in DissipationModel])
    parser.add_argument("--initial", choices=[k.value for k in InitialKind])
    parser.add_argument("--kernel-rtol", dest="kernel_rtol", type=float)
    parser.add_argument("--rel-tol", dest="rel_tol", type=float)
    parser.add_argument("--abs-tol", dest="abs_tol", type=float)


RUN_KEYS = (
    "e1", "e2", "g", "beta", "gamma0", "alpha", "model", "initial",
    "kernel_rtol", "rel_tol", "abs_tol",
)


def config_from_args(args: argparse.Namespace, **extra: Any) -> RunConfig:
    overrides: Dict[str, Any] = {k: getattr(args, k, None) for k in RUN_KEYS}
    overrides.update(extra)
    config_path: Optional[str] = getattr(args, "config", None)
    if config_path:
        return RunConfig.from_file(config_path, **overrides)
    return RunConfig.build(**{k: v for k, v in overrides.items() if v is not None})
