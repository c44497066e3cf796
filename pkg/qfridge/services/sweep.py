# qfridge/services/sweep.py
"""
Single-point, sweep and transient runners plus the CSV/JSON writers.

Sweep points are independent, so they are mapped over a joblib pool; the
frame is assembled and written by the calling process only.
"""

import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..config import settings
from ..errors import FridgeError
from ..models.run import RESULT_COLUMNS, ResultRow, RunConfig
from .dynamics import initial_state, integrate
from .event_logger import log_event
from .operators import liouvillian, reduce_to_w
from .thermo import evaluate, marginal_beta

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


# ---------------------------------------------------------------------------
# Writers
# ---------------------------------------------------------------------------

def _atomic_write(path: Path, write) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """Comma-separated, header row, 12 significant digits, "\\n" line endings."""
    return _atomic_write(
        path,
        lambda fh: frame.to_csv(
            fh, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", na_rep="nan"
        ),
    )


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True)


def write_json(payload: Dict[str, Any], path: Path) -> Path:
    text = to_json(payload) + "\n"
    return _atomic_write(path, lambda fh: fh.write(text))


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def run_steady(config: RunConfig) -> ResultRow:
    """Solve one point; solver and validation errors propagate."""
    solution, report = evaluate(
        config.machine(), config.baths(), config.initial_spec(), config.solver_config()
    )
    return ResultRow(
        params=ResultRow.params_of(config),
        report=report,
        residual=solution.residual,
        kernel_dimension=solution.kernel_dimension,
        used_fallback=solution.used_fallback,
    )


def _solve_point(base: RunConfig, point: Dict[str, float]) -> ResultRow:
    params = {**ResultRow.params_of(base), **point}
    try:
        config = base.at_point(point)
        params = ResultRow.params_of(config)
        row = run_steady(config)
    except (FridgeError, ValueError, np.linalg.LinAlgError) as e:
        log_event(
            "POINT_FAILED",
            f"{type(e).__name__}: {e}",
            level=logging.WARNING,
            point=point,
        )
        row = ResultRow(params=params, error=f"{type(e).__name__}: {e}")
    row.extra.update(point)
    return row


def rows_to_frame(rows: List[ResultRow], axis_names: List[str]) -> pd.DataFrame:
    columns = list(RESULT_COLUMNS) + [n for n in axis_names if n not in RESULT_COLUMNS]
    frame = pd.DataFrame([row.to_dict() for row in rows], columns=columns)
    if axis_names:
        frame = frame.sort_values(by=axis_names, kind="mergesort").reset_index(drop=True)
    return frame


def run_sweep(
    config: RunConfig,
    out: Optional[Path] = None,
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """
    Solve the Cartesian grid of config.sweep, one row per point.

    Failed points keep their row with the error column filled. The frame is
    sorted by the axis values, so the output does not depend on worker count.
    """
    axis_names = [axis.name for axis in config.sweep]
    points = config.grid()
    n_jobs = workers or config.workers or settings.workers
    logger.info("sweeping %d points over %s with %d worker(s)", len(points), axis_names, n_jobs)

    rows = Parallel(n_jobs=n_jobs)(delayed(_solve_point)(config, point) for point in points)
    frame = rows_to_frame(rows, axis_names)

    failed = int((frame["error"] != "").sum())
    if failed:
        logger.warning("%d of %d sweep points failed", failed, len(frame))
    if out is not None:
        write_csv(frame, out)
        log_event("SWEEP_WRITTEN", f"{len(frame)} rows written", path=str(out), failed=failed)
    return frame


def run_transient(config: RunConfig, out: Optional[Path] = None) -> pd.DataFrame:
    """
    Trajectory of the ten coordinates from the configured initial state.

    Times are reported in units of 1/gamma0[0]; config.t_max uses the same unit.
    """
    machine, baths = config.machine(), config.baths()
    solver = config.solver_config()
    w = reduce_to_w(liouvillian(machine, baths))
    p0 = initial_state(config.initial_spec(), machine, baths)
    unit = baths.gamma_unit
    t_max = config.t_max / unit if config.t_max is not None else None
    trajectory = integrate(w, p0, t_max=t_max, samples=config.samples, config=solver)

    frame = trajectory.to_frame()
    frame["t"] = frame["t"] * unit
    frame["beta1_eff"] = [
        marginal_beta(trajectory.state_at(k), machine, 0) for k in range(len(trajectory))
    ]
    if out is not None:
        write_csv(frame, out)
        log_event("TRANSIENT_WRITTEN", f"{len(frame)} samples written", path=str(out))
    return frame
