# qfridge/models/run.py
"""
Run configuration and result rows shared by the CLI commands.
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..config import SolverConfig, get_config
from ..errors import ValidationError
from .params import BathParams, DissipationModel, MachineParams
from .states import InitialKind, InitialState, ReducedState
from .thermo import ThermoReport

AxisName = Literal["e1", "e2", "g", "alpha", "beta2_ratio", "beta3_ratio"]

# beta2_ratio must be applied before beta3_ratio, which is relative to beta2
AXIS_ORDER: Tuple[str, ...] = ("e1", "e2", "g", "alpha", "beta2_ratio", "beta3_ratio")


class SweepAxis(BaseModel):
    """Evenly spaced values of one named parameter, both ends included."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: AxisName
    start: float
    stop: float
    num: int = Field(gt=0)

    @classmethod
    def from_step(cls, name: str, start: float, stop: float, step: float) -> "SweepAxis":
        if step <= 0:
            raise ValidationError(f"sweep step must be positive, got {step}")
        num = int(round((stop - start) / step)) + 1
        return cls(name=name, start=start, stop=stop, num=num)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)


class RunConfig(BaseModel):
    """
    Everything a steady, sweep or transient run needs.

    Loaded from a flat JSON object; unknown keys are rejected. Solver
    tolerances left as None fall back to the process-wide SolverConfig.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    # machine
    e1: float = 0.8
    e2: float = 5.0
    g: float = 0.005

    # reservoirs
    beta: Tuple[float, float, float] = (1.0, 0.5, 0.05)
    gamma0: Tuple[float, float, float] = (0.01, 0.01, 0.01)
    alpha: float = 0.0
    model: DissipationModel = DissipationModel.COHERENT

    # initial state (only matters for the alpha = 1 coherent model and transients)
    initial: InitialKind = InitialKind.THERMAL_PRODUCT
    custom_state: Optional[Tuple[float, ...]] = None

    # sweep
    sweep: Tuple[SweepAxis, ...] = ()

    # transient sampling; t_max in units of 1/gamma0[0]
    t_max: Optional[float] = None
    samples: int = Field(default=201, gt=1)

    # solver overrides
    kernel_rtol: Optional[float] = None
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None

    workers: Optional[int] = None
    out: Optional[str] = None

    @field_validator("sweep")
    @classmethod
    def _at_most_two_axes(cls, axes):
        names = [a.name for a in axes]
        if len(axes) > 2:
            raise ValueError("a sweep takes one or two axes")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate sweep axis in {names}")
        return axes

    @model_validator(mode="after")
    def _check_physics(self) -> "RunConfig":
        # constructing the params runs the domain invariants once, up front
        try:
            self.machine()
            self.baths()
            self.initial_spec()
        except ValidationError as e:
            raise ValueError(str(e)) from e
        # every constraint is monotone along each axis, so the grid corners bound it;
        # axes are applied together since beta3_ratio is relative to beta2
        for corner in self.corners():
            try:
                self.at_point(corner)
            except (ValidationError, ValueError) as e:
                raise ValueError(f"sweep corner {corner}: {e}") from e
        return self

    @classmethod
    def from_file(cls, path: str, **overrides: Any) -> "RunConfig":
        """Read a JSON config; non-None keyword overrides win over file values."""
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"cannot read config {path}: {e}") from e
        if not isinstance(data, dict):
            raise ValidationError(f"config {path} must hold a JSON object")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.build(**data)

    @classmethod
    def build(cls, **data: Any) -> "RunConfig":
        """Construct, turning pydantic errors into ValidationError."""
        from pydantic import ValidationError as PydanticValidationError

        try:
            return cls(**data)
        except PydanticValidationError as e:
            raise ValidationError(str(e)) from e

    def machine(self) -> MachineParams:
        return MachineParams(E1=self.e1, E2=self.e2, g=self.g)

    def baths(self) -> BathParams:
        return BathParams(beta=self.beta, gamma0=self.gamma0, alpha=self.alpha, model=self.model)

    def initial_spec(self) -> InitialState:
        custom = None
        if self.custom_state is not None:
            custom = ReducedState(tuple(self.custom_state))
        return InitialState(kind=self.initial, custom=custom)

    def solver_config(self) -> SolverConfig:
        base = get_config()
        return SolverConfig(
            KERNEL_RTOL=self.kernel_rtol if self.kernel_rtol is not None else base.KERNEL_RTOL,
            REL_TOL=self.rel_tol if self.rel_tol is not None else base.REL_TOL,
            ABS_TOL=self.abs_tol if self.abs_tol is not None else base.ABS_TOL,
            METHOD=base.METHOD,
            CLOSURE_TOL=base.CLOSURE_TOL,
            PSD_TOL=base.PSD_TOL,
            STEADY_RESIDUAL=base.STEADY_RESIDUAL,
            GAP_HORIZON=base.GAP_HORIZON,
        )

    def at_point(self, point: Dict[str, float]) -> "RunConfig":
        """Copy with the named axis values applied (no re-validation)."""
        update: Dict[str, Any] = {"sweep": ()}
        b1, b2, b3 = self.beta
        for name in AXIS_ORDER:
            if name not in point:
                continue
            value = float(point[name])
            if name in ("e1", "e2", "g", "alpha"):
                update[name] = value
            elif name == "beta2_ratio":
                b2 = value * b1
            elif name == "beta3_ratio":
                b3 = value * b2
        update["beta"] = (b1, b2, b3)
        copy = self.model_copy(update=update)
        # params are built here so bad points fail before any solve
        copy.machine()
        copy.baths()
        return copy

    def corners(self) -> List[Dict[str, float]]:
        """Combined endpoint points of the sweep (just the base point without one)."""
        names = [a.name for a in self.sweep]
        ends = [(a.start, a.stop) for a in self.sweep]
        return [dict(zip(names, values)) for values in itertools.product(*ends)]

    def grid(self) -> List[Dict[str, float]]:
        """Cartesian product of the sweep axes, first axis slowest."""
        if not self.sweep:
            return [{}]
        axes = [(a.name, a.values()) for a in self.sweep]
        mesh = np.meshgrid(*[v for _, v in axes], indexing="ij")
        flat = [m.ravel() for m in mesh]
        return [
            {name: float(flat[k][j]) for k, (name, _) in enumerate(axes)}
            for j in range(flat[0].size)
        ]


# fixed column order for every row-producing command
PARAM_COLUMNS: Tuple[str, ...] = (
    "e1", "e2", "e3", "g",
    "beta1", "beta2", "beta3",
    "alpha", "model", "initial",
)
REPORT_COLUMNS: Tuple[str, ...] = (
    "q1", "q2", "q3", "cop", "sigma_dot",
    "beta1_eff", "beta2_eff", "beta3_eff", "cooling",
    "hint_correction", "first_law_residual", "dark_population",
)
DIAGNOSTIC_COLUMNS: Tuple[str, ...] = ("residual", "kernel_dimension", "used_fallback", "error")
RESULT_COLUMNS: Tuple[str, ...] = PARAM_COLUMNS + REPORT_COLUMNS + DIAGNOSTIC_COLUMNS


@dataclass
class ResultRow:
    """One solved (or failed) point."""
    params: Dict[str, Any]
    report: Optional[ThermoReport] = None
    residual: float = math.nan
    kernel_dimension: int = 0
    used_fallback: bool = False
    error: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.report is not None and not self.error

    @classmethod
    def params_of(cls, config: RunConfig) -> Dict[str, Any]:
        b1, b2, b3 = config.beta
        return {
            "e1": config.e1,
            "e2": config.e2,
            "e3": config.e2 - config.e1,
            "g": config.g,
            "beta1": b1,
            "beta2": b2,
            "beta3": b3,
            "alpha": config.alpha,
            "model": config.model.value,
            "initial": config.initial.value,
        }

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {name: self.params.get(name) for name in PARAM_COLUMNS}
        report = self.report.to_dict() if self.report is not None else {}
        for name in REPORT_COLUMNS:
            out[name] = report.get(name, math.nan)
        out["residual"] = self.residual
        out["kernel_dimension"] = self.kernel_dimension
        out["used_fallback"] = self.used_fallback
        out["error"] = self.error
        out.update(self.extra)
        return out
