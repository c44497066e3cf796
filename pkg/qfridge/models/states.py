# qfridge/models/states.py

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd

from ..errors import ValidationError
from .operators import BasisConvention, WMatrix

TRACE_TOL = 1e-9
POPULATION_FLOOR = -1e-12
BLOCK_TOL = 1e-12


class InitialKind(str, Enum):
    """Initial machine states used for the alpha = 1 (dark state) runs."""
    THERMAL_PRODUCT = "thermal_product"
    DARK_ORTHOGONAL = "dark_orthogonal"
    CUSTOM = "custom"


@dataclass(frozen=True)
class ReducedState:
    """
    Ten-coordinate state (p000, ..., p111, c_R, c_I) with c = <010|rho|101>.
    """
    values: tuple

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if len(values) != 10:
            raise ValidationError(f"reduced state needs 10 coordinates, got {len(values)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_array(cls, array: Sequence[float], validate: bool = True) -> "ReducedState":
        state = cls(tuple(np.asarray(array, dtype=float).ravel()))
        if validate:
            state.validate()
        return state

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    @property
    def populations(self) -> np.ndarray:
        return np.array(self.values[:8], dtype=float)

    @property
    def c_R(self) -> float:
        return self.values[BasisConvention.C_R]

    @property
    def c_I(self) -> float:
        return self.values[BasisConvention.C_I]

    @property
    def trace(self) -> float:
        return float(sum(self.values[:8]))

    @property
    def dark_population(self) -> float:
        """p_D = (p010 + p101)/2 - c_R."""
        lo = self.values[BasisConvention.LOW]
        hi = self.values[BasisConvention.HIGH]
        return 0.5 * (lo + hi) - self.c_R

    def marginal(self, qubit: int) -> tuple:
        """(pi_0, pi_1) of qubit 0, 1 or 2 (0-based)."""
        shift = 2 - qubit
        pops = self.populations
        excited = sum(p for k, p in enumerate(pops) if (k >> shift) & 1)
        ground = sum(p for k, p in enumerate(pops) if not (k >> shift) & 1)
        return ground, excited

    def validate(self) -> "ReducedState":
        pops = self.populations
        if abs(pops.sum() - 1.0) > TRACE_TOL:
            raise ValidationError(f"populations sum to {pops.sum():.12g}, expected 1")
        if pops.min() < POPULATION_FLOOR:
            raise ValidationError(f"negative population {pops.min():.3e}")
        lo = self.values[BasisConvention.LOW]
        hi = self.values[BasisConvention.HIGH]
        if self.c_R ** 2 + self.c_I ** 2 > lo * hi + BLOCK_TOL:
            raise ValidationError(
                "degenerate block is not positive: "
                f"|c|^2={self.c_R ** 2 + self.c_I ** 2:.3e} > p010*p101={lo * hi:.3e}"
            )
        return self

    def to_dict(self) -> Dict[str, float]:
        out = dict(zip(BasisConvention.COORDINATES, self.values))
        out["p_D"] = self.dark_population
        return out


@dataclass(frozen=True)
class InitialState:
    """Selector for initial_state(); `custom` is required for InitialKind.CUSTOM."""
    kind: InitialKind = InitialKind.THERMAL_PRODUCT
    custom: Optional[ReducedState] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", InitialKind(self.kind))
        if self.kind is InitialKind.CUSTOM:
            if self.custom is None:
                raise ValidationError("a custom initial state needs its ten coordinates")
            self.custom.validate()


@dataclass(frozen=True)
class SteadySolution:
    state: ReducedState
    residual: float
    kernel_dimension: int
    w: WMatrix = field(repr=False)
    used_fallback: bool = False

    @property
    def dark_population(self) -> float:
        return self.state.dark_population

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.state.to_dict(),
            "residual": self.residual,
            "kernel_dimension": self.kernel_dimension,
            "dark_population": self.dark_population,
            "used_fallback": self.used_fallback,
        }


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples of p(t); `states` has one ten-coordinate row per time."""
    times: np.ndarray
    states: np.ndarray
    spectral_gap: float = float("nan")

    def __len__(self) -> int:
        return len(self.times)

    def state_at(self, k: int) -> ReducedState:
        return ReducedState.from_array(self.states[k], validate=False)

    @property
    def final(self) -> ReducedState:
        return self.state_at(-1)

    def traces(self) -> np.ndarray:
        return self.states[:, :8].sum(axis=1)

    def dark_populations(self) -> np.ndarray:
        lo, hi = BasisConvention.LOW, BasisConvention.HIGH
        return 0.5 * (self.states[:, lo] + self.states[:, hi]) - self.states[:, BasisConvention.C_R]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.states, columns=list(BasisConvention.COORDINATES))
        frame.insert(0, "t", self.times)
        frame["p_D"] = self.dark_populations()
        frame["trace"] = self.traces()
        return frame
