# qfridge/models/params.py
"""
Parameter containers for the three-qubit machine and its reservoirs.

Units: hbar = k_B = 1 and T1 = 1, so beta1 = 1 by convention and every
energy and rate is measured in k_B T1.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Tuple

from ..errors import ValidationError
from ..services.event_logger import log_event

logger = logging.getLogger(__name__)

Triple = Tuple[float, float, float]

DEFAULT_GAMMA0 = 0.01


class WeakCouplingWarning(UserWarning):
    """g is not small against the qubit energies; the local approach is suspect."""


class DissipationModel(str, Enum):
    """How one- and two-spin processes of the same reservoir combine."""
    # s_i = single flip + alpha * pair flip in one jump operator
    COHERENT = "coherent"
    # single and pair flips dissipate through separate channels
    INCOHERENT_CORRELATED = "incoherent_correlated"


def _triple(values: Any, name: str) -> Triple:
    if isinstance(values, (int, float)):
        values = (values, values, values)
    values = tuple(float(v) for v in values)
    if len(values) != 3:
        raise ValidationError(f"{name} must have exactly three entries, got {len(values)}")
    return values


@dataclass(frozen=True)
class MachineParams:
    """
    Free parameters of the machine Hamiltonian.

    Only E1 and E2 are stored; E3 = E2 - E1 is derived so the resonance
    E2 = E1 + E3 cannot be violated.
    """
    E1: float
    E2: float
    g: float = 0.005

    def __post_init__(self) -> None:
        for name in ("E1", "E2", "g"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value}")
        if self.E1 <= 0:
            raise ValidationError(f"E1 must be positive, got {self.E1}")
        if self.E2 <= self.E1:
            raise ValidationError(
                f"E2 must exceed E1 so that E3 = E2 - E1 > 0 (E1={self.E1}, E2={self.E2})"
            )
        if self.g < 0:
            raise ValidationError(f"g must be non-negative, got {self.g}")
        if self.g >= self.e_min / 10.0:
            message = (
                f"g={self.g} is not below E_min/10={self.e_min / 10.0:.6g}; "
                "the local master equation may be inaccurate"
            )
            warnings.warn(message, WeakCouplingWarning, stacklevel=3)
            log_event("WEAK_COUPLING", message, level=logging.WARNING, g=self.g, e_min=self.e_min)

    @property
    def E3(self) -> float:
        return self.E2 - self.E1

    @property
    def energies(self) -> Triple:
        return (self.E1, self.E2, self.E3)

    @property
    def e_min(self) -> float:
        return min(self.energies)

    def with_e1(self, E1: float) -> "MachineParams":
        """Same machine with a new E1 (E2 held fixed, E3 follows)."""
        return MachineParams(E1=E1, E2=self.E2, g=self.g)

    def to_dict(self) -> Dict[str, float]:
        return {"e1": self.E1, "e2": self.E2, "e3": self.E3, "g": self.g}


@dataclass(frozen=True)
class BathParams:
    """Inverse temperatures, bare emission rates and commonness of the reservoirs."""
    beta: Triple
    gamma0: Triple = (DEFAULT_GAMMA0, DEFAULT_GAMMA0, DEFAULT_GAMMA0)
    alpha: float = 0.0
    model: DissipationModel = DissipationModel.COHERENT

    def __post_init__(self) -> None:
        # frozen: normalize through object.__setattr__
        object.__setattr__(self, "beta", _triple(self.beta, "beta"))
        object.__setattr__(self, "gamma0", _triple(self.gamma0, "gamma0"))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "model", DissipationModel(self.model))

        b1, b2, b3 = self.beta
        if not all(math.isfinite(b) for b in self.beta):
            raise ValidationError(f"beta must be finite, got {self.beta}")
        if not (b1 >= b2 >= b3 > 0):
            raise ValidationError(
                f"refrigerator ordering requires beta1 >= beta2 >= beta3 > 0, got {self.beta}"
            )
        if not 0.0 <= self.alpha <= 1.0:
            raise ValidationError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not all(math.isfinite(g) and g > 0 for g in self.gamma0):
            raise ValidationError(f"gamma0 entries must be positive, got {self.gamma0}")

    @property
    def gamma_unit(self) -> float:
        """Reference rate that reported currents are divided by."""
        return self.gamma0[0]

    @property
    def has_dark_state(self) -> bool:
        return self.model is DissipationModel.COHERENT and self.alpha == 1.0

    def replace(self, **changes: Any) -> "BathParams":
        data = {
            "beta": self.beta,
            "gamma0": self.gamma0,
            "alpha": self.alpha,
            "model": self.model,
        }
        data.update(changes)
        return BathParams(**data)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "beta1": self.beta[0],
            "beta2": self.beta[1],
            "beta3": self.beta[2],
            "gamma0_1": self.gamma0[0],
            "gamma0_2": self.gamma0[1],
            "gamma0_3": self.gamma0[2],
            "alpha": self.alpha,
            "model": self.model.value,
        }


@dataclass(frozen=True)
class RateSet:
    """Absorption (up) and emission (down) rates per reservoir."""
    gamma_up: Triple
    gamma_down: Triple

    def total(self, i: int) -> float:
        return self.gamma_up[i] + self.gamma_down[i]
