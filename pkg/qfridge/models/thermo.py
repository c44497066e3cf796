# qfridge/models/thermo.py

import math
from dataclasses import dataclass
from typing import Any, Dict, Tuple

Triple = Tuple[float, float, float]


@dataclass(frozen=True)
class ThermoReport:
    """
    Steady-state performance of the machine.

    q_dot and sigma_dot are expressed in units of the reference rate
    gamma0[0]; beta_eff in 1/(k_B T1). cop is NaN when Q3 vanishes.
    """
    q_dot: Triple
    cop: float
    sigma_dot: float
    beta_eff: Triple
    cooling: bool
    hint_correction: float
    first_law_residual: float
    dark_population: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q1": self.q_dot[0],
            "q2": self.q_dot[1],
            "q3": self.q_dot[2],
            "cop": self.cop,
            "sigma_dot": self.sigma_dot,
            "beta1_eff": self.beta_eff[0],
            "beta2_eff": self.beta_eff[1],
            "beta3_eff": self.beta_eff[2],
            "cooling": self.cooling,
            "hint_correction": self.hint_correction,
            "first_law_residual": self.first_law_residual,
            "dark_population": self.dark_population,
        }


@dataclass(frozen=True)
class MaxPowerPoint:
    """Result of cop_at_max_power()."""
    e1: float
    # q1 and sigma_dot in units of gamma0[0]
    q1: float
    cop: float
    sigma_dot: float = math.nan
    # grid scan found more than one local maximum
    multimodal: bool = False
    # maximizer sits on the first or last grid point
    at_edge: bool = False

    @property
    def is_clean(self) -> bool:
        return not (self.multimodal or self.at_edge) and math.isfinite(self.cop)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "e1_star": self.e1,
            "q1_star": self.q1,
            "cop_star": self.cop,
            "sigma_dot_star": self.sigma_dot,
            "multimodal": self.multimodal,
            "at_edge": self.at_edge,
        }
