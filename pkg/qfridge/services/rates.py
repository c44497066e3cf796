# qfridge/services/rates.py

import math

import numpy as np

from ..errors import DomainError, UndefinedBoundError
from ..models.params import BathParams, MachineParams, RateSet


def thermal_occupation(beta: float, E: float) -> float:
    """
    Bose-Einstein occupation 1/(exp(beta*E) - 1).

    Written as exp(-x)/(1 - exp(-x)) so large beta*E underflows to 0 instead
    of overflowing.
    """
    x = float(beta) * float(E)
    if math.isnan(x) or x <= 0:
        raise DomainError(f"thermal occupation needs beta*E > 0, got {x}")
    return float(np.exp(-x) / -np.expm1(-x))


def rates(machine: MachineParams, baths: BathParams) -> RateSet:
    """Absorption and emission rates obeying local detailed balance."""
    up = []
    down = []
    for beta, E, gamma0 in zip(baths.beta, machine.energies, baths.gamma0):
        n = thermal_occupation(beta, E)
        up.append(gamma0 * n)
        down.append(gamma0 * (n + 1.0))
    return RateSet(gamma_up=tuple(up), gamma_down=tuple(down))


def carnot_cop(baths: BathParams) -> float:
    b1, b2, b3 = baths.beta
    if b1 == b2:
        raise UndefinedBoundError("Carnot COP diverges for beta1 == beta2")
    return (b2 - b3) / (b1 - b2)


def cooling_window_max_E1(baths: BathParams, E2: float) -> float:
    """
    Largest E1 that still cools at fixed E2.

    Solves E1 = eta_C * (E2 - E1), i.e. E1_max = eta_C * E2 / (1 + eta_C).
    """
    if not E2 > 0:
        raise DomainError(f"E2 must be positive, got {E2}")
    eta = carnot_cop(baths)
    return eta * E2 / (1.0 + eta)
