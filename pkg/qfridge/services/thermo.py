# qfridge/services/thermo.py

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..config import SolverConfig
from ..errors import NoCoolingWindowError, SecondLawViolation, UndefinedCOPError
from ..models.operators import BasisConvention, Liouvillian
from ..models.params import BathParams, DissipationModel, MachineParams
from ..models.states import InitialState, ReducedState, SteadySolution
from ..models.thermo import MaxPowerPoint, ThermoReport
from .dynamics import embed, initial_state, steady_state
from .event_logger import log_event
from .operators import free_hamiltonian, interaction_hamiltonian, liouvillian, reduce_to_w
from .rates import cooling_window_max_E1, rates

logger = logging.getLogger(__name__)

Triple = Tuple[float, float, float]

# in units of gamma0[0]
SECOND_LAW_TOL = 1e-12
DEFAULT_GRID_POINTS = 48


def _generator(
    solution: SteadySolution,
    machine: Optional[MachineParams],
    baths: Optional[BathParams],
    generator: Optional[Liouvillian],
) -> Liouvillian:
    if generator is not None:
        return generator
    return liouvillian(machine or solution.w.machine, baths or solution.w.baths)


def _bath_traces(operator: np.ndarray, generator: Liouvillian, state: ReducedState) -> Triple:
    rho = embed(state)
    return tuple(
        float(np.real(np.trace(operator @ generator.apply_bath(i, rho)))) for i in range(3)
    )


def heat_currents(
    solution: SteadySolution,
    machine: Optional[MachineParams] = None,
    baths: Optional[BathParams] = None,
    generator: Optional[Liouvillian] = None,
) -> Triple:
    """Q_i = Tr[(H1 + H2 + H3) L_i(rho)] in raw units (k_B T1 per unit time)."""
    generator = _generator(solution, machine, baths, generator)
    return _bath_traces(free_hamiltonian(generator.machine), generator, solution.state)


def interaction_corrections(
    solution: SteadySolution,
    machine: Optional[MachineParams] = None,
    baths: Optional[BathParams] = None,
    generator: Optional[Liouvillian] = None,
) -> Triple:
    """Tr[H_int L_i(rho)], the part of the heat current the local picture neglects."""
    generator = _generator(solution, machine, baths, generator)
    return _bath_traces(interaction_hamiltonian(generator.machine), generator, solution.state)


# (populations entering the alpha^2 term of gamma_up, of gamma_down) per bath
_PAIR_POPULATIONS = (
    (("001", "101"), ("110", "010")),
    (("000", "010"), ("111", "101")),
    (("100", "101"), ("011", "010")),
)


def closed_form_heat_currents(
    state: ReducedState, machine: MachineParams, baths: BathParams
) -> Triple:
    """
    Heat currents written out in populations and c_R.

    Q_i = E_i (g_up_i [pi0_i + a^2 (pair up) + 2 a c_R] - g_down_i [pi1_i + a^2 (pair down) + 2 a c_R])
    The 2 a c_R cross terms are absent for incoherent correlated dissipation.
    """
    rs = rates(machine, baths)
    alpha = baths.alpha
    cross = 2.0 * alpha * state.c_R if baths.model is DissipationModel.COHERENT else 0.0
    pops = state.populations
    out = []
    for i, (up_pair, down_pair) in enumerate(_PAIR_POPULATIONS):
        pi0, pi1 = state.marginal(i)
        up = pi0 + alpha ** 2 * sum(pops[BasisConvention.index(s)] for s in up_pair) + cross
        down = pi1 + alpha ** 2 * sum(pops[BasisConvention.index(s)] for s in down_pair) + cross
        out.append(machine.energies[i] * (rs.gamma_up[i] * up - rs.gamma_down[i] * down))
    return tuple(out)


def cop(q: Sequence[float]) -> float:
    """Q1/Q3."""
    if q[2] == 0:
        raise UndefinedCOPError("COP is undefined where Q3 vanishes")
    return q[0] / q[2]


def _second_law(sigma: float, baths: BathParams) -> float:
    if sigma < -SECOND_LAW_TOL * baths.gamma_unit:
        raise SecondLawViolation(f"entropy production {sigma:.3e} is negative")
    return sigma


def entropy_production(q: Sequence[float], baths: BathParams) -> float:
    """-sum_i beta_i Q_i, in the units of q."""
    return _second_law(-sum(b * qi for b, qi in zip(baths.beta, q)), baths)


def entropy_production_without_q2(q: Sequence[float], baths: BathParams) -> float:
    """
    Q3 (beta2 - beta3) - Q1 (beta1 - beta2).

    Q2 is eliminated through Q1 + Q2 + Q3 = 0, so this agrees with
    entropy_production only on currents obeying the first law.
    """
    b1, b2, b3 = baths.beta
    return _second_law(q[2] * (b2 - b3) - q[0] * (b1 - b2), baths)


def marginal_beta(state: ReducedState, machine: MachineParams, i: int) -> float:
    """ln(pi0/pi1)/E_i of qubit i's marginal; +/-inf if a marginal vanishes."""
    pi0, pi1 = state.marginal(i)
    if pi1 <= 0:
        return math.inf
    if pi0 <= 0:
        return -math.inf
    return math.log(pi0 / pi1) / machine.energies[i]


def effective_beta(solution: SteadySolution, machine: MachineParams, i: int) -> float:
    return marginal_beta(solution.state, machine, i)


def first_law_residual(q: Sequence[float]) -> float:
    """|Q1 + Q2 + Q3| / max|Q_i|; 0 when every current vanishes."""
    scale = max(abs(x) for x in q)
    if scale == 0:
        return 0.0
    return abs(sum(q)) / scale


def thermo_report(solution: SteadySolution, generator: Optional[Liouvillian] = None) -> ThermoReport:
    machine, baths = solution.w.machine, solution.w.baths
    generator = generator or liouvillian(machine, baths)
    q = heat_currents(solution, generator=generator)
    corrections = interaction_corrections(solution, generator=generator)
    sigma = entropy_production(q, baths)
    try:
        eta = cop(q)
    except UndefinedCOPError:
        eta = math.nan

    ratios = [abs(c) / abs(qi) for c, qi in zip(corrections, q) if qi != 0]
    unit = baths.gamma_unit
    return ThermoReport(
        q_dot=tuple(qi / unit for qi in q),
        cop=eta,
        sigma_dot=sigma / unit,
        beta_eff=tuple(effective_beta(solution, machine, i) for i in range(3)),
        cooling=q[0] >= 0,
        hint_correction=max(ratios) if ratios else 0.0,
        first_law_residual=first_law_residual(q),
        dark_population=solution.dark_population,
    )


def solve(
    machine: MachineParams,
    baths: BathParams,
    initial: Optional[InitialState] = None,
    config: Optional[SolverConfig] = None,
) -> Tuple[SteadySolution, Liouvillian]:
    generator = liouvillian(machine, baths)
    w = reduce_to_w(generator)
    init = initial_state(initial or InitialState(), machine, baths)
    return steady_state(w, init, config=config), generator


def evaluate(
    machine: MachineParams,
    baths: BathParams,
    initial: Optional[InitialState] = None,
    config: Optional[SolverConfig] = None,
) -> Tuple[SteadySolution, ThermoReport]:
    """Liouvillian -> W -> steady state -> report, in one call."""
    solution, generator = solve(machine, baths, initial, config)
    return solution, thermo_report(solution, generator)


# ---------------------------------------------------------------------------
# COP at maximum cooling power
# ---------------------------------------------------------------------------

def default_e1_grid(machine: MachineParams, baths: BathParams, num: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Interior of the cooling window (0, E1_max), endpoints excluded."""
    e_max = cooling_window_max_E1(baths, machine.E2)
    if e_max <= 0:
        raise NoCoolingWindowError(f"cooling window is empty (beta={baths.beta})")
    return np.linspace(0.0, e_max, num + 2)[1:-1]


def _interior_maxima(values: np.ndarray) -> int:
    return int(np.sum((values[1:-1] > values[:-2]) & (values[1:-1] >= values[2:])))


def cop_at_max_power(
    machine: MachineParams,
    baths: BathParams,
    e1_grid: Optional[Sequence[float]] = None,
    initial: Optional[InitialState] = None,
    xtol: float = 1e-6,
) -> MaxPowerPoint:
    """
    Maximize Q1 over E1 at fixed E2: grid scan, then golden-section refinement
    around the best grid point.
    """
    grid = np.asarray(e1_grid if e1_grid is not None else default_e1_grid(machine, baths), dtype=float)
    if grid.size < 3:
        raise NoCoolingWindowError("need at least three grid points inside the cooling window")

    def q1(e1: float) -> float:
        solution, generator = solve(machine.with_e1(e1), baths, initial)
        return heat_currents(solution, generator=generator)[0]

    values = np.array([q1(e) for e in grid])
    k = int(np.argmax(values))
    if values[k] <= 0:
        raise NoCoolingWindowError("no grid point has positive cooling power")
    multimodal = _interior_maxima(values) > 1
    at_edge = k in (0, grid.size - 1)

    e_star = float(grid[k])
    if not at_edge:
        try:
            result = minimize_scalar(
                lambda e: -q1(e),
                bracket=(grid[k - 1], grid[k], grid[k + 1]),
                method="golden",
                options={"xtol": xtol},
            )
            if -result.fun >= values[k]:
                e_star = float(result.x)
        except (ValueError, RuntimeError) as e:
            # scipy rejects ties at the bracket ends
            logger.debug("golden refinement skipped: %s", e)
    if multimodal or at_edge:
        log_event(
            "MAX_POWER_FLAGGED",
            "cooling power scan is not cleanly unimodal",
            level=logging.WARNING,
            multimodal=multimodal,
            at_edge=at_edge,
            alpha=baths.alpha,
        )

    solution, report = evaluate(machine.with_e1(e_star), baths, initial)
    return MaxPowerPoint(
        e1=e_star,
        q1=report.q_dot[0],
        cop=report.cop,
        sigma_dot=report.sigma_dot,
        multimodal=multimodal,
        at_edge=at_edge,
    )
