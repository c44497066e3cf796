# qfridge/services/dynamics.py

import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy import linalg
from scipy.integrate import solve_ivp
from scipy.special import expit

from ..config import SolverConfig, get_config
from ..errors import DegeneracyError, PositivityError, SolverError, StiffnessError, ValidationError
from ..models.operators import BasisConvention, Liouvillian, WMatrix
from ..models.params import BathParams, MachineParams
from ..models.states import (
    InitialKind,
    InitialState,
    ReducedState,
    SteadySolution,
    Trajectory,
)
from ..utils.helpers import qubit_bits
from .event_logger import log_event
from .operators import (
    dark_state,
    embed_coordinates,
    project_coordinates,
    spectral_gap,
    trace_functional,
)

logger = logging.getLogger(__name__)

DIM = BasisConvention.DIM
LOW = BasisConvention.LOW
HIGH = BasisConvention.HIGH


# ---------------------------------------------------------------------------
# State conversion
# ---------------------------------------------------------------------------

def embed(p: ReducedState) -> np.ndarray:
    """Ten coordinates -> 8x8 density matrix with all other coherences zero."""
    return embed_coordinates(p.array)


def project(rho: np.ndarray) -> Tuple[ReducedState, float]:
    """8x8 density matrix -> (ten coordinates, largest discarded element)."""
    p, excluded = project_coordinates(rho)
    return ReducedState.from_array(p, validate=False), excluded


def dark_population_row() -> np.ndarray:
    """Row vector r with r . p = (p010 + p101)/2 - c_R."""
    row = np.zeros(10)
    row[LOW] = 0.5
    row[HIGH] = 0.5
    row[BasisConvention.C_R] = -1.0
    return row


def trace_row() -> np.ndarray:
    row = np.zeros(10)
    row[:DIM] = 1.0
    return row


# ---------------------------------------------------------------------------
# Initial states
# ---------------------------------------------------------------------------

def thermal_populations(machine: MachineParams, baths: BathParams) -> np.ndarray:
    """Populations of the product of the qubits' local Gibbs states."""
    excited = [expit(-b * E) for b, E in zip(baths.beta, machine.energies)]
    pops = np.empty(DIM)
    for k in range(DIM):
        pops[k] = np.prod([e if bit else 1.0 - e for bit, e in zip(qubit_bits(k), excited)])
    return pops


def initial_state(
    kind: Union[InitialState, InitialKind, str],
    machine: MachineParams,
    baths: BathParams,
) -> ReducedState:
    if not isinstance(kind, InitialState):
        kind = InitialState(kind=InitialKind(kind))

    if kind.kind is InitialKind.CUSTOM:
        return kind.custom.validate()

    p = np.zeros(10)
    p[:DIM] = thermal_populations(machine, baths)
    if kind.kind is InitialKind.DARK_ORTHOGONAL:
        # pair block -> (p010 + p101) |psi_+><psi_+|, which annihilates psi_D
        half = 0.5 * (p[LOW] + p[HIGH])
        p[LOW] = p[HIGH] = half
        p[BasisConvention.C_R] = half
    return ReducedState.from_array(p)


# ---------------------------------------------------------------------------
# Steady states
# ---------------------------------------------------------------------------

def _kernel(matrix: np.ndarray, rtol: float) -> Tuple[np.ndarray, np.ndarray]:
    """(right singular vectors spanning the numerical kernel, singular values)"""
    _, s, vh = linalg.svd(matrix)
    tol = rtol * s[0] if s[0] > 0 else rtol
    nnz = int((s >= tol).sum())
    return vh[nnz:].conj().T, s


def _as_state(p: np.ndarray) -> ReducedState:
    try:
        return ReducedState.from_array(p)
    except ValidationError as e:
        raise PositivityError(f"steady state is not a valid density matrix: {e}") from e


def steady_state(
    w: WMatrix,
    init: Optional[ReducedState] = None,
    config: Optional[SolverConfig] = None,
) -> SteadySolution:
    """
    Stationary solution of dp/dt = W p.

    With a dark state (alpha = 1, coherent model) the kernel is
    two-dimensional and the solution is pinned by the dark population of
    `init` (thermal product state by default); otherwise `init` is ignored.
    """
    config = config or get_config()
    kernel, s = _kernel(w.matrix, config.KERNEL_RTOL)
    nullity = kernel.shape[1]
    expected = 2 if w.baths.has_dark_state else 1
    if nullity != expected:
        spectrum = np.linalg.eigvals(w.matrix)
        raise DegeneracyError(
            f"kernel of W has dimension {nullity}, expected {expected} "
            f"(alpha={w.alpha}, model={w.model.value}, smallest singular value {s[-1]:.3e})",
            spectrum=spectrum,
        )

    bound = config.STEADY_RESIDUAL * w.norm
    if expected == 1:
        v = np.real(kernel[:, 0])
        p = v / v[:DIM].sum()
        residual = float(np.linalg.norm(w.matrix @ p))
        if not residual <= bound:
            raise SolverError(
                f"steady state residual {residual:.3e} exceeds {bound:.3e} "
                f"(alpha={w.alpha}, model={w.model.value})"
            )
        return SteadySolution(
            state=_as_state(p), residual=residual, kernel_dimension=nullity, w=w
        )

    if init is None:
        init = initial_state(InitialKind.THERMAL_PRODUCT, w.machine, w.baths)
    target = init.dark_population
    a = np.vstack([w.matrix, trace_row(), dark_population_row()])
    b = np.zeros(a.shape[0])
    b[-2] = 1.0
    b[-1] = target
    p, _, rank, _ = linalg.lstsq(a, b)
    residual = float(np.linalg.norm(w.matrix @ p))

    if rank < a.shape[1] or residual > bound:
        log_event(
            "STEADY_FALLBACK",
            "constrained steady-state solve is ill-conditioned, integrating instead",
            level=logging.WARNING,
            rank=int(rank),
            residual=residual,
            alpha=w.alpha,
        )
        trajectory = integrate(w, init, config=config, samples=2)
        p = trajectory.states[-1]
        return SteadySolution(
            state=_as_state(p),
            residual=float(np.linalg.norm(w.matrix @ p)),
            kernel_dimension=nullity,
            w=w,
            used_fallback=True,
        )

    return SteadySolution(state=_as_state(p), residual=residual, kernel_dimension=nullity, w=w)


def _dark_projector_row() -> np.ndarray:
    """Row vector r with r . vec(rho) = <psi_D|rho|psi_D>."""
    psi = dark_state()
    projector = np.outer(psi, psi.conj())
    return projector.T.reshape(-1, order="F")


def steady_state_full(
    L: Liouvillian,
    init: Optional[Union[np.ndarray, ReducedState]] = None,
    config: Optional[SolverConfig] = None,
) -> np.ndarray:
    """
    Stationary 8x8 density matrix from the kernel of the full generator.

    A degenerate kernel is resolved with the same trace and dark-population
    constraints as steady_state(); `init` supplies the dark population.
    """
    config = config or get_config()
    kernel, s = _kernel(L.matrix, config.KERNEL_RTOL)
    nullity = kernel.shape[1]
    if nullity == 0:
        raise DegeneracyError(
            f"Liouvillian has no kernel (smallest singular value {s[-1]:.3e})",
            spectrum=np.linalg.eigvals(L.matrix),
        )

    if nullity == 1:
        vec = kernel[:, 0]
    else:
        if init is None:
            raise DegeneracyError(
                f"Liouvillian kernel has dimension {nullity}; an initial state is needed "
                "to fix the conserved dark population",
                spectrum=np.linalg.eigvals(L.matrix),
            )
        rho0 = embed(init) if isinstance(init, ReducedState) else np.asarray(init, dtype=complex)
        dark_row = _dark_projector_row()
        target = np.real(dark_row @ rho0.reshape(-1, order="F"))
        a = np.vstack([L.matrix, trace_functional(), dark_row])
        b = np.zeros(a.shape[0], dtype=complex)
        b[-2] = 1.0
        b[-1] = target
        vec, *_ = linalg.lstsq(a, b)

    rho = vec.reshape(DIM, DIM, order="F")
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    lowest = float(np.linalg.eigvalsh(rho)[0])
    if lowest < -config.PSD_TOL:
        raise PositivityError(f"kernel density matrix has eigenvalue {lowest:.3e}")
    return rho


# ---------------------------------------------------------------------------
# Transients
# ---------------------------------------------------------------------------

def integrate(
    w: WMatrix,
    p0: ReducedState,
    t_max: Optional[float] = None,
    rel_tol: Optional[float] = None,
    samples: int = 201,
    config: Optional[SolverConfig] = None,
) -> Trajectory:
    """
    Solve dp/dt = W p with an embedded explicit Runge-Kutta pair.

    t_max defaults to GAP_HORIZON / spectral_gap(w), long enough for the
    slowest mode to have decayed.
    """
    config = config or get_config()
    gap = spectral_gap(w)
    if t_max is None:
        if gap <= 0:
            raise StiffnessError("W has no decaying mode; give t_max explicitly", spectral_gap=gap)
        t_max = config.GAP_HORIZON / gap
    if not t_max > 0:
        raise ValidationError(f"t_max must be positive, got {t_max}")

    matrix = np.asarray(w.matrix)
    times = np.linspace(0.0, t_max, samples)
    sol = solve_ivp(
        lambda _t, y: matrix @ y,
        (0.0, t_max),
        p0.array,
        method=config.METHOD,
        t_eval=times,
        rtol=rel_tol if rel_tol is not None else config.REL_TOL,
        atol=config.ABS_TOL,
    )
    if not sol.success:
        raise StiffnessError(
            f"integration stopped at t={sol.t[-1] if sol.t.size else 0.0:.6g}: {sol.message}",
            spectral_gap=gap,
        )
    logger.debug("integrated %d samples to t=%.6g (gap %.3e)", samples, t_max, gap)
    return Trajectory(times=sol.t, states=sol.y.T, spectral_gap=gap)


def propagate(w: WMatrix, p0: ReducedState, t: float) -> np.ndarray:
    """exp(W t) p0"""
    return linalg.expm(w.matrix * t) @ p0.array


def propagate_full(L: Liouvillian, rho0: np.ndarray, t: float) -> np.ndarray:
    """exp(L t) applied to an 8x8 density matrix."""
    vec = linalg.expm(L.matrix * t) @ np.asarray(rho0, dtype=complex).reshape(-1, order="F")
    return vec.reshape(DIM, DIM, order="F")
