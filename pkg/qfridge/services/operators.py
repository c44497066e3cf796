# qfridge/services/operators.py
"""
Hamiltonian, jump operators and generators of the three-qubit machine.

Superoperators act on column-stacked density matrices, so
vec(A rho B) = (B^T kron A) vec(rho).
"""

import logging
from functools import reduce
from typing import List, Tuple

import numpy as np

from ..config import get_config
from ..errors import ClosureError
from ..models.operators import BasisConvention, Liouvillian, WMatrix
from ..models.params import BathParams, DissipationModel, MachineParams
from .rates import rates

logger = logging.getLogger(__name__)

DIM = BasisConvention.DIM
LOW = BasisConvention.LOW
HIGH = BasisConvention.HIGH

_I2 = np.eye(2, dtype=complex)
# sigma^- = |0><1|
_SM = np.array([[0, 1], [0, 0]], dtype=complex)

JumpOperator = Tuple[np.ndarray, int]


# ---------------------------------------------------------------------------
# Single-qubit building blocks
# ---------------------------------------------------------------------------

def _on_qubit(op: np.ndarray, qubit: int) -> np.ndarray:
    factors = [_I2, _I2, _I2]
    factors[qubit] = op
    return reduce(np.kron, factors)


def sigma_minus(qubit: int) -> np.ndarray:
    """Lowering operator of qubit 0, 1 or 2 on the 8-dimensional space."""
    return _on_qubit(_SM, qubit)


def sigma_plus(qubit: int) -> np.ndarray:
    return _on_qubit(_SM.conj().T, qubit)


def number(qubit: int) -> np.ndarray:
    return _on_qubit(_SM.conj().T @ _SM, qubit)


def ket(label: str) -> np.ndarray:
    vec = np.zeros(DIM, dtype=complex)
    vec[BasisConvention.index(label)] = 1.0
    return vec


# ---------------------------------------------------------------------------
# Hamiltonians
# ---------------------------------------------------------------------------

def free_hamiltonian(machine: MachineParams) -> np.ndarray:
    """H0 = E1 n1 + E2 n2 + E3 n3."""
    return sum(E * number(k) for k, E in enumerate(machine.energies))


def interaction_hamiltonian(machine: MachineParams) -> np.ndarray:
    """g (|101><010| + |010><101|), exchanging the degenerate pair."""
    low, high = ket("010"), ket("101")
    return machine.g * (np.outer(high, low.conj()) + np.outer(low, high.conj()))


def hamiltonian(machine: MachineParams) -> np.ndarray:
    return free_hamiltonian(machine) + interaction_hamiltonian(machine)


# ---------------------------------------------------------------------------
# Jump operators
# ---------------------------------------------------------------------------

def _pair_flip(bath: int) -> np.ndarray:
    """Two-spin process resonant with qubit `bath`."""
    if bath == 0:
        return sigma_minus(1) @ sigma_plus(2)
    if bath == 1:
        return sigma_minus(0) @ sigma_minus(2)
    return sigma_plus(0) @ sigma_minus(1)


def jump_operators(alpha: float, model: DissipationModel) -> List[JumpOperator]:
    """
    (operator, bath index) pairs; bath index is 0-based.

    COHERENT gives s_i = sigma_i^- + alpha * pair_i, one per bath.
    INCOHERENT_CORRELATED gives sigma_i^- and alpha * pair_i as separate
    channels of the same bath.
    """
    model = DissipationModel(model)
    ops: List[JumpOperator] = []
    for bath in range(3):
        single = sigma_minus(bath)
        pair = alpha * _pair_flip(bath)
        if model is DissipationModel.COHERENT:
            ops.append((single + pair, bath))
        else:
            ops.append((single, bath))
            ops.append((pair, bath))
    return ops


# ---------------------------------------------------------------------------
# Superoperators
# ---------------------------------------------------------------------------

_IDENTITY = np.eye(DIM, dtype=complex)


def spre(op: np.ndarray) -> np.ndarray:
    """rho -> op rho"""
    return np.kron(_IDENTITY, op)


def spost(op: np.ndarray) -> np.ndarray:
    """rho -> rho op"""
    return np.kron(op.T, _IDENTITY)


def commutator(op: np.ndarray) -> np.ndarray:
    """-i [op, rho]"""
    return -1j * (spre(op) - spost(op))


def dissipator(jump: np.ndarray) -> np.ndarray:
    """D[J] rho = J rho J^dag - 1/2 {J^dag J, rho}"""
    jdj = jump.conj().T @ jump
    return np.kron(jump.conj(), jump) - 0.5 * spre(jdj) - 0.5 * spost(jdj)


def bath_dissipators(
    machine: MachineParams, baths: BathParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """L_i = sum over the jumps J of bath i of gamma_down D[J] + gamma_up D[J^dag]."""
    rs = rates(machine, baths)
    parts = [np.zeros((DIM * DIM, DIM * DIM), dtype=complex) for _ in range(3)]
    for jump, bath in jump_operators(baths.alpha, baths.model):
        parts[bath] += rs.gamma_down[bath] * dissipator(jump)
        parts[bath] += rs.gamma_up[bath] * dissipator(jump.conj().T)
    return tuple(parts)


def liouvillian(machine: MachineParams, baths: BathParams) -> Liouvillian:
    parts = bath_dissipators(machine, baths)
    matrix = commutator(hamiltonian(machine)) + sum(parts)
    return Liouvillian(matrix=matrix, dissipators=parts, machine=machine, baths=baths)


def trace_functional() -> np.ndarray:
    """Row vector with <t, vec(rho)> = Tr rho."""
    row = np.zeros(DIM * DIM, dtype=complex)
    for k in range(DIM):
        row[BasisConvention.vec_index(k, k)] = 1.0
    return row


def dark_state() -> np.ndarray:
    """(|010> - |101>)/sqrt(2)"""
    return (ket("010") - ket("101")) / np.sqrt(2.0)


def bright_state() -> np.ndarray:
    """(|010> + |101>)/sqrt(2), orthogonal to the dark state within the pair."""
    return (ket("010") + ket("101")) / np.sqrt(2.0)


# ---------------------------------------------------------------------------
# Ten-coordinate subspace
# ---------------------------------------------------------------------------

def coordinate_basis() -> List[np.ndarray]:
    """
    Density-matrix directions of the ten coordinates.

    rho = sum_k p_k |k><k| + c_R (|a><b| + |b><a|) + c_I i(|a><b| - |b><a|)
    with a = 010, b = 101, so that <a|rho|b> = c_R + i c_I.
    """
    basis = []
    for k in range(DIM):
        m = np.zeros((DIM, DIM), dtype=complex)
        m[k, k] = 1.0
        basis.append(m)
    ab = np.zeros((DIM, DIM), dtype=complex)
    ab[LOW, HIGH] = 1.0
    basis.append(ab + ab.T)
    basis.append(1j * (ab - ab.T))
    return basis


def embed_coordinates(p: np.ndarray) -> np.ndarray:
    """Ten coordinates -> 8x8 density matrix."""
    p = np.asarray(p, dtype=float)
    rho = np.diag(p[:DIM]).astype(complex)
    c = p[BasisConvention.C_R] + 1j * p[BasisConvention.C_I]
    rho[LOW, HIGH] = c
    rho[HIGH, LOW] = np.conj(c)
    return rho


def _excluded_mask() -> np.ndarray:
    mask = ~np.eye(DIM, dtype=bool)
    mask[LOW, HIGH] = False
    mask[HIGH, LOW] = False
    return mask


_EXCLUDED = _excluded_mask()


def project_coordinates(rho: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    8x8 matrix -> (ten coordinates, largest excluded element).

    The excluded magnitude also covers the anti-Hermitian part of the
    retained elements, which the ten real coordinates cannot represent.
    """
    rho = np.asarray(rho, dtype=complex)
    c = rho[LOW, HIGH]
    p = np.concatenate([np.real(np.diag(rho)), [c.real, c.imag]])
    excluded = np.abs(rho[_EXCLUDED])
    lost = [
        np.max(np.abs(np.imag(np.diag(rho)))),
        abs(rho[HIGH, LOW] - np.conj(c)),
    ]
    if excluded.size:
        lost.append(excluded.max())
    return p, float(max(lost))


def reduce_to_w(L: Liouvillian) -> WMatrix:
    """
    Project the Liouvillian onto the ten coordinates.

    Column j of W is the projection of L applied to the j-th coordinate
    direction; the projection must not leak into excluded coherences.
    """
    tol = get_config().CLOSURE_TOL * max(np.linalg.norm(L.matrix, 2), 1.0)
    columns = []
    leak = 0.0
    for direction in coordinate_basis():
        p, lost = project_coordinates(L.apply(direction))
        columns.append(p)
        leak = max(leak, lost)
    if leak > tol:
        raise ClosureError(
            f"ten-coordinate projection is not closed: leakage {leak:.3e} > {tol:.3e} "
            f"(model={L.model.value}, alpha={L.alpha})"
        )
    logger.debug("reduced generator built (alpha=%s, model=%s)", L.alpha, L.model.value)
    return WMatrix(matrix=np.column_stack(columns), machine=L.machine, baths=L.baths)


def w_matrix(machine: MachineParams, baths: BathParams) -> WMatrix:
    return reduce_to_w(liouvillian(machine, baths))


def relaxation_rates(w: WMatrix) -> np.ndarray:
    """|Re lambda| of the eigenvalues of W, ascending."""
    return np.sort(np.abs(np.real(np.linalg.eigvals(w.matrix))))


def spectral_gap(w: WMatrix) -> float:
    """Slowest non-zero relaxation rate of W."""
    rtol = get_config().KERNEL_RTOL
    rates_ = relaxation_rates(w)
    nonzero = rates_[rates_ > rtol * max(w.norm, 1.0)]
    if nonzero.size == 0:
        return 0.0
    return float(nonzero[0])
