# qfridge/models/operators.py
"""
Matrix containers produced by services.operators.

Arrays stored here are made read-only on construction so the containers
behave as value objects and can be shared between sweep workers.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..utils.helpers import basis_index, basis_label
from .params import BathParams, DissipationModel, MachineParams


class BasisConvention:
    """
    Fixed map between |q1 q2 q3> labels and matrix indices.

    Binary with qubit 1 most significant: |000> -> 0, |001> -> 1, ..., |111> -> 7.
    Density matrices are vectorized by stacking columns: element (r, c) of an
    8x8 matrix sits at index r + 8 c.
    """
    DIM = 8
    LABELS: Tuple[str, ...] = tuple(basis_label(i) for i in range(DIM))

    # degenerate pair coupled by the interaction Hamiltonian
    LOW = basis_index("010")
    HIGH = basis_index("101")

    # ordered coordinates of the reduced dynamics
    COORDINATES: Tuple[str, ...] = tuple(f"p{label}" for label in LABELS) + ("c_R", "c_I")
    C_R = 8
    C_I = 9

    @classmethod
    def index(cls, label: str) -> int:
        return basis_index(label)

    @classmethod
    def label(cls, index: int) -> str:
        return basis_label(index)

    @classmethod
    def vec_index(cls, row: int, col: int) -> int:
        return row + cls.DIM * col

    @classmethod
    def coordinate(cls, name: str) -> int:
        return cls.COORDINATES.index(name)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Liouvillian:
    """
    64x64 generator acting on column-stacked density matrices.

    `dissipators` holds the three per-reservoir parts L_i; `matrix` equals
    the coherent part plus their sum.
    """
    matrix: np.ndarray
    dissipators: Tuple[np.ndarray, np.ndarray, np.ndarray]
    machine: MachineParams
    baths: BathParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _frozen(self.matrix))
        object.__setattr__(self, "dissipators", tuple(_frozen(d) for d in self.dissipators))

    @property
    def alpha(self) -> float:
        return self.baths.alpha

    @property
    def model(self) -> DissipationModel:
        return self.baths.model

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """L(rho) for an 8x8 density matrix, returned as an 8x8 matrix."""
        vec = np.asarray(rho, dtype=complex).reshape(-1, order="F")
        return (self.matrix @ vec).reshape(BasisConvention.DIM, BasisConvention.DIM, order="F")

    def apply_bath(self, i: int, rho: np.ndarray) -> np.ndarray:
        """L_i(rho) for reservoir i (0-based)."""
        vec = np.asarray(rho, dtype=complex).reshape(-1, order="F")
        out = self.dissipators[i] @ vec
        return out.reshape(BasisConvention.DIM, BasisConvention.DIM, order="F")


@dataclass(frozen=True, eq=False)
class WMatrix:
    """10x10 real generator over (p000, ..., p111, c_R, c_I)."""
    matrix: np.ndarray
    machine: MachineParams
    baths: BathParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _frozen(np.asarray(self.matrix, dtype=float)))

    @property
    def alpha(self) -> float:
        return self.baths.alpha

    @property
    def model(self) -> DissipationModel:
        return self.baths.model

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))

    def entry(self, row: str, col: str) -> float:
        return float(
            self.matrix[BasisConvention.coordinate(row), BasisConvention.coordinate(col)]
        )

    def as_dict(self) -> Dict[str, Dict[str, float]]:
        names = BasisConvention.COORDINATES
        return {
            r: {c: float(self.matrix[i, j]) for j, c in enumerate(names)}
            for i, r in enumerate(names)
        }
