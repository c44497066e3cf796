import numpy as np
import pytest

from qfridge.models.params import BathParams, DissipationModel, MachineParams
from qfridge.services.operators import liouvillian, reduce_to_w

# reservoirs with eta_C = 0.9
REFERENCE_BETA = (1.0, 0.5, 0.05)


@pytest.fixture
def machine() -> MachineParams:
    return MachineParams(E1=0.8, E2=5.0, g=0.005)


@pytest.fixture
def baths() -> BathParams:
    return BathParams(beta=REFERENCE_BETA)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def make_w(machine):
    """W for the reference machine at a given alpha and model."""

    def _make(alpha=0.0, model=DissipationModel.COHERENT, beta=REFERENCE_BETA, m=None):
        b = BathParams(beta=beta, alpha=alpha, model=model)
        return reduce_to_w(liouvillian(m or machine, b))

    return _make
