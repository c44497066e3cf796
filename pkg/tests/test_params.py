import math

import pytest

from qfridge.errors import DomainError, NoCoolingWindowError, UndefinedBoundError, ValidationError
from qfridge.models.params import BathParams, DissipationModel, MachineParams, WeakCouplingWarning
from qfridge.services.rates import carnot_cop, cooling_window_max_E1, rates, thermal_occupation


def test_e3_follows_resonance():
    m = MachineParams(E1=0.8, E2=5.0)
    assert m.E3 == pytest.approx(4.2)
    assert m.energies == (0.8, 5.0, pytest.approx(4.2))
    assert m.with_e1(1.5).E3 == pytest.approx(3.5)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"E1": 0.0, "E2": 5.0},
        {"E1": 2.0, "E2": 1.0},
        {"E1": 1.0, "E2": 5.0, "g": -0.1},
        {"E1": math.nan, "E2": 5.0},
    ],
)
def test_invalid_machine_rejected(kwargs):
    with pytest.raises(ValidationError):
        MachineParams(**kwargs)


def test_strong_exchange_warns_but_builds():
    with pytest.warns(WeakCouplingWarning):
        m = MachineParams(E1=0.05, E2=5.0, g=0.01)
    assert m.g == 0.01


@pytest.mark.parametrize(
    "kwargs",
    [
        {"beta": (1.0, 2.0, 0.05)},
        {"beta": (1.0, 0.5, 0.0)},
        {"beta": (1.0, 0.5)},
        {"beta": (1.0, 0.5, 0.05), "alpha": 1.2},
        {"beta": (1.0, 0.5, 0.05), "gamma0": (0.01, 0.0, 0.01)},
    ],
)
def test_invalid_baths_rejected(kwargs):
    with pytest.raises(ValidationError):
        BathParams(**kwargs)


def test_dark_state_only_for_coherent_common_bath():
    b = BathParams(beta=(1.0, 0.5, 0.05), alpha=1.0)
    assert b.has_dark_state
    assert not b.replace(alpha=0.99).has_dark_state
    assert not b.replace(model=DissipationModel.INCOHERENT_CORRELATED).has_dark_state


def test_model_accepts_string_value():
    b = BathParams(beta=(1.0, 0.5, 0.05), model="incoherent_correlated")
    assert b.model is DissipationModel.INCOHERENT_CORRELATED


def test_thermal_occupation():
    assert thermal_occupation(1.0, math.log(2.0)) == pytest.approx(1.0)
    # large beta*E underflows to zero rather than overflowing
    assert thermal_occupation(1.0, 1000.0) == 0.0
    with pytest.raises(DomainError):
        thermal_occupation(1.0, 0.0)
    with pytest.raises(DomainError):
        thermal_occupation(-1.0, 1.0)


def test_rates_obey_detailed_balance(machine, baths):
    rs = rates(machine, baths)
    for i, (b, E) in enumerate(zip(baths.beta, machine.energies)):
        assert rs.gamma_down[i] / rs.gamma_up[i] == pytest.approx(math.exp(b * E), rel=1e-12)
        assert rs.gamma_down[i] - rs.gamma_up[i] == pytest.approx(baths.gamma0[i], rel=1e-12)
        assert rs.total(i) == pytest.approx(rs.gamma_up[i] + rs.gamma_down[i])


def test_carnot_cop(baths):
    assert carnot_cop(baths) == pytest.approx(0.9, abs=1e-12)
    with pytest.raises(UndefinedBoundError):
        carnot_cop(BathParams(beta=(1.0, 1.0, 0.5)))


def test_cooling_window(baths):
    assert cooling_window_max_E1(baths, 5.0) == pytest.approx(0.9 * 5.0 / 1.9)
    assert cooling_window_max_E1(BathParams(beta=(1.0, 0.5, 0.5)), 5.0) == 0.0
    with pytest.raises(DomainError):
        cooling_window_max_E1(baths, 0.0)


def test_domain_errors_are_validation_errors():
    assert issubclass(NoCoolingWindowError, ValidationError)
    assert NoCoolingWindowError.exit_code == 1
