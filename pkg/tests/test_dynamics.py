import numpy as np
import pytest

from qfridge.config import SolverConfig
from qfridge.errors import DegeneracyError, SolverError, ValidationError
from qfridge.models.params import BathParams, DissipationModel
from qfridge.models.states import InitialKind, InitialState, ReducedState
from qfridge.services.dynamics import (
    embed,
    initial_state,
    integrate,
    project,
    propagate,
    propagate_full,
    steady_state,
    steady_state_full,
    thermal_populations,
)
from qfridge.services.operators import liouvillian, reduce_to_w


def test_thermal_product_state(machine, baths):
    p = initial_state(InitialKind.THERMAL_PRODUCT, machine, baths)
    assert p.trace == pytest.approx(1.0)
    assert p.c_R == 0.0 and p.c_I == 0.0
    # ground state is the most populated one
    assert int(np.argmax(p.populations)) == 0


def test_dark_orthogonal_state_has_no_dark_population(machine, baths):
    thermal = initial_state("thermal_product", machine, baths)
    p = initial_state(InitialKind.DARK_ORTHOGONAL, machine, baths)
    assert p.dark_population == pytest.approx(0.0, abs=1e-15)
    assert p.trace == pytest.approx(1.0)
    pair = thermal.values[2] + thermal.values[5]
    assert p.values[2] == pytest.approx(pair / 2)
    assert p.c_R == pytest.approx(pair / 2)


def test_custom_initial_state(machine, baths):
    values = (0.5, 0.1, 0.1, 0.1, 0.1, 0.05, 0.05, 0.0, 0.0, 0.0)
    p = initial_state(InitialState(InitialKind.CUSTOM, ReducedState(values)), machine, baths)
    assert p.values == values
    with pytest.raises(ValidationError):
        InitialState(InitialKind.CUSTOM)


@pytest.mark.parametrize(
    "values",
    [
        (0.5, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.0, 0.0),
        (1.2, -0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        (0.4, 0.0, 0.3, 0.0, 0.0, 0.3, 0.0, 0.0, 0.31, 0.0),
    ],
)
def test_invalid_reduced_states(values):
    with pytest.raises(ValidationError):
        ReducedState.from_array(values)


def test_embed_and_project(machine, baths):
    p = initial_state(InitialKind.DARK_ORTHOGONAL, machine, baths)
    rho = embed(p)
    assert np.allclose(rho, rho.conj().T)
    assert np.linalg.eigvalsh(rho).min() > -1e-15
    back, excluded = project(rho)
    assert excluded == 0.0
    assert np.allclose(back.array, p.array)


@pytest.mark.parametrize("model", list(DissipationModel))
@pytest.mark.parametrize("alpha", [0.0, 0.5, 0.99])
def test_steady_state_is_stationary(make_w, model, alpha):
    w = make_w(alpha, model)
    solution = steady_state(w)
    assert solution.kernel_dimension == 1
    assert solution.state.trace == pytest.approx(1.0, abs=1e-12)
    assert solution.residual < 1e-10 * w.norm
    assert not solution.used_fallback


def test_equal_temperatures_give_gibbs_product(machine):
    baths = BathParams(beta=(1.0, 1.0, 1.0), alpha=0.5)
    solution = steady_state(reduce_to_w(liouvillian(machine, baths)))
    assert np.allclose(solution.state.populations, thermal_populations(machine, baths), atol=1e-10)
    assert abs(solution.state.c_R) < 1e-10
    assert abs(solution.state.c_I) < 1e-10


def test_dark_population_selects_steady_state(make_w, machine):
    w = make_w(1.0)
    baths = w.baths
    thermal = initial_state(InitialKind.THERMAL_PRODUCT, machine, baths)
    orthogonal = initial_state(InitialKind.DARK_ORTHOGONAL, machine, baths)

    a = steady_state(w, thermal)
    b = steady_state(w, orthogonal)
    assert a.kernel_dimension == 2
    assert a.dark_population == pytest.approx(thermal.dark_population, abs=1e-10)
    assert b.dark_population == pytest.approx(0.0, abs=1e-10)
    assert not np.allclose(a.state.array, b.state.array)
    # the default pins the thermal product's dark population
    assert np.allclose(steady_state(w).state.array, a.state.array)


def test_incoherent_model_has_no_dark_state(make_w):
    solution = steady_state(make_w(1.0, DissipationModel.INCOHERENT_CORRELATED))
    assert solution.kernel_dimension == 1


@pytest.mark.parametrize(
    "alpha,model",
    [
        (0.0, DissipationModel.COHERENT),
        (0.6, DissipationModel.COHERENT),
        (0.6, DissipationModel.INCOHERENT_CORRELATED),
        (1.0, DissipationModel.INCOHERENT_CORRELATED),
    ],
)
def test_reduced_and_full_steady_states_agree(machine, alpha, model):
    baths = BathParams(beta=(1.0, 0.5, 0.05), alpha=alpha, model=model)
    L = liouvillian(machine, baths)
    reduced = steady_state(reduce_to_w(L))
    full, excluded = project(steady_state_full(L))
    assert excluded < 1e-10
    assert np.abs(reduced.state.array - full.array).max() < 1e-9


@pytest.mark.parametrize("kind", [InitialKind.THERMAL_PRODUCT, InitialKind.DARK_ORTHOGONAL])
def test_full_steady_state_with_dark_state(machine, kind):
    baths = BathParams(beta=(1.0, 0.5, 0.05), alpha=1.0)
    L = liouvillian(machine, baths)
    init = initial_state(kind, machine, baths)
    reduced = steady_state(reduce_to_w(L), init)
    full, _ = project(steady_state_full(L, init))
    assert np.abs(reduced.state.array - full.array).max() < 1e-9


def test_full_steady_state_needs_initial_state_for_dark_kernel(machine):
    L = liouvillian(machine, BathParams(beta=(1.0, 0.5, 0.05), alpha=1.0))
    with pytest.raises(DegeneracyError):
        steady_state_full(L)


def test_transient_relaxes_to_steady_state(make_w, machine):
    w = make_w(0.5)
    p0 = initial_state(InitialKind.THERMAL_PRODUCT, machine, w.baths)
    trajectory = integrate(w, p0, samples=11)
    assert len(trajectory) == 11
    assert trajectory.times[0] == 0.0
    assert np.abs(trajectory.traces() - 1.0).max() < 1e-9
    assert np.abs(trajectory.final.array - steady_state(w).state.array).max() < 1e-7


def test_transient_conserves_dark_population(make_w, machine):
    w = make_w(1.0)
    p0 = initial_state(InitialKind.THERMAL_PRODUCT, machine, w.baths)
    trajectory = integrate(w, p0, samples=21)
    assert np.abs(trajectory.dark_populations() - p0.dark_population).max() < 1e-9
    frame = trajectory.to_frame()
    assert list(frame.columns[:2]) == ["t", "p000"]
    assert {"p_D", "trace"} <= set(frame.columns)


@pytest.mark.parametrize(
    "alpha, kind",
    [
        (0.0, InitialKind.THERMAL_PRODUCT),
        (0.5, InitialKind.THERMAL_PRODUCT),
        (0.5, InitialKind.DARK_ORTHOGONAL),
        (1.0, InitialKind.THERMAL_PRODUCT),
    ],
)
def test_every_transient_sample_is_a_valid_state(make_w, machine, alpha, kind):
    w = make_w(alpha)
    p0 = initial_state(kind, machine, w.baths)
    trajectory = integrate(w, p0, samples=41)
    for k in range(len(trajectory)):
        trajectory.state_at(k).validate()


def test_steady_state_enforces_residual_bound(make_w):
    w = make_w(0.5)
    with pytest.raises(SolverError, match="residual"):
        steady_state(w, config=SolverConfig(STEADY_RESIDUAL=1e-300))


def test_transient_rejects_bad_horizon(make_w, machine):
    w = make_w(0.0)
    p0 = initial_state(InitialKind.THERMAL_PRODUCT, machine, w.baths)
    with pytest.raises(ValidationError):
        integrate(w, p0, t_max=-1.0)


@pytest.mark.parametrize("alpha", [0.3, 1.0])
def test_propagation_matches_full_generator(machine, alpha):
    baths = BathParams(beta=(1.0, 0.5, 0.05), alpha=alpha)
    L = liouvillian(machine, baths)
    w = reduce_to_w(L)
    p0 = initial_state(InitialKind.DARK_ORTHOGONAL, machine, baths)
    t = 20.0 / baths.gamma_unit
    full, _ = project(propagate_full(L, embed(p0), t))
    assert np.abs(propagate(w, p0, t) - full.array).max() < 1e-9


def test_any_start_without_dark_population_reaches_same_state(make_w, machine):
    w = make_w(1.0)
    custom = ReducedState.from_array([0.4, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.0, 0.1, 0.0])
    assert custom.dark_population == pytest.approx(0.0, abs=1e-15)
    orthogonal = initial_state(InitialKind.DARK_ORTHOGONAL, machine, w.baths)
    a = steady_state(w, custom).state.array
    b = steady_state(w, orthogonal).state.array
    assert np.abs(a - b).max() < 1e-10
