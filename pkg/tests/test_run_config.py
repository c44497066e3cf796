import json

import pytest

from qfridge.config import get_config
from qfridge.errors import ValidationError
from qfridge.models.params import DissipationModel
from qfridge.models.run import RESULT_COLUMNS, ResultRow, RunConfig, SweepAxis
from qfridge.models.states import InitialKind


def test_defaults_build_params():
    config = RunConfig.build()
    assert config.machine().E3 == pytest.approx(4.2)
    assert config.baths().beta == (1.0, 0.5, 0.05)
    assert config.initial_spec().kind is InitialKind.THERMAL_PRODUCT


@pytest.mark.parametrize(
    "data",
    [
        {"colour": "blue"},
        {"beta": (1.0, 2.0, 0.05)},
        {"e1": 6.0},
        {"alpha": 1.5},
        {"model": "quantum"},
        {"initial": "custom"},
        {"samples": 1},
    ],
)
def test_invalid_config_rejected(data):
    with pytest.raises(ValidationError):
        RunConfig.build(**data)


def test_custom_state_from_config():
    values = [0.5, 0.1, 0.1, 0.1, 0.1, 0.05, 0.05, 0.0, 0.0, 0.0]
    config = RunConfig.build(initial="custom", custom_state=values)
    assert config.initial_spec().custom.values == tuple(values)


def test_from_file_with_overrides(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"e1": 1.2, "alpha": 0.3, "model": "incoherent_correlated"}))
    config = RunConfig.from_file(str(path), alpha=0.7, g=None)
    assert config.e1 == 1.2
    assert config.alpha == 0.7
    assert config.g == 0.005
    assert config.model is DissipationModel.INCOHERENT_CORRELATED


def test_from_file_errors(tmp_path):
    with pytest.raises(ValidationError):
        RunConfig.from_file(str(tmp_path / "missing.json"))
    path = tmp_path / "list.json"
    path.write_text("[1, 2]")
    with pytest.raises(ValidationError):
        RunConfig.from_file(str(path))


def test_solver_overrides_fall_back_to_global():
    base = get_config()
    solver = RunConfig.build(kernel_rtol=1e-8).solver_config()
    assert solver.KERNEL_RTOL == 1e-8
    assert solver.REL_TOL == base.REL_TOL
    assert solver.METHOD == base.METHOD


def test_sweep_axis_from_step():
    axis = SweepAxis.from_step("e1", 0.05, 3.0, 0.01)
    assert axis.num == 296
    values = axis.values()
    assert values[0] == 0.05 and values[-1] == 3.0
    with pytest.raises(ValidationError):
        SweepAxis.from_step("e1", 0.0, 1.0, 0.0)


def test_sweep_validation():
    axis = SweepAxis(name="alpha", start=0.0, stop=0.9, num=4)
    with pytest.raises(ValidationError):
        RunConfig.build(sweep=(axis, axis))
    with pytest.raises(ValidationError):
        RunConfig.build(sweep=(SweepAxis(name="e1", start=0.5, stop=6.0, num=3),))
    with pytest.raises(ValidationError):
        RunConfig.build(
            sweep=(
                axis,
                SweepAxis(name="g", start=0.0, stop=0.01, num=2),
                SweepAxis(name="e1", start=0.5, stop=1.0, num=2),
            )
        )


def test_grid_is_cartesian_first_axis_slowest():
    config = RunConfig.build(
        sweep=(
            SweepAxis(name="alpha", start=0.0, stop=0.5, num=2),
            SweepAxis(name="e1", start=0.5, stop=1.5, num=3),
        )
    )
    grid = config.grid()
    assert len(grid) == 6
    assert grid[0] == {"alpha": 0.0, "e1": 0.5}
    assert grid[1] == {"alpha": 0.0, "e1": 1.0}
    assert grid[-1] == {"alpha": 0.5, "e1": 1.5}
    assert RunConfig.build().grid() == [{}]


def test_temperature_ratios_apply_in_order():
    config = RunConfig.build().at_point({"beta3_ratio": 0.5, "beta2_ratio": 0.4})
    assert config.beta == pytest.approx((1.0, 0.4, 0.2))
    assert config.sweep == ()


def test_result_row_columns():
    config = RunConfig.build(alpha=0.2)
    row = ResultRow(params=ResultRow.params_of(config), error="SolverError: boom")
    data = row.to_dict()
    assert list(data) == list(RESULT_COLUMNS)
    assert not row.ok
    assert data["alpha"] == 0.2 and data["model"] == "coherent"
    assert data["e3"] == pytest.approx(4.2)


def test_temperature_ratio_sweep_checks_corners_together():
    b2 = SweepAxis(name="beta2_ratio", start=1.0 / 60, stop=1.0, num=60)
    b3 = SweepAxis(name="beta3_ratio", start=1.0 / 60, stop=1.0, num=60)
    config = RunConfig.build(sweep=(b2, b3))
    corners = config.corners()
    assert len(corners) == 4
    assert {c["beta2_ratio"] for c in corners} == {1.0 / 60, 1.0}
    for corner in corners:
        beta = config.at_point(corner).beta
        assert beta[0] >= beta[1] >= beta[2] > 0
    # alone, the beta2 ratio pushes beta2 below the fixed beta3 = 0.05
    with pytest.raises(ValidationError):
        RunConfig.build(sweep=(b2,))
