import numpy as np
import pandas as pd
import pytest

from qfridge.errors import ValidationError
from qfridge.models.run import RunConfig
from qfridge.services import presets
from qfridge.services.presets import (
    CURVE_ALPHAS,
    PRESETS,
    Curve,
    figure_preset,
    preset_configs,
    scan_curves,
)
from qfridge.services.sweep import run_steady
from qfridge.services.verify import REFERENCE_ETA_STAR

# upper end of the cooling window for beta = (1, 0.5, 0.05), E2 = 5
E1_WINDOW = 0.9 * 5.0 / 1.9


def test_curve_tags():
    tags = [c.tag for c in scan_curves()]
    assert tags[:2] == ["alpha0.00", "alpha0.20"]
    assert tags[-2:] == ["alpha1.00_thermal_product", "alpha1.00_dark_orthogonal"]
    assert len(set(tags)) == len(CURVE_ALPHAS) + 2


def test_unknown_preset(tmp_path):
    with pytest.raises(ValidationError):
        figure_preset("fig9", tmp_path)
    with pytest.raises(ValidationError):
        preset_configs("fig9")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_every_preset_solves_its_sweep_corners(name):
    configs = preset_configs(name)
    assert configs
    for config in configs:
        for corner in config.corners():
            assert run_steady(config.at_point(corner)).ok


def test_temperature_map_corners_span_both_ratios():
    (config,) = preset_configs("fig3a")
    betas = [config.at_point(corner).beta for corner in config.corners()]
    assert len(betas) == 4
    assert min(b[1] for b in betas) == pytest.approx(1.0 / 60)
    assert min(b[2] for b in betas) == pytest.approx(1.0 / 3600)
    assert max(b[2] for b in betas) == 1.0


def test_common_bath_enhancement_at_map_point():
    base = dict(e1=0.8, e2=5.0, g=0.01, beta=(1.0, 0.5, 0.05))
    q1 = [run_steady(RunConfig.build(alpha=a, **base)).report.q_dot[0] for a in (0.0, 0.2, 0.8)]
    assert q1[0] < q1[1] < q1[2]
    # the alpha^2 pair channels close a cooling cycle that does not pass through g
    assert q1[2] / q1[0] == pytest.approx(7.88, abs=0.05)


def test_map_axes_cover_unit_interval():
    b2, b3 = presets._map_axes()
    assert b2.num == b3.num == 60
    assert b2.values()[0] == pytest.approx(1.0 / 60)
    assert b2.values()[-1] == 1.0


def test_ratio_sets_share_the_scan_reservoirs():
    assert len(presets.RATIO_SETS) == 3
    for b2, b3, e1, g in presets.RATIO_SETS:
        assert (b2, b3) == presets.SCAN_BETA[1:]
        assert e1 < E1_WINDOW


@pytest.mark.slow
def test_fig2_curves_are_ordered(tmp_path):
    paths = figure_preset("fig2", tmp_path, workers=1)
    assert len(paths) == len(scan_curves())
    frames = {p.stem: pd.read_csv(p) for p in paths}
    window = [f[f["e1"] < E1_WINDOW] for f in frames.values()]
    for lower, upper in zip(window[:5], window[1:6]):
        assert np.all(upper["q1"].to_numpy() >= lower["q1"].to_numpy() - 1e-12)
    thermal = frames["fig2_alpha1.00_thermal_product"]
    orthogonal = frames["fig2_alpha1.00_dark_orthogonal"]
    inside = (thermal["e1"] < E1_WINDOW).to_numpy()
    assert np.all(orthogonal["q1"].to_numpy()[inside] > thermal["q1"].to_numpy()[inside])
    # cooling exactly on the window
    solid = frames["fig2_alpha0.00"]
    assert (solid.loc[solid["e1"] < E1_WINDOW - 0.01, "q1"] > 0).all()
    assert (solid.loc[solid["e1"] > E1_WINDOW + 0.01, "q1"] < 0).all()


@pytest.mark.slow
def test_fig4a_cop_at_max_power(tmp_path):
    paths = figure_preset("fig4a", tmp_path, workers=1)
    table = pd.read_csv(tmp_path / "fig4a_max_power.csv")
    assert len(paths) == len(scan_curves()) + 1
    below_one = table[table["alpha"] < 1.0]
    assert len(below_one) == len(CURVE_ALPHAS)
    expected = below_one["alpha"].map(REFERENCE_ETA_STAR)
    assert np.all(np.abs(below_one["cop_star"] - expected) <= 0.005)
    curve = pd.read_csv(tmp_path / "fig4a_alpha0.00.csv")
    assert (curve["cop"] < 0.9).all()


@pytest.mark.slow
def test_fig3b_enhancement_exceeds_one_where_cooling(tmp_path):
    (path,) = figure_preset("fig3b", tmp_path, workers=1)
    frame = pd.read_csv(path)
    assert len(frame) == 60 * 60
    cooling = frame[(frame["q1"] > 0) & (frame["q1_bar"] > 0)]
    assert len(cooling) > 0
    assert cooling["enhancement"].median() > 1.0
    assert cooling["enhancement"].max() > 1.45


@pytest.mark.slow
def test_fig5a_ratios_stay_close_to_one(tmp_path):
    (path,) = figure_preset("fig5a", tmp_path, workers=1)
    frame = pd.read_csv(path)
    assert set(frame["set"]) == {0, 1, 2}
    ratio = frame.loc[frame["q1_ic"] > 0, "ratio"]
    assert ratio.max() <= 1.003
    assert ratio.min() > 0.99


@pytest.mark.slow
def test_fig5b_thermal_start_gains_almost_nothing(tmp_path):
    (path,) = figure_preset("fig5b", tmp_path, workers=1)
    frame = pd.read_csv(path)
    cooling = frame[(frame["q1"] > 0) & (frame["q1_ic"] > 0)]
    assert len(frame) == 60 * 60
    # coherent never falls below incoherent here
    assert cooling["ratio"].min() >= 1.0 - 1e-9


@pytest.mark.slow
def test_fig5_dark_orthogonal_start_favours_coherent(tmp_path):
    (path,) = figure_preset("fig5c", tmp_path, workers=1)
    frame = pd.read_csv(path)
    cooling = frame[(frame["q1"] > 0) & (frame["q1_ic"] > 0)]
    assert len(frame) == 60 * 60
    assert cooling["ratio"].max() > 1.0


def test_curve_default_initial():
    assert Curve(0.5).initial.value == "thermal_product"
