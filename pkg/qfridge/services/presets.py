# qfridge/services/presets.py
"""
Named datasets for re-plotting the standard results.

Every preset writes one CSV per curve or panel into the output directory and
returns the written paths. Column schemas:

  fig2_*        run_sweep columns over the e1 axis
  fig3a, fig3c  run_sweep columns over (beta2_ratio, beta3_ratio), alpha = 0
  fig3b         beta2_ratio, beta3_ratio, q1, q1_bar, enhancement
  fig3d         beta2_ratio, beta3_ratio, beta1_eff, beta1_eff_bar, enhancement
  fig4a_*       alpha, initial, e1, q1, cop           (parametric in e1)
  fig4b_*       alpha, initial, e1, q1, sigma_dot     (parametric in e1)
  fig4a_max_power  alpha, initial, e1_star, q1_star, cop_star, sigma_dot_star, multimodal, at_edge
  fig4b_inset      same columns as fig4a_max_power on a finer alpha grid
  fig5a         set, beta2, beta3, e1, g, alpha, q1, q1_ic, ratio
  fig5b, fig5c  beta2_ratio, beta3_ratio, q1, q1_ic, ratio   (alpha = 1)
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..errors import ValidationError
from ..models.params import DissipationModel
from ..models.run import RunConfig, SweepAxis
from ..models.states import InitialKind
from .rates import cooling_window_max_E1
from .sweep import run_sweep, write_csv
from .thermo import cop_at_max_power

logger = logging.getLogger(__name__)

# Reservoirs of the E1 scans: beta2 = 0.5 beta1, beta3 = 0.05 beta1 (eta_C = 0.9)
SCAN_BETA = (1.0, 0.5, 0.05)
SCAN_E2 = 5.0
SCAN_G = 0.005
GAMMA0 = 0.01

# Solid curves use these alphas; alpha = 1 is run once per initial state
CURVE_ALPHAS = (0.0, 0.2, 0.4, 0.6, 0.8, 0.99)
DARK_INITIALS = (InitialKind.THERMAL_PRODUCT, InitialKind.DARK_ORTHOGONAL)

# E1 scan range and step; covers the cooling window and part of the heating tail
E1_START, E1_STOP, E1_STEP = 0.05, 3.0, 0.01

# Temperature maps: E1 = 0.8 and g = 0.01 on a 60 x 60 grid of ratios in (0, 1]
MAP_E1 = 0.8
MAP_G = 0.01
MAP_POINTS = 60
MAP_ALPHA = 0.8

# alpha curves comparing coherent with incoherent correlated dissipation:
# (beta2, beta3, E1, g), beta1 = 1
RATIO_SETS: Tuple[Tuple[float, float, float, float], ...] = (
    (0.5, 0.05, 0.8, 0.005),
    (0.5, 0.05, 0.8, 0.01),
    (0.5, 0.05, 1.5, 0.005),
)
RATIO_ALPHA_STOP, RATIO_ALPHA_STEP = 0.99, 0.03

# parametric curves sample the interior of the cooling window
PARAMETRIC_POINTS = 60
INSET_ALPHAS = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)

MAP_KEYS = ["beta2_ratio", "beta3_ratio"]


@dataclass(frozen=True)
class Curve:
    alpha: float
    initial: InitialKind = InitialKind.THERMAL_PRODUCT

    @property
    def tag(self) -> str:
        if self.alpha == 1.0:
            return f"alpha{self.alpha:.2f}_{self.initial.value}"
        return f"alpha{self.alpha:.2f}"


def scan_curves() -> List[Curve]:
    return [Curve(a) for a in CURVE_ALPHAS] + [Curve(1.0, k) for k in DARK_INITIALS]


def _scan_config(curve: Curve, **extra) -> RunConfig:
    return RunConfig.build(
        e1=1.0,
        e2=SCAN_E2,
        g=SCAN_G,
        beta=SCAN_BETA,
        gamma0=(GAMMA0,) * 3,
        alpha=curve.alpha,
        initial=curve.initial,
        **extra,
    )


def _map_axes() -> Tuple[SweepAxis, SweepAxis]:
    start = 1.0 / MAP_POINTS
    return (
        SweepAxis(name="beta2_ratio", start=start, stop=1.0, num=MAP_POINTS),
        SweepAxis(name="beta3_ratio", start=start, stop=1.0, num=MAP_POINTS),
    )


def _map_config(alpha: float, **extra) -> RunConfig:
    return RunConfig.build(
        e1=MAP_E1,
        e2=SCAN_E2,
        g=MAP_G,
        beta=(1.0, 0.5, 0.05),
        gamma0=(GAMMA0,) * 3,
        alpha=alpha,
        sweep=_map_axes(),
        **extra,
    )


def _ratio(num: pd.Series, den: pd.Series) -> np.ndarray:
    num, den = np.asarray(num, dtype=float), np.asarray(den, dtype=float)
    out = np.full(num.shape, np.nan)
    ok = np.abs(den) > 0
    out[ok] = num[ok] / den[ok]
    return out


def _merge_ratio(
    frame: pd.DataFrame, reference: pd.DataFrame, column: str, ref_name: str, out: str
) -> pd.DataFrame:
    merged = frame[MAP_KEYS + [column]].merge(
        reference[MAP_KEYS + [column]].rename(columns={column: ref_name}), on=MAP_KEYS
    )
    merged[out] = _ratio(merged[column], merged[ref_name])
    return merged


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def fig2(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Cooling power against E1 for every curve."""
    axis = SweepAxis.from_step("e1", E1_START, E1_STOP, E1_STEP)
    paths = []
    for curve in scan_curves():
        path = out_dir / f"fig2_{curve.tag}.csv"
        run_sweep(_scan_config(curve, sweep=(axis,)), out=path, workers=workers)
        paths.append(path)
    return paths


def fig3a(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Cooling power over the temperature map, separate reservoirs."""
    path = out_dir / "fig3a.csv"
    run_sweep(_map_config(0.0), out=path, workers=workers)
    return [path]


def fig3b(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Cooling power enhancement at alpha = 0.8 over the separate-reservoir value."""
    bar = run_sweep(_map_config(0.0), workers=workers)
    common = run_sweep(_map_config(MAP_ALPHA), workers=workers)
    path = out_dir / "fig3b.csv"
    write_csv(_merge_ratio(common, bar, "q1", "q1_bar", "enhancement"), path)
    return [path]


def fig3c(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Effective inverse temperature of qubit 1, separate reservoirs."""
    path = out_dir / "fig3c.csv"
    run_sweep(_map_config(0.0), out=path, workers=workers)
    return [path]


def fig3d(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """beta1_eff enhancement at alpha = 0.8 over the separate-reservoir value."""
    bar = run_sweep(_map_config(0.0), workers=workers)
    common = run_sweep(_map_config(MAP_ALPHA), workers=workers)
    path = out_dir / "fig3d.csv"
    write_csv(_merge_ratio(common, bar, "beta1_eff", "beta1_eff_bar", "enhancement"), path)
    return [path]


def _parametric(workers: Optional[int]) -> Dict[str, pd.DataFrame]:
    """Steady reports along E1 inside the cooling window, per curve."""
    template = _scan_config(Curve(0.0))
    e_max = cooling_window_max_E1(template.baths(), SCAN_E2)
    values = np.linspace(0.0, e_max, PARAMETRIC_POINTS + 2)[1:-1]
    axis = SweepAxis(name="e1", start=float(values[0]), stop=float(values[-1]), num=PARAMETRIC_POINTS)
    return {
        curve.tag: run_sweep(_scan_config(curve, sweep=(axis,)), workers=workers)
        for curve in scan_curves()
    }


def _max_power_table(curves: List[Curve]) -> pd.DataFrame:
    rows = []
    for curve in curves:
        config = _scan_config(curve)
        point = cop_at_max_power(config.machine(), config.baths(), initial=config.initial_spec())
        rows.append({"alpha": curve.alpha, "initial": curve.initial.value, **point.to_dict()})
    return pd.DataFrame(rows)


def fig4a(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Cooling power against COP, parametric in E1, plus the maximum-power points."""
    paths = []
    for tag, frame in _parametric(workers).items():
        path = out_dir / f"fig4a_{tag}.csv"
        write_csv(frame[["alpha", "initial", "e1", "q1", "cop"]], path)
        paths.append(path)
    path = out_dir / "fig4a_max_power.csv"
    write_csv(_max_power_table(scan_curves()), path)
    paths.append(path)
    return paths


def fig4b(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Cooling power against entropy production, plus production at maximum power."""
    paths = []
    for tag, frame in _parametric(workers).items():
        path = out_dir / f"fig4b_{tag}.csv"
        write_csv(frame[["alpha", "initial", "e1", "q1", "sigma_dot"]], path)
        paths.append(path)
    curves = [Curve(a) for a in INSET_ALPHAS] + [Curve(1.0, k) for k in DARK_INITIALS]
    path = out_dir / "fig4b_inset.csv"
    write_csv(_max_power_table(curves), path)
    paths.append(path)
    return paths


def _coherent_vs_incoherent(config: RunConfig, keys: List[str], workers: Optional[int]) -> pd.DataFrame:
    coherent = run_sweep(config, workers=workers)
    incoherent = run_sweep(
        config.model_copy(update={"model": DissipationModel.INCOHERENT_CORRELATED}),
        workers=workers,
    )
    merged = coherent[keys + ["q1"]].merge(
        incoherent[keys + ["q1"]].rename(columns={"q1": "q1_ic"}), on=keys
    )
    merged["ratio"] = _ratio(merged["q1"], merged["q1_ic"])
    return merged


def _ratio_config(b2: float, b3: float, e1: float, g: float) -> RunConfig:
    axis = SweepAxis.from_step("alpha", 0.0, RATIO_ALPHA_STOP, RATIO_ALPHA_STEP)
    return RunConfig.build(
        e1=e1, e2=SCAN_E2, g=g, beta=(1.0, b2, b3), gamma0=(GAMMA0,) * 3, sweep=(axis,)
    )


def fig5a(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Coherent over incoherent correlated cooling power against alpha < 1."""
    parts = []
    for k, (b2, b3, e1, g) in enumerate(RATIO_SETS):
        frame = _coherent_vs_incoherent(_ratio_config(b2, b3, e1, g), ["alpha"], workers)
        frame.insert(0, "set", k)
        frame.insert(1, "beta2", b2)
        frame.insert(2, "beta3", b3)
        frame.insert(3, "e1", e1)
        frame.insert(4, "g", g)
        parts.append(frame)
    path = out_dir / "fig5a.csv"
    write_csv(pd.concat(parts, ignore_index=True), path)
    return [path]


def _fig5_map(out_dir: Path, name: str, initial: InitialKind, workers: Optional[int]) -> List[Path]:
    config = _map_config(1.0, initial=initial)
    path = out_dir / f"{name}.csv"
    write_csv(_coherent_vs_incoherent(config, MAP_KEYS, workers), path)
    return [path]


def fig5b(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Coherent over incoherent cooling power at alpha = 1, thermal product start."""
    return _fig5_map(out_dir, "fig5b", InitialKind.THERMAL_PRODUCT, workers)


def fig5c(out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    """Coherent over incoherent cooling power at alpha = 1, start orthogonal to the dark state."""
    return _fig5_map(out_dir, "fig5c", InitialKind.DARK_ORTHOGONAL, workers)


PRESETS: Dict[str, Callable[[Path, Optional[int]], List[Path]]] = {
    "fig2": fig2,
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig3c": fig3c,
    "fig3d": fig3d,
    "fig4a": fig4a,
    "fig4b": fig4b,
    "fig5a": fig5a,
    "fig5b": fig5b,
    "fig5c": fig5c,
}


def preset_configs(name: str) -> List[RunConfig]:
    """The base configs a preset runs, coherent model; building them validates every sweep."""
    if name not in PRESETS:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if name == "fig2":
        axis = SweepAxis.from_step("e1", E1_START, E1_STOP, E1_STEP)
        return [_scan_config(curve, sweep=(axis,)) for curve in scan_curves()]
    if name in ("fig3a", "fig3c"):
        return [_map_config(0.0)]
    if name in ("fig3b", "fig3d"):
        return [_map_config(0.0), _map_config(MAP_ALPHA)]
    if name in ("fig4a", "fig4b"):
        return [_scan_config(curve) for curve in scan_curves()]
    if name == "fig5a":
        return [_ratio_config(*params) for params in RATIO_SETS]
    initial = InitialKind.THERMAL_PRODUCT if name == "fig5b" else InitialKind.DARK_ORTHOGONAL
    return [_map_config(1.0, initial=initial)]


def figure_preset(name: str, out_dir: Path, workers: Optional[int] = None) -> List[Path]:
    configs = preset_configs(name)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info("building preset %s into %s (%d base configs)", name, out_dir, len(configs))
    return PRESETS[name](out_dir, workers)
