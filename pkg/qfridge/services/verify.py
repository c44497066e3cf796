# qfridge/services/verify.py
"""
Self-check harness behind `qfridge verify`.

Each check returns a CheckResult; a failing check never raises, so one
report always lists every outcome. `fast` runs a few randomized draws per
check, `full` runs 100 and adds the interaction-correction bound and the
maximum-power search.
"""

import logging
import traceback
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from ..errors import ValidationError
from ..models.params import BathParams, DissipationModel, MachineParams
from ..models.states import InitialKind
from .dynamics import (
    dark_population_row,
    embed,
    initial_state,
    integrate,
    project,
    propagate,
    propagate_full,
    steady_state,
    steady_state_full,
    trace_row,
)
from .event_logger import log_event
from .operators import (
    dark_state,
    jump_operators,
    liouvillian,
    reduce_to_w,
    trace_functional,
)
from .rates import carnot_cop
from .thermo import (
    cop_at_max_power,
    entropy_production,
    entropy_production_without_q2,
    evaluate,
    heat_currents,
)
from .transcription import compare_transcription, mismatched_rows

logger = logging.getLogger(__name__)

LEVELS = {"fast": 8, "full": 100}
SEED = 20170901

# rows whose published coefficients differ from the derived generator
LEDGER_ROWS_SEPARATE = {"p010", "p101", "c_R", "c_I"}
LEDGER_ROWS_COMMON = LEDGER_ROWS_SEPARATE | {"p000", "p001", "p110", "p111"}

# COP at maximum cooling power of the local master equation for
# beta = (1, 0.5, 0.05), E2 = 5, g = 0.005, keyed by alpha
REFERENCE_ETA_STAR: Dict[float, float] = {
    0.0: 0.2326,
    0.2: 0.2256,
    0.4: 0.2060,
    0.6: 0.1966,
    0.8: 0.1931,
    0.99: 0.1925,
}

# (E1, g, alpha) on the cooling-power scans and the temperature-map point
HINT_POINTS: Tuple[Tuple[float, float, float], ...] = tuple(
    (e1, 0.005, alpha) for e1 in (0.2, 0.8, 1.5) for alpha in (0.2, 0.6, 0.99)
) + ((0.8, 0.01, 0.8), (0.3, 0.01, 0.8))
# measured at most 5.5e-3 on these points
HINT_BOUND = 1e-2


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    metrics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "metrics": self.metrics,
        }


def random_parameters(
    rng: np.random.Generator,
    alpha_max: float = 0.99,
    allow_dark: bool = False,
) -> Tuple[MachineParams, BathParams]:
    """One random valid (machine, baths) draw with moderate energies."""
    e1 = rng.uniform(0.3, 2.0)
    e3 = rng.uniform(0.3, 4.0)
    g = rng.uniform(0.0, min(e1, e3) / 20.0)
    b2 = rng.uniform(0.2, 0.8)
    b3 = rng.uniform(0.02, 0.8 * b2)
    if allow_dark and rng.uniform() < 0.2:
        alpha = 1.0
    else:
        alpha = rng.uniform(0.0, alpha_max)
    model = DissipationModel.COHERENT if rng.uniform() < 0.5 else DissipationModel.INCOHERENT_CORRELATED
    gamma0 = tuple(rng.uniform(0.005, 0.02, size=3))
    machine = MachineParams(E1=e1, E2=e1 + e3, g=g)
    baths = BathParams(beta=(1.0, b2, b3), gamma0=gamma0, alpha=alpha, model=model)
    return machine, baths


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_liouvillian(draws: int, rng: np.random.Generator) -> CheckResult:
    worst_trace = worst_herm = worst_re = 0.0
    for _ in range(draws):
        machine, baths = random_parameters(rng, allow_dark=True)
        L = liouvillian(machine, baths)
        norm = np.linalg.norm(L.matrix, 2)
        worst_trace = max(worst_trace, np.linalg.norm(trace_functional() @ L.matrix) / norm)
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        out = L.apply(a + a.conj().T)
        worst_herm = max(worst_herm, np.abs(out - out.conj().T).max())
        worst_re = max(worst_re, np.real(np.linalg.eigvals(L.matrix)).max() / norm)
    passed = worst_trace <= 1e-12 and worst_herm <= 1e-12 and worst_re <= 1e-9
    return CheckResult(
        "liouvillian_invariants",
        passed,
        metrics={"trace": worst_trace, "hermiticity": worst_herm, "max_real_eigenvalue": worst_re},
    )


def check_w_matrix(draws: int, rng: np.random.Generator) -> CheckResult:
    worst_rows = worst_dark = 0.0
    for _ in range(draws):
        machine, baths = random_parameters(rng)
        for b in (baths, baths.replace(alpha=1.0, model=DissipationModel.COHERENT)):
            w = reduce_to_w(liouvillian(machine, b))
            worst_rows = max(worst_rows, np.abs(trace_row() @ w.matrix).max() / w.norm)
            if b.has_dark_state:
                worst_dark = max(worst_dark, np.abs(dark_population_row() @ w.matrix).max() / w.norm)
    passed = worst_rows <= 1e-12 and worst_dark <= 1e-12
    return CheckResult(
        "w_matrix_invariants", passed, metrics={"trace_rows": worst_rows, "dark_row": worst_dark}
    )


def check_dark_state(draws: int, rng: np.random.Generator) -> CheckResult:
    psi = dark_state()
    worst_jump = max(
        np.abs(op @ psi).max() for op, _ in jump_operators(1.0, DissipationModel.COHERENT)
    )
    worst_l = worst_pd = 0.0
    for _ in range(draws):
        machine, baths = random_parameters(rng)
        baths = baths.replace(alpha=1.0, model=DissipationModel.COHERENT)
        L = liouvillian(machine, baths)
        worst_l = max(worst_l, np.abs(L.apply(np.outer(psi, psi.conj()))).max())
        w = reduce_to_w(L)
        p0 = initial_state(InitialKind.THERMAL_PRODUCT, machine, baths)
        trajectory = integrate(w, p0, samples=21)
        worst_pd = max(worst_pd, np.abs(trajectory.dark_populations() - p0.dark_population).max())
    passed = worst_jump <= 1e-14 and worst_l <= 1e-12 and worst_pd <= 1e-9
    return CheckResult(
        "dark_state",
        passed,
        metrics={"jump_annihilation": worst_jump, "projector_residual": worst_l, "p_D_drift": worst_pd},
    )


def check_oracle(draws: int, rng: np.random.Generator) -> CheckResult:
    worst = worst_excluded = 0.0
    for _ in range(draws):
        machine, baths = random_parameters(rng, allow_dark=True)
        L = liouvillian(machine, baths)
        w = reduce_to_w(L)
        init = initial_state(InitialKind.THERMAL_PRODUCT, machine, baths)
        reduced = steady_state(w, init)
        full, excluded = project(steady_state_full(L, init))
        worst = max(worst, np.abs(reduced.state.array - full.array).max())
        worst_excluded = max(worst_excluded, excluded)
    passed = worst <= 1e-9 and worst_excluded <= 1e-10
    return CheckResult(
        "oracle_equivalence",
        passed,
        metrics={"max_deviation": worst, "max_excluded_coherence": worst_excluded},
    )


def check_propagation(draws: int, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(draws):
        machine, baths = random_parameters(rng, allow_dark=True)
        L = liouvillian(machine, baths)
        w = reduce_to_w(L)
        p0 = initial_state(InitialKind.DARK_ORTHOGONAL, machine, baths)
        t = rng.uniform(0.0, 100.0) / baths.gamma_unit
        reduced = propagate(w, p0, t)
        full, _ = project(propagate_full(L, embed(p0), t))
        worst = max(worst, np.abs(reduced - full.array).max())
    return CheckResult("propagation", worst <= 1e-9, metrics={"max_deviation": worst})


def check_thermodynamics(draws: int, rng: np.random.Generator) -> CheckResult:
    worst_first = worst_ratio = worst_forms = 0.0
    min_sigma = np.inf
    for _ in range(draws):
        machine, baths = random_parameters(rng)
        solution, report = evaluate(machine, baths)
        q = heat_currents(solution)
        min_sigma = min(min_sigma, report.sigma_dot)
        # ratios of near-vanishing currents are dominated by round-off
        scale = max(abs(x) for x in q)
        if scale > 1e-4 * baths.gamma_unit:
            worst_first = max(worst_first, report.first_law_residual)
            E = machine.energies
            for i, j in ((0, 1), (0, 2), (1, 2)):
                worst_ratio = max(worst_ratio, abs(abs(q[i] / q[j]) / (E[i] / E[j]) - 1.0))
            both = entropy_production(q, baths), entropy_production_without_q2(q, baths)
            worst_forms = max(worst_forms, abs(both[0] - both[1]) / scale)
    passed = (
        worst_first <= 1e-10
        and min_sigma >= -1e-12
        and worst_ratio <= 1e-6
        and worst_forms <= 1e-9
    )
    return CheckResult(
        "thermodynamics",
        passed,
        metrics={
            "first_law": worst_first,
            "min_sigma_dot": min_sigma,
            "ratio_law": worst_ratio,
            "entropy_forms": worst_forms,
        },
    )


def check_transcription(draws: int, rng: np.random.Generator) -> CheckResult:
    machine = MachineParams(E1=0.8, E2=5.0, g=0.005)
    outcomes = {}
    for alpha, expected in ((0.0, LEDGER_ROWS_SEPARATE), (0.5, LEDGER_ROWS_COMMON)):
        baths = BathParams(beta=(1.0, 0.5, 0.05), alpha=alpha)
        entries = compare_transcription(reduce_to_w(liouvillian(machine, baths)))
        rows = mismatched_rows(entries)
        outcomes[alpha] = (rows == expected, sorted(rows), sum(not e.match for e in entries))
    passed = all(ok for ok, _, _ in outcomes.values())
    return CheckResult(
        "transcription_ledger",
        passed,
        detail="published coefficients differ from the generator in the listed rows",
        metrics={
            f"alpha={a}": {"rows": rows, "mismatched_coefficients": n}
            for a, (_, rows, n) in outcomes.items()
        },
    )


def check_carnot(draws: int, rng: np.random.Generator) -> CheckResult:
    eta = carnot_cop(BathParams(beta=(1.0, 0.5, 0.05)))
    return CheckResult("carnot_bound", abs(eta - 0.9) <= 1e-12, metrics={"eta_c": eta})


def check_max_power(draws: int, rng: np.random.Generator) -> CheckResult:
    machine = MachineParams(E1=1.0, E2=5.0, g=0.005)
    stars = {}
    for alpha in REFERENCE_ETA_STAR:
        point = cop_at_max_power(machine, BathParams(beta=(1.0, 0.5, 0.05), alpha=alpha))
        stars[alpha] = point.cop
    worst = max(abs(stars[a] - ref) for a, ref in REFERENCE_ETA_STAR.items())
    values = list(stars.values())
    # more commonness buys power at the price of efficiency
    monotone = all(b <= a + 1e-3 for a, b in zip(values, values[1:]))
    passed = worst <= 0.005 and monotone and max(values) < 0.9
    return CheckResult(
        "cop_at_max_power",
        passed,
        metrics={"eta_star": stars, "max_deviation": worst, "non_increasing": monotone},
    )


def check_hint(draws: int, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    where: Dict[str, float] = {}
    for e1, g, alpha in HINT_POINTS:
        machine = MachineParams(E1=e1, E2=5.0, g=g)
        _, report = evaluate(machine, BathParams(beta=(1.0, 0.5, 0.05), alpha=alpha))
        if report.hint_correction > worst:
            worst = report.hint_correction
            where = {"e1": e1, "g": g, "alpha": alpha}
    return CheckResult(
        "interaction_correction",
        worst <= HINT_BOUND,
        detail=f"max |Tr[H_int L_i]| / |Q_i| over the figure parameters, bound {HINT_BOUND:g}",
        metrics={"max_hint_correction": worst, "at": where},
    )


FAST_CHECKS: List[Callable[[int, np.random.Generator], CheckResult]] = [
    check_carnot,
    check_liouvillian,
    check_w_matrix,
    check_dark_state,
    check_transcription,
    check_oracle,
    check_thermodynamics,
]
FULL_CHECKS = FAST_CHECKS + [check_propagation, check_hint, check_max_power]


def verify(level: str = "fast", seed: int = SEED) -> Dict[str, Any]:
    """Run the checks of `level` and return a JSON-ready report."""
    if level not in LEVELS:
        raise ValidationError(f"unknown verify level {level!r}; choose from {sorted(LEVELS)}")
    draws = LEVELS[level]
    checks = FULL_CHECKS if level == "full" else FAST_CHECKS
    rng = np.random.default_rng(seed)

    results = []
    for check in checks:
        try:
            result = check(draws, rng)
        except Exception as e:
            logger.debug("check %s raised:\n%s", check.__name__, traceback.format_exc())
            result = CheckResult(check.__name__.replace("check_", ""), False, f"{type(e).__name__}: {e}")
        if not result.passed:
            log_event("VERIFY_FAILED", result.name, level=logging.ERROR, metrics=result.metrics)
        logger.info("%-24s %s", result.name, "ok" if result.passed else "FAILED")
        results.append(result)

    return {
        "level": level,
        "seed": seed,
        "draws": draws,
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }
