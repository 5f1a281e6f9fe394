"""Per-mode column layouts and point evaluators for sweeps."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from src.polariton import (
    CovarianceSet,
    InstabilityError,
    Mode,
    ModePair,
    SystemParams,
    build_system,
    cauchy_schwarz_violated,
    emission_rates,
    evolve_pulse,
    exciton_polariton_basis,
    g2_cross,
    g2_cross_trace,
    g2_heralded,
    instability_threshold,
    log_negativity,
    phonon_polariton_basis,
    pulsed_applicability_bound,
    quadrature_reduce,
    quantum_efficiency,
    steady_covariance,
    vis_ir_reduce,
)

from .scenario import Scenario, ScenarioMode

logger = logging.getLogger(__name__)

Row = list[Any]


@dataclass
class PointResult:
    """Rows produced by one sweep point, plus optional summary record"""
    rows: list[Row]
    summary: Optional[dict] = field(default=None)


# ============================================================
# Column layouts
# ============================================================

MODE_COLUMNS: dict[ScenarioMode, list[str]] = {
    ScenarioMode.DISPERSION: [
        "k", "omega_s_l", "omega_s_u", "omega_s_h", "gamma_s_l", "gamma_s_u",
        "omega_v_u", "omega_v_l", "gamma_v_u", "gamma_v_l", "phi",
    ],
    ScenarioMode.LOGNEG_POLARITON: ["k_i", "k_f", "stable", "e_n_upper", "e_n_lower"],
    ScenarioMode.LOGNEG_VISIR: ["k_i", "k_f", "stable", "e_n", "snr_vis", "snr_ir"],
    ScenarioMode.G2_MAP: ["k_i", "k_f", "stable", "g2_cross", "g2_heralded", "cs_violated"],
    ScenarioMode.G2_TRACE: ["k_i", "k_f", "tau_fs", "stable", "g2_cross"],
    ScenarioMode.QE_MAP: ["k_i", "k_f", "stable", "qe", "n_s_l"],
    ScenarioMode.THRESHOLD_MAP: ["k_i", "k_f", "n_threshold", "n_pulsed_bound"],
    ScenarioMode.RATES_SWEEP: [
        "n_pump", "stable", "vis_rate", "ir_rate", "excess_ir_rate", "g2_cross", "e_n",
    ],
    ScenarioMode.PULSE: [
        "n0", "t_fs", "n_s", "n_vu", "n_vl", "n_ir", "g2_cross", "profile_vis", "profile_ir",
    ],
}


# ============================================================
# Point planning
# ============================================================

def plan_points(scenario: Scenario) -> list[dict[str, float]]:
    """Sweep points in output order (ascending k_i, then k_f)."""
    mode = scenario.mode
    if mode is ScenarioMode.DISPERSION:
        return [{"k": k} for k in scenario.k_i_values()]
    if mode is ScenarioMode.RATES_SWEEP:
        return [{"n_pump": n} for n in scenario.pump_values()]
    if mode is ScenarioMode.PULSE:
        return [{"n0": n} for n in scenario.n0_values()]
    return [
        {"k_i": k_i, "k_f": k_f}
        for k_i in scenario.k_i_values()
        for k_f in scenario.k_f_values()
    ]


# ============================================================
# Evaluators
# ============================================================

def _covariance(k_i: float, k_f: float, n_pump: float, p: SystemParams) -> CovarianceSet | None:
    """Steady covariance, or None when the point is above threshold."""
    try:
        return steady_covariance(build_system(k_i, k_f, n_pump, p))
    except InstabilityError as exc:
        logger.debug(f"Unstable point k_i={k_i} k_f={k_f}: {exc}")
        return None


def _unstable(prefix: Row, n_columns: int) -> Row:
    return prefix + [0] + [None] * (n_columns - len(prefix) - 1)


def _dispersion(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    k = point["k"]
    basis = exciton_polariton_basis(k, p)
    phonon = phonon_polariton_basis(k, p)
    return PointResult(rows=[[
        k, basis.omega_l, basis.omega_u, basis.omega_h, basis.gamma_l, basis.gamma_u,
        phonon.omega_u, phonon.omega_l, phonon.gamma_u, phonon.gamma_l, phonon.phi,
    ]])


def _logneg_polariton(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    prefix = [point["k_i"], point["k_f"]]
    cov = _covariance(point["k_i"], point["k_f"], scenario.n_pump, p)
    if cov is None:
        return PointResult(rows=[_unstable(prefix, 5)])
    return PointResult(rows=[prefix + [
        1,
        log_negativity(quadrature_reduce(cov, ModePair.S_VU)),
        log_negativity(quadrature_reduce(cov, ModePair.S_VL)),
    ]])


def _logneg_visir(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    prefix = [point["k_i"], point["k_f"]]
    cov = _covariance(point["k_i"], point["k_f"], scenario.n_pump, p)
    if cov is None:
        return PointResult(rows=[_unstable(prefix, 6)])
    q = vis_ir_reduce(cov, cov.system.phi, *scenario.backgrounds(p))
    return PointResult(rows=[prefix + [1, log_negativity(q), q.snr_vis, q.snr_ir]])


def _g2_map(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    prefix = [point["k_i"], point["k_f"]]
    cov = _covariance(point["k_i"], point["k_f"], scenario.n_pump, p)
    if cov is None:
        return PointResult(rows=[_unstable(prefix, 6)])
    g2 = g2_cross(cov, cov.system.phi, 0.0, *scenario.backgrounds(p), scenario.filter)
    return PointResult(rows=[prefix + [1, g2, g2_heralded(g2), cauchy_schwarz_violated(g2)]])


def _g2_trace(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    k_i, k_f = point["k_i"], point["k_f"]
    taus = scenario.tau_values()
    cov = _covariance(k_i, k_f, scenario.n_pump, p)
    if cov is None:
        return PointResult(rows=[[k_i, k_f, tau, 0, None] for tau in taus])
    trace = g2_cross_trace(cov, cov.system.phi, taus, *scenario.backgrounds(p), scenario.filter)
    return PointResult(rows=[
        [k_i, k_f, tau, 1, float(g2)] for tau, g2 in zip(taus, trace.g2_cross)
    ])


def _qe_map(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    prefix = [point["k_i"], point["k_f"]]
    cov = _covariance(point["k_i"], point["k_f"], scenario.n_pump, p)
    if cov is None:
        return PointResult(rows=[_unstable(prefix, 5)])
    return PointResult(rows=[prefix + [1, quantum_efficiency(cov), cov.occupation(Mode.S_L)]])


def _threshold_map(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    k_i, k_f = point["k_i"], point["k_f"]
    return PointResult(rows=[[
        k_i, k_f, instability_threshold(k_i, k_f, p), pulsed_applicability_bound(k_i, k_f, p),
    ]])


def _rates_sweep(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    n_pump = point["n_pump"]
    cov = _covariance(scenario.k_i_min, scenario.k_f_min, n_pump, p)
    if cov is None:
        return PointResult(rows=[_unstable([n_pump], 7)])
    backgrounds = scenario.backgrounds(p)
    rates = emission_rates(cov)
    phi = cov.system.phi
    return PointResult(rows=[[
        n_pump, 1, rates.vis_rate, rates.ir_rate, rates.excess_ir_rate,
        g2_cross(cov, phi, 0.0, *backgrounds, scenario.filter),
        log_negativity(vis_ir_reduce(cov, phi, *backgrounds)),
    ]])


def _pulse(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    n0 = point["n0"]
    traj = evolve_pulse(scenario.k_i_min, scenario.k_f_min, n0, p, scenario.fock_config())
    rows = [
        [n0, t, n_s, n_vu, n_vl, n_ir, None if math.isnan(g2) else g2, pv, pi]
        for t, n_s, n_vu, n_vl, n_ir, g2, pv, pi in zip(
            traj.t, traj.n_s, traj.n_vu, traj.n_vl, traj.n_ir,
            traj.g2_cross_t, traj.profile_vis, traj.profile_ir,
        )
    ]
    summary = {
        "n0": n0,
        "photons_per_pulse_vis": traj.photons_per_pulse_vis,
        "photons_per_pulse_ir": traj.photons_per_pulse_ir,
        "window_fs": traj.window_fs,
        "max_trace_error": traj.max_trace_error,
    }
    return PointResult(rows=rows, summary=summary)


MODE_EVALUATORS: dict[ScenarioMode, Callable[[dict, Scenario, SystemParams], PointResult]] = {
    ScenarioMode.DISPERSION: _dispersion,
    ScenarioMode.LOGNEG_POLARITON: _logneg_polariton,
    ScenarioMode.LOGNEG_VISIR: _logneg_visir,
    ScenarioMode.G2_MAP: _g2_map,
    ScenarioMode.G2_TRACE: _g2_trace,
    ScenarioMode.QE_MAP: _qe_map,
    ScenarioMode.THRESHOLD_MAP: _threshold_map,
    ScenarioMode.RATES_SWEEP: _rates_sweep,
    ScenarioMode.PULSE: _pulse,
}


# ============================================================
# Formatting
# ============================================================

def format_value(value: Any) -> str:
    """CSV cell text: 9 significant digits for floats, blank for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return f"{value:.9g}"


def json_value(value: Any) -> Any:
    """JSON cell mirroring :func:`format_value`: non-finite floats become strings."""
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    value = float(value)
    if math.isfinite(value):
        return value
    return format_value(value)
