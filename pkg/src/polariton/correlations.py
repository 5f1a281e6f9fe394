"""Photon statistics and efficiency observables of the steady state.

Correlators are read from frame moments. The visible mode carries a factor
exp(iω_{s_U} t) in the pump frame, which cancels in every |⟨a_IR(t+τ) s(t)⟩|²
because only the absolute value of the anomalous correlator enters.
"""

import logging
import math
from typing import Optional

import numpy as np
import scipy.optimize
from numpy.typing import ArrayLike

from .dispersion import (
    HBAR_EV_S,
    exciton_polariton_basis,
    exciton_polariton_energies,
    phonon_polariton_energies,
)
from .errors import InvalidStateError
from .langevin import two_time_covariance
from .params import SystemParams, default_params
from .schema import (
    CorrelationTrace,
    CovarianceSet,
    EmissionRates,
    ExcitonBranch,
    IRFilter,
    Mode,
    PhononBranch,
)

logger = logging.getLogger(__name__)

LOCUS_SCAN_RANGE = (-3.0, 3.0)  # 1/μm
LOCUS_SCAN_STEP = 1e-3
LOCUS_TOLERANCE = 1e-6


# ============================================================
# Cross-correlation g²_Vis-IR
# ============================================================

def ir_occupation(cov: CovarianceSet, phi: float, ir_filter: IRFilter = IRFilter.BOTH) -> float:
    """⟨a_IR† a_IR⟩ for a_IR = w_U v_U + w_L v_L."""
    w_u, w_l = IRFilter(ir_filter).weights(phi)
    c = cov.second_moments
    cross = c[3, 4] + c[5, 2]  # ⟨v_U† v_L⟩ + ⟨v_L† v_U⟩
    return float((w_u**2 * c[3, 2] + w_l**2 * c[5, 4] + w_u * w_l * cross).real)


def _anomalous_ir_visible(moments: np.ndarray, w_u: float, w_l: float) -> complex:
    # ⟨a_IR(t+τ) s(t)⟩ from ⟨A(t+τ) Aᵀ(t)⟩
    return complex(w_u * moments[2, 0] + w_l * moments[4, 0])


def _denominator(
    cov: CovarianceSet, phi: float, n_bg_vis: float, n_bg_ir: float, ir_filter: IRFilter
) -> float:
    if n_bg_vis < 0 or n_bg_ir < 0:
        raise ValueError(f"Background occupations must be nonnegative ({n_bg_vis}, {n_bg_ir})")
    n_vis = cov.occupation(Mode.S_L) + n_bg_vis
    n_ir = ir_occupation(cov, phi, ir_filter) + n_bg_ir
    product = n_vis * n_ir
    if not product > 0:
        raise InvalidStateError(f"g² undefined for occupations n_vis={n_vis:.3e}, n_ir={n_ir:.3e}")
    return product


def g2_cross(
    cov: CovarianceSet,
    phi: float,
    tau: float,
    n_bg_vis: float = 0.0,
    n_bg_ir: float = 0.0,
    ir_filter: IRFilter = IRFilter.BOTH,
) -> float:
    """g²_Vis-IR(τ) = 1 + |⟨a_IR(t+τ) s(t)⟩|² / ((⟨n_s⟩ + N_vis)(⟨n_IR⟩ + N_IR)).

    Background photons are uncorrelated, so they enter the denominator only.
    """
    w_u, w_l = IRFilter(ir_filter).weights(phi)
    amplitude = _anomalous_ir_visible(two_time_covariance(cov, tau), w_u, w_l)
    return 1.0 + abs(amplitude) ** 2 / _denominator(cov, phi, n_bg_vis, n_bg_ir, ir_filter)


def g2_cross_trace(
    cov: CovarianceSet,
    phi: float,
    tau_grid: ArrayLike,
    n_bg_vis: float = 0.0,
    n_bg_ir: float = 0.0,
    ir_filter: IRFilter = IRFilter.BOTH,
) -> CorrelationTrace:
    """g²_Vis-IR(τ) over a grid of nonnegative delays in fs."""
    ir_filter = IRFilter(ir_filter)
    taus = np.asarray(tau_grid, dtype=float)
    w_u, w_l = ir_filter.weights(phi)
    denominator = _denominator(cov, phi, n_bg_vis, n_bg_ir, ir_filter)

    amplitudes = np.array(
        [_anomalous_ir_visible(two_time_covariance(cov, tau), w_u, w_l) for tau in taus]
    )
    return CorrelationTrace(
        tau_grid=taus,
        g2_cross=1.0 + np.abs(amplitudes) ** 2 / denominator,
        source_filter=ir_filter,
    )


# ============================================================
# Derived witnesses
# ============================================================

def g3_cross(g2c: float) -> float:
    """Three-photon cross-correlation of a Gaussian pair source, 2 + 4(g² − 1) by Isserlis."""
    return 4.0 * g2c - 2.0


def g2_heralded(g2c: float) -> float:
    """Heralded IR autocorrelation 4/g² − 2/g²², i.e. g3_cross / g2c².

    Raises:
        ValueError: if g2c < 1
    """
    if g2c < 1.0:
        raise ValueError(f"g2_cross must be >= 1, got {g2c}")
    return 4.0 / g2c - 2.0 / g2c**2


def cauchy_schwarz_violated(g2c: float) -> bool:
    """Below threshold both autocorrelations equal 2, so violation means g² > 2."""
    return g2c > 2.0


# ============================================================
# Efficiency & rates
# ============================================================

def quantum_efficiency(cov: CovarianceSet) -> float:
    """QE = γ_{s_L} n_{s_L} / (γ_{s_U} n_pump).

    Raises:
        ValueError: if the pump occupation is zero
    """
    system = cov.system
    if system.n_pump <= 0:
        raise ValueError("quantum_efficiency needs n_pump > 0")
    return system.gamma_s_l * cov.occupation(Mode.S_L) / (system.gamma_s_u * system.n_pump)


def emission_rates(cov: CovarianceSet) -> EmissionRates:
    """Visible, IR and phonon-polariton emission rates in photons/s."""
    system = cov.system
    phi = system.phi
    n_s = cov.occupation(Mode.S_L)
    n_ir = ir_occupation(cov, phi)
    # the thermal state has no v_U/v_L coherence
    n_ir_thermal = math.sin(phi) ** 2 * system.n_th_vu + math.cos(phi) ** 2 * system.n_th_vl

    excess_phonons = system.gamma_v_u * (cov.occupation(Mode.V_U) - system.n_th_vu) + (
        system.gamma_v_l * (cov.occupation(Mode.V_L) - system.n_th_vl)
    )
    return EmissionRates(
        vis_rate=system.gamma_s_l * n_s / HBAR_EV_S,
        ir_rate=system.gamma_ir * n_ir / HBAR_EV_S,
        excess_ir_rate=system.gamma_ir * (n_ir - n_ir_thermal) / HBAR_EV_S,
        phonon_rate=excess_phonons / HBAR_EV_S,
    )


# ============================================================
# Energy-momentum matching
# ============================================================

def matching_locus(
    k_i: float, branch: PhononBranch | str, p: Optional[SystemParams] = None
) -> list[float]:
    """Signal wave vectors k_f with ω_{s_U}(k_i) = ω_{s_L}(k_f) + ω_v(k_i − k_f).

    Scans k_f over [−3, 3] 1/μm in steps of 1e-3 and refines each sign change by
    bisection to 1e-6 1/μm.

    Returns:
        Sorted roots; empty if there is no crossing in the scan range
    """
    p = p or default_params()
    branch = PhononBranch(branch)
    pump = exciton_polariton_basis(k_i, p).omega_u
    column = 0 if branch is PhononBranch.UPPER else 1

    def residual(k_f):
        lower = exciton_polariton_energies(k_f, p)[..., ExcitonBranch.LOWER.column]
        return pump - lower - phonon_polariton_energies(k_i - np.asarray(k_f), p)[column]

    lo, hi = LOCUS_SCAN_RANGE
    n_points = int(round((hi - lo) / LOCUS_SCAN_STEP)) + 1
    grid = np.linspace(lo, hi, n_points)
    values = residual(grid)

    roots = [float(k) for k in grid[values == 0.0]]
    for i in np.nonzero(values[:-1] * values[1:] < 0)[0]:
        root = scipy.optimize.bisect(
            lambda k: float(residual(k)), grid[i], grid[i + 1], xtol=LOCUS_TOLERANCE
        )
        roots.append(float(root))

    logger.debug(f"Matching locus k_i={k_i:.4f} ({branch.value}): {roots}")
    return sorted(roots)
