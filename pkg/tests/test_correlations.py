"""Cross-correlations, heralded statistics, efficiency, rates and the matching locus."""

import math

import numpy as np
import pytest
import scipy.ndimage

from src.polariton import (
    HBAR_EV_S,
    InstabilityError,
    IRFilter,
    Mode,
    PhononBranch,
    build_system,
    cauchy_schwarz_violated,
    emission_rates,
    ev_to_rate,
    exciton_polariton_basis,
    g2_cross,
    g2_cross_trace,
    g2_heralded,
    g3_cross,
    ir_occupation,
    log_negativity,
    matching_locus,
    phonon_polariton_basis,
    quantum_efficiency,
    steady_covariance,
    vis_ir_reduce,
)

from .conftest import K_F, K_I, N_PUMP


def _steady(params, n_pump, k_i=K_I, k_f=K_F):
    return steady_covariance(build_system(k_i, k_f, n_pump, params))


# ========================================================================
# g² of analytic states
# ========================================================================

@pytest.mark.parametrize("r", [0.1, 0.5])
def test_two_mode_squeezed_cross_correlation(squeezed_cov, r):
    cov = squeezed_cov(r)
    expected = 2 + 1 / math.sinh(r) ** 2
    assert g2_cross(cov, 0.0, 0.0) == pytest.approx(expected, rel=1e-12)
    assert g2_cross(cov, 0.0, 0.0, ir_filter=IRFilter.LOWER) == pytest.approx(expected, rel=1e-12)


def test_background_dilutes_correlation(squeezed_cov):
    cov = squeezed_cov(0.3)
    clean = g2_cross(cov, 0.0, 0.0)
    noisy = g2_cross(cov, 0.0, 0.0, n_bg_vis=1e-2, n_bg_ir=1e-2)
    n = math.sinh(0.3) ** 2
    assert noisy == pytest.approx(1 + (clean - 1) * n**2 / (n + 1e-2) ** 2, rel=1e-12)


def test_ir_occupation_uses_filter_weights(squeezed_cov):
    cov = squeezed_cov(0.3)
    n = math.sinh(0.3) ** 2
    phi = 0.3
    assert ir_occupation(cov, phi, IRFilter.BOTH) == pytest.approx(math.cos(phi) ** 2 * n)
    assert ir_occupation(cov, phi, IRFilter.LOWER) == pytest.approx(math.cos(phi) ** 2 * n)
    assert ir_occupation(cov, phi, IRFilter.UPPER) == pytest.approx(0.0, abs=1e-15)


def test_negative_background_rejected(squeezed_cov):
    with pytest.raises(ValueError):
        g2_cross(squeezed_cov(0.3), 0.0, 0.0, n_bg_vis=-1.0)


# ========================================================================
# Derived witnesses
# ========================================================================

def test_heralded_autocorrelation():
    assert g2_heralded(1.0) == pytest.approx(2.0)
    assert g2_heralded(2.0) == pytest.approx(1.5)
    assert g2_heralded(1e6) < 1e-5
    with pytest.raises(ValueError):
        g2_heralded(0.9)


def test_heralded_equals_three_photon_ratio():
    for g in (1.0, 1.7, 3.2, 40.0):
        assert g2_heralded(g) == pytest.approx(g3_cross(g) / g**2, rel=1e-14)
    assert g3_cross(1.0) == 2.0


def test_cauchy_schwarz_witness():
    assert cauchy_schwarz_violated(2.5)
    assert not cauchy_schwarz_violated(2.0)
    assert not cauchy_schwarz_violated(1.4)


# ========================================================================
# Steady-state observables
# ========================================================================

def test_weak_pump_gives_strongly_bunched_pairs(params):
    cov = _steady(params, 1.0)
    assert g2_cross(cov, cov.system.phi, 0.0) > 10


def test_correlation_trace_starts_at_zero_delay(pumped_cov):
    phi = pumped_cov.system.phi
    trace = g2_cross_trace(pumped_cov, phi, [0.0, 10.0, 50.0])
    assert trace.g2_cross[0] == pytest.approx(g2_cross(pumped_cov, phi, 0.0), rel=1e-12)
    assert trace.g2_cross[2] == pytest.approx(g2_cross(pumped_cov, phi, 50.0), rel=1e-12)
    assert trace.source_filter is IRFilter.BOTH


def test_correlation_decays_to_uncorrelated(pumped_cov):
    assert g2_cross(pumped_cov, pumped_cov.system.phi, 1e5) == pytest.approx(1.0, abs=1e-9)


def test_correlation_beats_at_phonon_polariton_splitting(pumped_cov):
    system = pumped_cov.system
    step = 1.0
    taus = np.arange(0, 4096) * step
    trace = g2_cross_trace(pumped_cov, system.phi, taus, ir_filter=IRFilter.BOTH)
    signal = trace.g2_cross - trace.g2_cross.mean()
    spectrum = np.abs(np.fft.rfft(signal * np.hanning(len(signal))))
    freqs = 2 * np.pi * np.fft.rfftfreq(len(signal), d=step)
    splitting = ev_to_rate(system.omega_v_u - system.omega_v_l)
    # skip the slow decay envelope near zero frequency
    band = freqs > 0.3 * splitting
    peak = freqs[band][np.argmax(spectrum[band])]
    assert peak == pytest.approx(splitting, abs=2 * (freqs[1] - freqs[0]))


def _beat_depth(cov, ir_filter, t_end=1500.0):
    """Relative modulation of g² − 1 at the phonon-polariton splitting.

    log(g² − 1) is fit by a cubic envelope plus a cosine and sine at the splitting;
    the depth is the amplitude of the oscillating part.
    """
    system = cov.system
    taus = np.arange(0.0, t_end + 1.0, 1.0)
    trace = g2_cross_trace(cov, system.phi, taus, ir_filter=ir_filter)
    splitting = ev_to_rate(system.omega_v_u - system.omega_v_l)
    design = np.column_stack(
        [taus**0, taus, taus**2, taus**3, np.cos(splitting * taus), np.sin(splitting * taus)]
    )
    coeffs, *_ = np.linalg.lstsq(design, np.log(trace.g2_cross - 1.0), rcond=None)
    return math.hypot(coeffs[4], coeffs[5])


@pytest.mark.parametrize("ir_filter", [IRFilter.UPPER, IRFilter.LOWER])
def test_single_branch_filter_removes_beats(pumped_cov, ir_filter):
    assert _beat_depth(pumped_cov, ir_filter) < 1e-3


def test_unfiltered_correlation_is_modulated(pumped_cov):
    assert _beat_depth(pumped_cov, IRFilter.BOTH) > 1e-2


def test_quantum_efficiency(params, pumped_cov):
    system = pumped_cov.system
    expected = system.gamma_s_l * pumped_cov.occupation(Mode.S_L) / (system.gamma_s_u * 1630.0)
    assert quantum_efficiency(pumped_cov) == pytest.approx(expected)
    with pytest.raises(ValueError):
        quantum_efficiency(_steady(params, 0.0))


def test_rates_without_pump_are_thermal(params):
    cov = _steady(params, 0.0)
    rates = emission_rates(cov)
    assert rates.vis_rate == pytest.approx(0.0, abs=1e-3)
    assert rates.excess_ir_rate == pytest.approx(0.0, abs=1.0)
    assert rates.phonon_rate == pytest.approx(0.0, abs=1.0)
    assert rates.ir_rate > 1e6


def test_pairs_balance_phonon_emission(pumped_cov):
    system = pumped_cov.system
    rates = emission_rates(pumped_cov)
    visible_excess = system.gamma_s_l * (pumped_cov.occupation(Mode.S_L) - system.n_th_s) / HBAR_EV_S
    assert rates.phonon_rate == pytest.approx(visible_excess, rel=1e-6)
    assert rates.excess_ir_rate > 0


def test_rates_linear_in_weak_pump(params):
    low = emission_rates(_steady(params, 10.0))
    high = emission_rates(_steady(params, 100.0))
    assert high.vis_rate / low.vis_rate == pytest.approx(10.0, rel=1e-2)
    assert high.excess_ir_rate / low.excess_ir_rate == pytest.approx(10.0, rel=1e-2)


# ========================================================================
# Energy-momentum matching
# ========================================================================

@pytest.mark.parametrize("branch", [PhononBranch.UPPER, PhononBranch.LOWER])
def test_locus_roots_satisfy_matching(params, branch):
    roots = matching_locus(K_I, branch, params)
    assert roots
    assert roots == sorted(roots)
    pump = exciton_polariton_basis(K_I, params).omega_u
    for k_f in roots:
        phonon = phonon_polariton_basis(K_I - k_f, params)
        omega_v = phonon.omega_u if branch is PhononBranch.UPPER else phonon.omega_l
        signal = exciton_polariton_basis(k_f, params).omega_l
        assert abs(pump - signal - omega_v) < 1e-6


def test_efficiency_peaks_on_locus(params):
    k_f_grid = np.round(np.arange(0.0, 1.4 + 1e-9, 0.02), 10)
    qe = [quantum_efficiency(_steady(params, 1630.0, K_I, k_f)) for k_f in k_f_grid]
    best = k_f_grid[int(np.argmax(qe))]
    roots = matching_locus(K_I, "upper", params) + matching_locus(K_I, "lower", params)
    assert min(abs(best - root) for root in roots) <= 0.04


def test_pair_rate_at_matched_point(params, locus_k_f):
    # photons/s at a continuous drive of 1e17 pump photons/s
    pair_rate = 1e17 * quantum_efficiency(_steady(params, N_PUMP, K_I, locus_k_f))
    assert 1e10 / 3 <= pair_rate <= 1e10 * 3


def test_efficiency_small_off_locus(params):
    roots = matching_locus(K_I, "upper", params) + matching_locus(K_I, "lower", params)
    k_f_grid = np.round(np.arange(0.0, 1.4 + 1e-9, 0.05), 10)
    off_locus = [k_f for k_f in k_f_grid if min(abs(k_f - root) for root in roots) >= 0.3]
    assert off_locus
    for k_f in off_locus:
        assert quantum_efficiency(_steady(params, N_PUMP, K_I, k_f)) <= 5e-9


# ========================================================================
# Witness maps
# ========================================================================

GRID_STEP = 0.05
K_I_AXIS = np.round(np.arange(0.4, 1.4 + 1e-9, GRID_STEP), 10)
K_F_AXIS = np.round(np.arange(0.0, 1.4 + 1e-9, GRID_STEP), 10)
N_BG_VIS, N_BG_IR = 1e-6, 1e-3
# E_N below this is roundoff of a separable state
ENTANGLEMENT_FLOOR = 1e-12


@pytest.fixture(scope="module")
def witness_grid(params):
    """Zero-delay E_N and g² over the wave-vector grid, clean and with backgrounds."""
    shape = (len(K_I_AXIS), len(K_F_AXIS))
    grid = {name: np.full(shape, np.nan) for name in ("e_n", "g2", "e_n_bg", "g2_bg")}
    for i, k_i in enumerate(K_I_AXIS):
        for j, k_f in enumerate(K_F_AXIS):
            try:
                cov = _steady(params, N_PUMP, k_i, k_f)
            except InstabilityError:
                continue
            phi = cov.system.phi
            grid["e_n"][i, j] = log_negativity(vis_ir_reduce(cov, phi, 0.0, 0.0))
            grid["g2"][i, j] = g2_cross(cov, phi, 0.0)
            grid["e_n_bg"][i, j] = log_negativity(vis_ir_reduce(cov, phi, N_BG_VIS, N_BG_IR))
            grid["g2_bg"][i, j] = g2_cross(cov, phi, 0.0, N_BG_VIS, N_BG_IR)
    return grid


def test_entangled_points_violate_cauchy_schwarz(witness_grid):
    entangled = np.nan_to_num(witness_grid["e_n"]) > ENTANGLEMENT_FLOOR
    bunched = np.nan_to_num(witness_grid["g2"]) > 2.0
    assert entangled.any()
    near_bunched = scipy.ndimage.binary_dilation(bunched, structure=np.ones((3, 3), dtype=bool))
    stray = [
        (K_I_AXIS[i], K_F_AXIS[j]) for i, j in zip(*np.nonzero(entangled & ~near_bunched))
    ]
    assert not stray


def test_witnesses_survive_background(witness_grid):
    assert np.any(np.nan_to_num(witness_grid["e_n_bg"]) > ENTANGLEMENT_FLOOR)
    assert np.any(np.nan_to_num(witness_grid["g2_bg"]) > 2.0)
    # backgrounds only add uncorrelated noise
    stable = ~np.isnan(witness_grid["e_n"])
    assert np.all(witness_grid["e_n_bg"][stable] <= witness_grid["e_n"][stable] + 1e-12)


def test_heralded_single_photons_somewhere_on_grid(witness_grid):
    g2 = witness_grid["g2"]
    heralded = [g2_heralded(float(value)) for value in g2[~np.isnan(g2)]]
    assert min(heralded) <= 0.05
