"""Bare dispersions, Hopfield bases and phonon-polaritons."""

import math

import numpy as np
import pytest

from src.polariton import (
    HBAR_C_EV_UM,
    DispersionDomainError,
    LRBranch,
    exciton_polariton_basis,
    exciton_polariton_energies,
    ir_freq,
    lr_freq,
    mixing_angle,
    phonon_polariton_basis,
    phonon_polariton_energies,
    thermal_occupation,
)
from src.polariton.dispersion import visible_matrix

Q_RESONANT = math.sqrt(0.06 / 0.04)


# ========================================================================
# Bare modes
# ========================================================================

def test_lattice_resonances_cross_at_zero(params):
    expected = HBAR_C_EV_UM / params.n_eff * params.lr_crossing_k
    assert lr_freq(0.0, LRBranch.LEFT, params) == pytest.approx(expected, rel=1e-14)
    assert lr_freq(0.0, "right", params) == pytest.approx(expected, rel=1e-14)


def test_branches_mirror_each_other(params):
    assert lr_freq(1.0, LRBranch.RIGHT, params) == pytest.approx(
        lr_freq(-1.0, LRBranch.LEFT, params), rel=1e-14
    )


def test_dispersions_accept_arrays(params):
    k = np.linspace(-2, 2, 5)
    right = lr_freq(k, LRBranch.RIGHT, params)
    assert right.shape == (5,)
    assert np.allclose(right, [lr_freq(x, LRBranch.RIGHT, params) for x in k])
    assert np.allclose(ir_freq(k, params), 0.14 + 0.04 * k**2)


def test_ir_cavity_reaches_vibration_at_resonant_q(params):
    assert ir_freq(0.0, params) == 0.14
    assert ir_freq(Q_RESONANT, params) == pytest.approx(0.2, rel=1e-12)


def test_thermal_occupation():
    assert thermal_occupation(0.025, 0.025) == pytest.approx(1 / (math.e - 1))
    assert thermal_occupation(2.5, 0.025) < 1e-40
    with pytest.raises(ValueError):
        thermal_occupation(0.0, 0.025)
    with pytest.raises(ValueError):
        thermal_occupation(0.1, 0.0)


# ========================================================================
# Exciton-polaritons
# ========================================================================

def test_energies_ascending_and_labelled(params):
    basis = exciton_polariton_basis(1.0, params)
    assert basis.omega_l < basis.omega_u < basis.omega_h
    assert np.allclose(basis.frequencies, exciton_polariton_energies(1.0, params))


def test_trace_preserved_for_random_k(params):
    rng = np.random.default_rng(7)
    for k in rng.uniform(-3, 3, 20):
        basis = exciton_polariton_basis(k, params)
        trace = np.trace(visible_matrix(k, params))
        assert basis.frequencies.sum() == pytest.approx(trace, rel=1e-12)


def test_hopfield_matrix_diagonalizes(params):
    basis = exciton_polariton_basis(0.4, params)
    w = basis.hopfield
    assert np.allclose(w.conj().T @ w, np.eye(3), atol=1e-12)
    assert np.allclose(w @ np.diag(basis.frequencies) @ w.conj().T, visible_matrix(0.4, params))


def test_gauge_largest_entry_real_positive(params):
    w = exciton_polariton_basis(-1.3, params).hopfield
    for column in w.T:
        pivot = column[np.argmax(np.abs(column))]
        assert pivot.real > 0
        assert pivot.imag == 0


def test_linewidths_conserve_total(params):
    basis = exciton_polariton_basis(0.7, params)
    total = params.gamma_exc + params.gamma_vis_l + params.gamma_vis_r
    assert basis.gamma_l + basis.gamma_u + basis.gamma_h == pytest.approx(total, rel=1e-12)


def test_vectorized_energies_match_single_points(params):
    k = np.array([-0.5, 0.0, 0.9])
    batch = exciton_polariton_energies(k, params)
    assert batch.shape == (3, 3)
    for row, k_value in zip(batch, k):
        assert np.allclose(row, exciton_polariton_basis(k_value, params).frequencies)


@pytest.mark.parametrize("k", [2 * math.pi / 0.35, -20.0])
def test_out_of_zone_rejected(params, k):
    with pytest.raises(DispersionDomainError):
        exciton_polariton_basis(k, params)
    with pytest.raises(ValueError):
        exciton_polariton_energies([0.0, k], params)


# ========================================================================
# Phonon-polaritons
# ========================================================================

def test_resonant_phonon_polaritons(params):
    basis = phonon_polariton_basis(Q_RESONANT, params)
    assert basis.phi == pytest.approx(math.pi / 4, rel=1e-9)
    assert basis.omega_u == pytest.approx(0.216, rel=1e-9)
    assert basis.omega_l == pytest.approx(0.184, rel=1e-9)
    assert basis.gamma_u == pytest.approx(0.003, rel=1e-9)
    assert basis.gamma_l == pytest.approx(0.003, rel=1e-9)


def test_mixing_angle_matches_direct_formula(params):
    q = np.linspace(-2.5, 2.5, 11)
    delta = params.omega_vib - ir_freq(q, params)
    direct = np.arctan(
        np.sqrt(delta**2 / 4 + params.rabi_ir**2) / params.rabi_ir - delta / (2 * params.rabi_ir)
    )
    assert np.allclose(mixing_angle(q, params), direct, rtol=1e-10)


def test_mixing_angle_range_and_monotonic(params):
    q = np.linspace(0, 10, 101)
    phi = mixing_angle(q, params)
    assert np.all((phi >= 0) & (phi <= math.pi / 2))
    assert np.all(np.diff(phi) > 0)


def test_phonon_energies_vectorized(params):
    upper, lower = phonon_polariton_energies(np.array([0.3, 1.1]), params)
    basis = phonon_polariton_basis(1.1, params)
    assert upper[1] == pytest.approx(basis.omega_u)
    assert lower[1] == pytest.approx(basis.omega_l)
    assert np.all(upper - lower >= 2 * params.rabi_ir - 1e-15)
