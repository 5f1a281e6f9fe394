"""Bare dispersions, exciton-polariton Hopfield bases and phonon-polariton rotation."""

import logging
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from .errors import DispersionDomainError
from .params import SystemParams, default_params
from .schema import ExcitonPolaritonBasis, LRBranch, PhononPolaritonBasis

logger = logging.getLogger(__name__)


# ============================================================
# Unit constants
# ============================================================

HBAR_C_EV_UM = 0.1973269804
HBAR_EV_FS = 0.6582119569
HBAR_EV_S = 6.582119569e-16


def ev_to_rate(energy):
    """Convert an energy in eV to an angular frequency in 1/fs."""
    return energy / HBAR_EV_FS


# ============================================================
# Bare modes
# ============================================================

def lr_freq(k: ArrayLike, branch: LRBranch | str, p: Optional[SystemParams] = None):
    """Lattice-resonance photon energy of the left or right branch.

    Args:
        k: Wave vector(s), 1/μm
        branch: ``left`` or ``right``
        p: System parameters (defaults if None)

    Returns:
        Energy in eV, same shape as ``k``
    """
    p = p or default_params()
    slope = HBAR_C_EV_UM / p.n_eff
    k = np.asarray(k, dtype=float)
    if LRBranch(branch) is LRBranch.LEFT:
        result = -slope * (k - p.lr_crossing_k)
    else:
        result = slope * (k + p.lr_crossing_k)
    return result if result.ndim else float(result)


def ir_freq(q: ArrayLike, p: Optional[SystemParams] = None):
    """IR cavity photon energy ω_IR0 + α_IR q², eV."""
    p = p or default_params()
    q = np.asarray(q, dtype=float)
    result = p.omega_ir0 + p.alpha_ir * q**2
    return result if result.ndim else float(result)


def thermal_occupation(omega: ArrayLike, kT: float):
    """Bose-Einstein occupation 1/(exp(ω/kT) − 1).

    Raises:
        ValueError: if ``omega`` or ``kT`` is not strictly positive
    """
    omega = np.asarray(omega, dtype=float)
    if kT <= 0 or np.any(omega <= 0):
        raise ValueError(f"thermal_occupation needs omega > 0 and kT > 0 (kT={kT})")
    result = 1.0 / np.expm1(omega / kT)
    return result if result.ndim else float(result)


# ============================================================
# Exciton-polaritons
# ============================================================

def _check_domain(k: ArrayLike, p: SystemParams) -> None:
    k_max = p.lr_crossing_k
    if np.any(np.abs(np.asarray(k, dtype=float)) >= k_max):
        raise DispersionDomainError(
            f"|k| must be below 2π/a = {k_max:.4f} 1/μm for positive LR energies, got {k}"
        )


def visible_matrix(k: ArrayLike, p: SystemParams) -> np.ndarray:
    """Real symmetric M_Vis in the bare basis (Exc, VisR, VisL); shape (..., 3, 3)."""
    k = np.asarray(k, dtype=float)
    m = np.zeros(k.shape + (3, 3))
    m[..., 0, 0] = p.omega_exc_shifted
    m[..., 1, 1] = lr_freq(k, LRBranch.RIGHT, p)
    m[..., 2, 2] = lr_freq(k, LRBranch.LEFT, p)
    m[..., 0, 1] = m[..., 1, 0] = p.rabi_vis
    m[..., 0, 2] = m[..., 2, 0] = p.rabi_vis
    return m


def exciton_polariton_energies(k: ArrayLike, p: Optional[SystemParams] = None) -> np.ndarray:
    """Ascending eigenfrequencies (ω_L, ω_U, ω_h) for one or many k; shape (..., 3)."""
    p = p or default_params()
    _check_domain(k, p)
    return np.linalg.eigvalsh(visible_matrix(k, p))


def fix_gauge(vectors: np.ndarray) -> np.ndarray:
    """Rephase each column so that its largest-magnitude entry is real positive."""
    vectors = np.asarray(vectors, dtype=complex)
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivots) / pivots)[np.newaxis, :]


def exciton_polariton_basis(k: float, p: Optional[SystemParams] = None) -> ExcitonPolaritonBasis:
    """Diagonalize M_Vis at one wave vector.

    Args:
        k: Wave vector, 1/μm
        p: System parameters (defaults if None)

    Returns:
        Basis with ascending eigenfrequencies, gauge-fixed Hopfield matrix and
        Hopfield-weighted linewidths

    Raises:
        DispersionDomainError: if |k| ≥ 2π/a
    """
    p = p or default_params()
    _check_domain(k, p)

    energies, vectors = np.linalg.eigh(visible_matrix(k, p))
    hopfield = fix_gauge(vectors)

    bare_gammas = np.array([p.gamma_exc, p.gamma_vis_r, p.gamma_vis_l])
    gammas = bare_gammas @ np.abs(hopfield) ** 2

    return ExcitonPolaritonBasis(
        k=float(k),
        omega_l=float(energies[0]),
        omega_u=float(energies[1]),
        omega_h=float(energies[2]),
        hopfield=hopfield,
        gamma_l=float(gammas[0]),
        gamma_u=float(gammas[1]),
        gamma_h=float(gammas[2]),
    )


# ============================================================
# Phonon-polaritons
# ============================================================

def mixing_angle(q: ArrayLike, p: Optional[SystemParams] = None):
    """Phonon-polariton angle φ_q ∈ [0, π/2]; tan φ = √(δ²/4 + Ω²)/Ω − δ/(2Ω)."""
    p = p or default_params()
    delta = p.omega_vib - np.asarray(ir_freq(q, p))
    root = np.hypot(delta / 2.0, p.rabi_ir)
    # equal to (root - δ/2)/Ω, written without cancellation for δ > 0
    tan_phi = np.where(
        delta > 0, p.rabi_ir / (root + np.abs(delta) / 2.0), (root - delta / 2.0) / p.rabi_ir
    )
    phi = np.arctan(tan_phi)
    return phi if phi.ndim else float(phi)


def phonon_polariton_basis(q: float, p: Optional[SystemParams] = None) -> PhononPolaritonBasis:
    """Rotate IR photon and bright vibration into upper/lower phonon-polaritons."""
    p = p or default_params()
    omega_ir = ir_freq(q, p)
    delta = p.omega_vib - omega_ir
    centre = (p.omega_vib + omega_ir) / 2.0
    root = math.hypot(delta / 2.0, p.rabi_ir)

    phi = mixing_angle(q, p)
    sin2, cos2 = math.sin(phi) ** 2, math.cos(phi) ** 2

    return PhononPolaritonBasis(
        q=float(q),
        phi=phi,
        omega_u=centre + root,
        omega_l=centre - root,
        gamma_u=p.gamma_ir * sin2 + p.gamma_vib * cos2,
        gamma_l=p.gamma_ir * cos2 + p.gamma_vib * sin2,
    )


def phonon_polariton_energies(q: ArrayLike, p: Optional[SystemParams] = None):
    """Vectorized (ω_{v_U}, ω_{v_L}) for one or many q."""
    p = p or default_params()
    omega_ir = np.asarray(ir_freq(q, p))
    centre = (p.omega_vib + omega_ir) / 2.0
    root = np.hypot((p.omega_vib - omega_ir) / 2.0, p.rabi_ir)
    return centre + root, centre - root
