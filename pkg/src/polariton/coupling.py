"""Optomechanical coupling constants between exciton-polariton pairs and phonon-polaritons."""

import logging
import math
from typing import Optional

from .dispersion import exciton_polariton_basis, phonon_polariton_basis
from .params import SystemParams, default_params
from .schema import (
    BareComponent,
    CouplingSet,
    ExcitonBranch,
    ExcitonPolaritonBasis,
    PhononPolaritonBasis,
)

logger = logging.getLogger(__name__)


def couplings_from_bases(
    basis_i: ExcitonPolaritonBasis,
    basis_f: ExcitonPolaritonBasis,
    phonon: PhononPolaritonBasis,
    p: SystemParams,
) -> CouplingSet:
    """Couplings of the upper polariton at k_i to the lower polariton at k_f.

    Args:
        basis_i: Exciton-polariton basis at k_i (supplies the upper branch)
        basis_f: Exciton-polariton basis at k_f (supplies the lower branch)
        phonon: Phonon-polariton basis at q = k_i - k_f
        p: System parameters

    Returns:
        CouplingSet with g_vib, g_ir and their rotation into (g_upper, g_lower)
    """
    upper, lower = ExcitonBranch.UPPER, ExcitonBranch.LOWER
    scale = p.lambda_hr / math.sqrt(p.n_exc)

    xu_exc = basis_i.amplitude(upper, BareComponent.EXC)
    xu_vis = basis_i.visible_amplitude(upper)
    xl_exc = basis_f.amplitude(lower, BareComponent.EXC)
    xl_vis = basis_f.visible_amplitude(lower)

    g_vib = scale * p.rabi_vis * (xu_vis.conjugate() * xl_exc - xu_exc.conjugate() * xl_vis)
    g_ir = -scale * p.rabi_ir * xu_exc.conjugate() * xl_exc

    sin_phi, cos_phi = math.sin(phonon.phi), math.cos(phonon.phi)
    return CouplingSet(
        k_i=basis_i.k,
        k_f=basis_f.k,
        g_vib=g_vib,
        g_ir=g_ir,
        g_upper=g_ir * sin_phi + g_vib * cos_phi,
        g_lower=g_ir * cos_phi - g_vib * sin_phi,
        phi=phonon.phi,
    )


def coupling_set(k_i: float, k_f: float, p: Optional[SystemParams] = None) -> CouplingSet:
    """Single-polariton couplings for the transition s_U(k_i) → s_L(k_f) + v(k_i − k_f).

    Raises:
        DispersionDomainError: if k_i or k_f lies outside the dispersion domain
    """
    p = p or default_params()
    couplings = couplings_from_bases(
        exciton_polariton_basis(k_i, p),
        exciton_polariton_basis(k_f, p),
        phonon_polariton_basis(k_i - k_f, p),
        p,
    )
    logger.debug(
        f"Couplings k_i={k_i:.4f} k_f={k_f:.4f}: |g_U|={abs(couplings.g_upper):.3e} "
        f"|g_L|={abs(couplings.g_lower):.3e} eV"
    )
    return couplings


def collective_coupling(g: complex, n_pump: float) -> complex:
    """Drive-enhanced coupling G = g √n_pump.

    Raises:
        ValueError: if n_pump is negative
    """
    if n_pump < 0:
        raise ValueError(f"n_pump must be nonnegative, got {n_pump}")
    return g * math.sqrt(n_pump)
