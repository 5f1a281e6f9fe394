"""Quadrature covariances and logarithmic negativity of mode pairs."""

import logging
import math

import numpy as np
import scipy.linalg

from .errors import InvalidStateError
from .schema import CovarianceSet, ModePair, QuadratureCovariance

logger = logging.getLogger(__name__)

# (a, a†) -> (x, p) with x = (a + a†)/√2, p = -i(a - a†)/√2
A_TO_X = np.array([[1.0, 1.0], [-1j, 1j]]) / math.sqrt(2.0)
_A_TO_X_PAIR = scipy.linalg.block_diag(A_TO_X, A_TO_X)

SYMPLECTIC_FORM = scipy.linalg.block_diag([[0.0, 1.0], [-1.0, 0.0]], [[0.0, 1.0], [-1.0, 0.0]])

_PAIR_SLOTS = {
    ModePair.S_VU: [0, 1, 2, 3],
    ModePair.S_VL: [0, 1, 4, 5],
}


def to_quadratures(moments: np.ndarray, pair_label: ModePair, **extra) -> QuadratureCovariance:
    """Transform a 4×4 mode-ordered correlation matrix of two modes into 𝓡."""
    xx = _A_TO_X_PAIR @ moments @ _A_TO_X_PAIR.T
    symmetric = (xx + xx.T) / 2.0
    leak = np.max(np.abs(symmetric.imag))
    if leak > 1e-8 * max(1.0, np.max(np.abs(symmetric.real))):
        logger.debug(f"Discarding imaginary part {leak:.2e} of symmetrized quadratures")
    return QuadratureCovariance(r=symmetric.real.copy(), pair_label=pair_label, **extra)


def quadrature_reduce(cov: CovarianceSet, pair: ModePair) -> QuadratureCovariance:
    """Quadrature covariance of s_L with one phonon-polariton.

    Raises:
        ValueError: for ModePair.VIS_IR (use :func:`vis_ir_reduce`)
    """
    pair = ModePair(pair)
    if pair not in _PAIR_SLOTS:
        raise ValueError(f"quadrature_reduce handles polariton pairs only, got {pair.value}")
    slots = _PAIR_SLOTS[pair]
    return to_quadratures(cov.second_moments[np.ix_(slots, slots)], pair)


def vis_ir_reduce(
    cov: CovarianceSet, phi: float, n_bg_vis: float, n_bg_ir: float
) -> QuadratureCovariance:
    """Quadrature covariance of the visible output s_L and the IR output a_IR.

    a_IR = v_L cos φ + v_U sin φ. Background occupations are added as uncorrelated
    thermal noise on the ⟨a a†⟩ and ⟨a† a⟩ entries of each output mode.

    Raises:
        ValueError: if a background occupation is negative
    """
    if n_bg_vis < 0 or n_bg_ir < 0:
        raise ValueError(f"Background occupations must be nonnegative ({n_bg_vis}, {n_bg_ir})")

    s, c = math.sin(phi), math.cos(phi)
    transform = np.zeros((4, 6))
    transform[0, 0] = transform[1, 1] = 1.0
    transform[2, 2] = transform[3, 3] = s
    transform[2, 4] = transform[3, 5] = c

    moments = transform @ cov.second_moments @ transform.T
    n_vis = float(moments[1, 0].real)
    n_ir = float(moments[3, 2].real)

    noise = np.zeros((4, 4))
    noise[0, 1] = noise[1, 0] = n_bg_vis
    noise[2, 3] = noise[3, 2] = n_bg_ir

    return to_quadratures(
        moments + noise,
        ModePair.VIS_IR,
        snr_vis=n_vis / n_bg_vis if n_bg_vis > 0 else math.inf,
        snr_ir=n_ir / n_bg_ir if n_bg_ir > 0 else math.inf,
    )


def physicality_margin(q: QuadratureCovariance) -> float:
    """Smallest eigenvalue of 𝓡 + (i/2)Ω; nonnegative for a physical state."""
    return float(np.min(np.linalg.eigvalsh(q.r + 0.5j * SYMPLECTIC_FORM)))


def symplectic_eigenvalue(q: QuadratureCovariance) -> float:
    """Smallest symplectic eigenvalue ν of the partially transposed covariance.

    ν² is the smaller root of ν⁴ − Δν² + det𝓡 = 0 with
    Δ = det C11 + det C22 − 2 det C12. Writing ξ = iν turns this into
    ξ⁴ + Δξ² + det𝓡 = 0, so |ξ| = ν.

    Raises:
        InvalidStateError: if the roots are not real and nonnegative
    """
    det11, det22 = np.linalg.det(q.c11), np.linalg.det(q.c22)
    det12, det_r = np.linalg.det(q.c12), np.linalg.det(q.r)
    delta = det11 + det22 - 2.0 * det12

    discriminant = delta**2 - 4.0 * det_r
    if discriminant < -1e-9 * max(delta**2, 1e-30):
        raise InvalidStateError(f"Complex symplectic spectrum (discriminant {discriminant:.3e})")
    nu_sq = (delta - math.sqrt(max(discriminant, 0.0))) / 2.0
    if nu_sq < -1e-12:
        raise InvalidStateError(f"Negative symplectic eigenvalue squared {nu_sq:.3e}")
    return math.sqrt(max(nu_sq, 0.0))


def log_negativity(q: QuadratureCovariance) -> float:
    """E_N = max(0, −ln 2ν) with ν the smallest symplectic eigenvalue of the partial transpose.

    Raises:
        InvalidStateError: for unphysical covariances
    """
    nu = symplectic_eigenvalue(q)
    if nu == 0.0:
        raise InvalidStateError(f"Vanishing symplectic eigenvalue for pair {q.pair_label.value}")
    return max(0.0, -math.log(2.0 * nu))
