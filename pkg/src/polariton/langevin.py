"""
Linearized quantum Langevin system for one (k_i, k_f) transition.

Operators are ordered A = (s, s†, v_U, v_U†, v_L, v_L†), with s = s_L taken in the
frame rotating at the pump frequency ω_{s_U}(k_i). Then dA/dt = M A + F with a
time-independent drift M and noise correlations ⟨F(t) Fᵀ(t')⟩ = D δ(t − t').
"""

import logging
import math
from typing import Callable, Optional

import numpy as np
import scipy.linalg
import scipy.optimize

from .coupling import collective_coupling, couplings_from_bases
from .dispersion import (
    ev_to_rate,
    exciton_polariton_basis,
    phonon_polariton_basis,
    thermal_occupation,
)
from .errors import InstabilityError, InvalidStateError
from .params import SystemParams, default_params
from .schema import CouplingSet, CovarianceSet, LangevinSystem

logger = logging.getLogger(__name__)

DIMENSION = 6
# pump occupation beyond which a system is reported as never unstable
N_PUMP_CEILING = 1e12
# numerical failures surfaced as InvalidStateError
LINALG_ERRORS = (scipy.linalg.LinAlgError, ValueError, FloatingPointError)


# ============================================================
# Matrix assembly
# ============================================================

def _mode_block(omega: float, gamma: float) -> np.ndarray:
    return np.diag([-1j * omega - gamma / 2.0, 1j * omega - gamma / 2.0])


def _pair_block(G: complex) -> np.ndarray:
    # two-mode squeezing: only creation-creation / annihilation-annihilation terms
    return np.array([[0.0, -1j * G], [1j * np.conj(G), 0.0]])


def coupling_matrix(G_u: complex, G_l: complex) -> np.ndarray:
    """Pump-coupling part of the drift for collective couplings in 1/fs."""
    m = np.zeros((DIMENSION, DIMENSION), dtype=complex)
    for block, G in ((slice(2, 4), G_u), (slice(4, 6), G_l)):
        m[0:2, block] = _pair_block(G)
        m[block, 0:2] = _pair_block(G)
    return m


def assemble_drift(
    detuning_s: float,
    omega_vu: float,
    omega_vl: float,
    gamma_s: float,
    gamma_vu: float,
    gamma_vl: float,
    G_u: complex,
    G_l: complex,
) -> tuple[np.ndarray, np.ndarray]:
    """Build the drift matrix from rates in 1/fs.

    Args:
        detuning_s: Frame frequency of s (ω_{s_L} − ω_{s_U} in the pump frame)
        omega_vu, omega_vl: Phonon-polariton frame frequencies
        gamma_s, gamma_vu, gamma_vl: Energy decay rates
        G_u, G_l: Collective couplings to v_U and v_L

    Returns:
        (drift, coupling part of drift)
    """
    drift = np.zeros((DIMENSION, DIMENSION), dtype=complex)
    drift[0:2, 0:2] = _mode_block(detuning_s, gamma_s)
    drift[2:4, 2:4] = _mode_block(omega_vu, gamma_vu)
    drift[4:6, 4:6] = _mode_block(omega_vl, gamma_vl)
    coupling = coupling_matrix(G_u, G_l)
    return drift + coupling, coupling


def assemble_diffusion(gammas: tuple[float, float, float], n_th: tuple[float, ...]) -> np.ndarray:
    """Noise matrix with entries γ(1+n) at (a, a†) and γn at (a†, a) per mode."""
    diffusion = np.zeros((DIMENSION, DIMENSION), dtype=complex)
    for mode, (gamma, n) in enumerate(zip(gammas, n_th)):
        i = 2 * mode
        diffusion[i, i + 1] = gamma * (1.0 + n)
        diffusion[i + 1, i] = gamma * n
    return diffusion


def build_system(
    k_i: float,
    k_f: float,
    n_pump: float,
    p: Optional[SystemParams] = None,
    couplings: Optional[CouplingSet] = None,
) -> LangevinSystem:
    """Linearized system for pump polariton s_U(k_i) scattering into s_L(k_f).

    Args:
        k_i: Pump wave vector, 1/μm
        k_f: Signal wave vector, 1/μm
        n_pump: Occupation of the pumped upper polariton
        p: System parameters (defaults if None)
        couplings: Override for the single-polariton couplings (computed if None)

    Returns:
        LangevinSystem with drift and diffusion in 1/fs

    Raises:
        ValueError: if n_pump is negative
        DispersionDomainError: if k_i or k_f is out of range
    """
    p = p or default_params()
    if n_pump < 0:
        raise ValueError(f"n_pump must be nonnegative, got {n_pump}")

    basis_i = exciton_polariton_basis(k_i, p)
    basis_f = exciton_polariton_basis(k_f, p)
    phonon = phonon_polariton_basis(k_i - k_f, p)
    couplings = couplings or couplings_from_bases(basis_i, basis_f, phonon, p)

    gammas_ev = (basis_f.gamma_l, phonon.gamma_u, phonon.gamma_l)
    gammas = tuple(ev_to_rate(g) for g in gammas_ev)
    drift, coupling = assemble_drift(
        ev_to_rate(basis_f.omega_l - basis_i.omega_u),
        ev_to_rate(phonon.omega_u),
        ev_to_rate(phonon.omega_l),
        *gammas,
        ev_to_rate(collective_coupling(couplings.g_upper, n_pump)),
        ev_to_rate(collective_coupling(couplings.g_lower, n_pump)),
    )
    n_th = (
        thermal_occupation(basis_f.omega_l, p.kt),
        thermal_occupation(phonon.omega_u, p.kt),
        thermal_occupation(phonon.omega_l, p.kt),
    )

    return LangevinSystem(
        k_i=k_i,
        k_f=k_f,
        n_pump=n_pump,
        drift=drift,
        coupling_drift=coupling,
        diffusion=assemble_diffusion(gammas, n_th),
        omega_s_u=basis_i.omega_u,
        omega_s_l=basis_f.omega_l,
        omega_v_u=phonon.omega_u,
        omega_v_l=phonon.omega_l,
        gamma_s_u=basis_i.gamma_u,
        gamma_s_l=basis_f.gamma_l,
        gamma_v_u=phonon.gamma_u,
        gamma_v_l=phonon.gamma_l,
        gamma_ir=p.gamma_ir,
        n_th_s=n_th[0],
        n_th_vu=n_th[1],
        n_th_vl=n_th[2],
        couplings=couplings,
    )


def with_pump(system: LangevinSystem, n_pump: float) -> LangevinSystem:
    """Same transition at a different pump occupation."""
    coupling = coupling_matrix(
        ev_to_rate(collective_coupling(system.couplings.g_upper, n_pump)),
        ev_to_rate(collective_coupling(system.couplings.g_lower, n_pump)),
    )
    return LangevinSystem(
        **{
            **dict(system),
            "n_pump": n_pump,
            "drift": system.free_drift + coupling,
            "coupling_drift": coupling,
        }
    )


# ============================================================
# Stability
# ============================================================

def stability_margin(system: LangevinSystem) -> float:
    """Largest real part of the drift eigenvalues, 1/fs; negative means stable."""
    return float(np.max(scipy.linalg.eigvals(system.drift).real))


def _first_crossing(
    residual: Callable[[float], float], n_max: float, label: str
) -> float:
    """Smallest decade-bracketed pump occupation where ``residual`` turns nonnegative."""
    if residual(0.0) >= 0:
        raise InstabilityError(residual(0.0), 0.0)

    lo, hi = 0.0, 1.0
    while residual(hi) < 0:
        if hi >= n_max:
            logger.debug(f"{label}: no crossing below n_pump={n_max:.1e}")
            return math.inf
        lo, hi = hi, hi * 10.0

    root = scipy.optimize.bisect(residual, lo, hi, xtol=1e-300, rtol=1e-13, maxiter=400)
    logger.debug(f"{label}: crossing at n_pump={root:.6e} (residual {residual(root):.2e})")
    return float(root)


def instability_threshold(
    k_i: float,
    k_f: float,
    p: Optional[SystemParams] = None,
    couplings: Optional[CouplingSet] = None,
    n_max: float = N_PUMP_CEILING,
) -> float:
    """Pump occupation n* at which the linearized system turns unstable.

    Returns:
        n*, or ``math.inf`` if the system is stable up to ``n_max``
    """
    base = build_system(k_i, k_f, 0.0, p, couplings)
    return _first_crossing(
        lambda n: stability_margin(with_pump(base, n)), n_max, "instability threshold"
    )


def pulsed_applicability_bound(
    k_i: float,
    k_f: float,
    p: Optional[SystemParams] = None,
    couplings: Optional[CouplingSet] = None,
    n_max: float = 100 * N_PUMP_CEILING,
) -> float:
    """Initial pulse occupation n0 at which the peak gain equals the pump decay rate γ_{s_U}."""
    base = build_system(k_i, k_f, 0.0, p, couplings)
    pump_decay = ev_to_rate(base.gamma_s_u)
    return _first_crossing(
        lambda n: stability_margin(with_pump(base, n)) - pump_decay,
        n_max,
        "pulsed applicability bound",
    )


# ============================================================
# Covariances
# ============================================================

def _lyapunov_operator(drift: np.ndarray) -> np.ndarray:
    # vec(M C + C Mᵀ) = (M ⊗ I + I ⊗ M) vec(C), for row- and column-major vec alike
    eye = np.eye(drift.shape[0])
    return np.kron(drift, eye) + np.kron(eye, drift)


def steady_covariance(system: LangevinSystem) -> CovarianceSet:
    """Solve M C + C Mᵀ + D = 0 for the equal-time second moments.

    Raises:
        InstabilityError: if the drift has an eigenvalue with Re λ ≥ 0
        InvalidStateError: if the linear algebra fails or yields non-finite moments
    """
    try:
        margin = stability_margin(system)
        if margin >= 0:
            raise InstabilityError(margin, system.n_pump)
        vec = scipy.linalg.solve(_lyapunov_operator(system.drift), -system.diffusion.reshape(-1))
    except LINALG_ERRORS as exc:
        logger.error(f"Lyapunov solve failed at n_pump={system.n_pump:.3e}: {exc}")
        raise InvalidStateError(f"Lyapunov solve failed: {exc}") from exc

    moments = vec.reshape(DIMENSION, DIMENSION)
    if not np.all(np.isfinite(moments)):
        raise InvalidStateError(f"Non-finite steady moments at n_pump={system.n_pump:.3e}")
    return CovarianceSet(second_moments=moments, system=system)


def two_time_covariance(cov: CovarianceSet, tau: float) -> np.ndarray:
    """⟨A(t+τ) Aᵀ(t)⟩ = exp(M τ) C by the quantum regression theorem.

    Raises:
        ValueError: if tau is negative
        InvalidStateError: if the matrix exponential fails or overflows
    """
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    try:
        propagator = scipy.linalg.expm(cov.system.drift * tau)
    except LINALG_ERRORS as exc:
        logger.error(f"Propagator failed at tau={tau:.3e} fs: {exc}")
        raise InvalidStateError(f"Propagator failed at tau={tau} fs: {exc}") from exc

    result = propagator @ cov.second_moments
    if not np.all(np.isfinite(result)):
        raise InvalidStateError(f"Non-finite two-time covariance at tau={tau} fs")
    return result


def thermal_moments(system: LangevinSystem) -> np.ndarray:
    """Second moments of the decoupled thermal product state: ⟨a a†⟩ = 1 + n, ⟨a† a⟩ = n."""
    return assemble_diffusion((1.0, 1.0, 1.0), (system.n_th_s, system.n_th_vu, system.n_th_vl))


# ============================================================
# Moment ODE integration
# ============================================================

def moment_derivative(drift: np.ndarray, diffusion: np.ndarray, c: np.ndarray) -> np.ndarray:
    """dC/dt = M C + C Mᵀ + D."""
    return drift @ c + c @ drift.T + diffusion


def evolve_moments(
    system: LangevinSystem,
    c0: np.ndarray,
    t_grid: np.ndarray,
    envelope: Callable[[float], float] = lambda t: 1.0,
) -> np.ndarray:
    """Integrate the moment ODE with a time-dependent pump by fixed-step RK4.

    The drift at time t is M_free + envelope(t) · M_coupling, so ``envelope`` scales
    the collective couplings (e.g. exp(−γ_{s_U} t / 2) for a decaying pulse).

    Args:
        system: System built at the initial pump occupation
        c0: Initial second moments
        t_grid: Increasing times in fs; each interval is one RK4 step

    Returns:
        Array of shape (len(t_grid), 6, 6)
    """
    free, coupling, diffusion = system.free_drift, system.coupling_drift, system.diffusion

    def rhs(t: float, c: np.ndarray) -> np.ndarray:
        return moment_derivative(free + envelope(t) * coupling, diffusion, c)

    out = np.empty((len(t_grid), DIMENSION, DIMENSION), dtype=complex)
    c = np.asarray(c0, dtype=complex)
    out[0] = c
    for i in range(len(t_grid) - 1):
        t, h = t_grid[i], t_grid[i + 1] - t_grid[i]
        k1 = rhs(t, c)
        k2 = rhs(t + h / 2, c + h / 2 * k1)
        k3 = rhs(t + h / 2, c + h / 2 * k2)
        k4 = rhs(t + h, c + h * k3)
        c = c + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = c
    return out


def relax_moments(
    system: LangevinSystem,
    c0: Optional[np.ndarray] = None,
    dt: Optional[float] = None,
    tol: float = 1e-14,
    max_steps: int = 1_000_000,
) -> np.ndarray:
    """Run RK4 on the moment ODE until ‖dC/dt‖_max < tol.

    For a linear ODE with constant forcing one RK4 step is the affine map
    y → R(hK) y + h S(hK) d, precomputed once here.
    """
    n = DIMENSION * DIMENSION
    lyap = _lyapunov_operator(system.drift)
    forcing = system.diffusion.reshape(-1)
    if dt is None:
        dt = 1.0 / np.max(np.abs(scipy.linalg.eigvals(lyap)))

    z = dt * lyap
    eye = np.eye(n)
    z2 = z @ z
    z3 = z2 @ z
    step = eye + z + z2 / 2 + z3 / 6 + z3 @ z / 24
    offset = dt * (eye + z / 2 + z2 / 6 + z3 / 24) @ forcing

    y = (thermal_moments(system) if c0 is None else np.asarray(c0, dtype=complex)).reshape(-1)
    for _ in range(max_steps):
        if np.max(np.abs(lyap @ y + forcing)) < tol:
            return y.reshape(DIMENSION, DIMENSION)
        y = step @ y + offset
    raise RuntimeError(f"Moment ODE did not relax within {max_steps} steps (dt={dt:.3g} fs)")
