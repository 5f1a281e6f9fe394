"""
Truncated-Fock master-equation solver for the three-mode system (s_L, v_U, v_L).

The density matrix is integrated in a frame where both phonon-polaritons rotate at
ν = (ω_{v_U} + ω_{v_L})/2 and s_L at ω_{s_U} − ν. Pair terms v† s† are invariant
under this rotation and the dissipators are frame independent, so occupations and
equal-time correlators coincide with those of the pump frame while the residual
frequencies stay at the scale of the phonon-polariton splitting.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
import scipy.integrate
import scipy.sparse as sp

from .dispersion import ev_to_rate
from .errors import InvalidStateError, TruncationOverflowError
from .langevin import build_system
from .params import SystemParams, default_params
from .schema import FockConfig, FockMoments, LangevinSystem, PulseTrajectory

logger = logging.getLogger(__name__)

MIN_OCCUPATION = 1e-12
TRACE_TOLERANCE = 1e-6
POSITIVITY_TOLERANCE = 1e-8
STEP_SAFETY = 0.02


# ============================================================
# Fock space
# ============================================================

def _destroy(cutoff: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, cutoff, dtype=float)), 1, format="csr")


@dataclass(frozen=True)
class FockSpace:
    """Annihilation operators of the three modes on the truncated product space."""

    dims: tuple[int, int, int]
    s: sp.csr_matrix
    v_u: sp.csr_matrix
    v_l: sp.csr_matrix

    @property
    def dimension(self) -> int:
        return self.dims[0] * self.dims[1] * self.dims[2]

    def number_diagonals(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Diagonals of n_s, n_U, n_L."""
        return tuple((op.conj().T @ op).diagonal().real for op in (self.s, self.v_u, self.v_l))

    def ir_mode(self, phi: float) -> sp.csr_matrix:
        """a_IR = v_L cos φ + v_U sin φ."""
        return (math.cos(phi) * self.v_l + math.sin(phi) * self.v_u).tocsr()


@lru_cache(maxsize=16)
def fock_space(dims: tuple[int, int, int]) -> FockSpace:
    """Operators for cutoffs (N_s, N_U, N_L), cached per shape."""
    eyes = [sp.identity(n, format="csr") for n in dims]
    ops = []
    for mode in range(3):
        factors = [_destroy(dims[m]) if m == mode else eyes[m] for m in range(3)]
        ops.append(sp.kron(sp.kron(factors[0], factors[1]), factors[2], format="csr"))
    return FockSpace(dims=tuple(dims), s=ops[0], v_u=ops[1], v_l=ops[2])


def thermal_state(cutoff: int, n_th: float) -> np.ndarray:
    """Geometric Fock distribution with mean n_th, truncated at ``cutoff`` and renormalized."""
    if n_th <= 0:
        populations = np.zeros(cutoff)
        populations[0] = 1.0
        return populations
    populations = (n_th / (1.0 + n_th)) ** np.arange(cutoff)
    return populations / populations.sum()


def _product_thermal(dims: tuple[int, int, int], n_th: tuple[float, float, float]) -> np.ndarray:
    populations = thermal_state(dims[0], n_th[0])
    for cutoff, n in zip(dims[1:], n_th[1:]):
        populations = np.kron(populations, thermal_state(cutoff, n))
    return np.diag(populations).astype(complex)


# ============================================================
# Observables
# ============================================================

def _expect(op: sp.spmatrix, rho: np.ndarray) -> complex:
    # tr(O ρ) = Σ_ij O_ij ρ_ji
    return complex(op.multiply(rho.T).sum())


def fock_moments(rho: np.ndarray, phi: float, dims: tuple[int, int, int]) -> FockMoments:
    """Occupations, ⟨v_U† v_L⟩ and equal-time g²_Vis-IR of a density matrix.

    g² is NaN when either occupation is below 1e-12.
    """
    space = fock_space(tuple(dims))
    populations = np.diag(rho).real
    n_s, n_u, n_l = (float(populations @ d) for d in space.number_diagonals())

    a_ir = space.ir_mode(phi)
    n_ir = _expect(a_ir.conj().T @ a_ir, rho).real
    vu_vl = _expect(space.v_u.conj().T @ space.v_l, rho)

    if n_s < MIN_OCCUPATION or n_ir < MIN_OCCUPATION:
        g2 = math.nan
    else:
        pair = a_ir @ space.s
        g2 = _expect(pair.conj().T @ pair, rho).real / (n_s * n_ir)
    return FockMoments(n_s=n_s, n_vu=n_u, n_vl=n_l, n_ir=n_ir, vu_vl=vu_vl, g2_cross=g2)


def g2_cross_equal_time(rho: np.ndarray, phi: float, dims: tuple[int, int, int]) -> float:
    """⟨s† a_IR† a_IR s⟩ / (⟨s† s⟩⟨a_IR† a_IR⟩) computed directly from ρ.

    Raises:
        InvalidStateError: if either occupation is below 1e-12
    """
    moments = fock_moments(rho, phi, dims)
    if math.isnan(moments.g2_cross):
        raise InvalidStateError(
            f"Equal-time g² undefined: n_s={moments.n_s:.3e}, n_ir={moments.n_ir:.3e}"
        )
    return moments.g2_cross


def _top_populations(rho: np.ndarray, dims: tuple[int, int, int]) -> dict[str, float]:
    cube = np.diag(rho).real.reshape(dims)
    return {
        "s_l": float(cube[-1, :, :].sum()),
        "v_u": float(cube[:, -1, :].sum()),
        "v_l": float(cube[:, :, -1].sum()),
    }


# ============================================================
# Generator
# ============================================================

@dataclass(frozen=True)
class _Generator:
    """dρ/dt = −i(A ρ − ρ A†) + Σ c ρ c† with A = H − (i/2) Σ c†c."""

    static: sp.csr_matrix
    pump: sp.csr_matrix
    jumps: tuple[sp.csr_matrix, ...]
    max_rate: float

    def __call__(self, rho: np.ndarray, envelope: float) -> np.ndarray:
        x = self.static @ rho
        if envelope:
            x = x + envelope * (self.pump @ rho)
        # ρ is Hermitian, so ρ A† = (A ρ)† and ρ c† = (c ρ)†
        out = -1j * (x - x.conj().T)
        for c in self.jumps:
            out += c @ (c @ rho).conj().T
        return out


def _generator(system: LangevinSystem, space: FockSpace) -> _Generator:
    frame = (system.omega_v_u + system.omega_v_l) / 2.0
    detuning_s = ev_to_rate(system.omega_s_l - system.omega_s_u + frame)
    omega_u = ev_to_rate(system.omega_v_u - frame)
    omega_l = ev_to_rate(system.omega_v_l - frame)
    gamma_s, gamma_u, gamma_l = (
        ev_to_rate(g) for g in (system.gamma_s_l, system.gamma_v_u, system.gamma_v_l)
    )
    G_u = ev_to_rate(system.couplings.g_upper * math.sqrt(system.n_pump))
    G_l = ev_to_rate(system.couplings.g_lower * math.sqrt(system.n_pump))

    s, u, l = space.s, space.v_u, space.v_l
    sd, ud, ld = s.conj().T, u.conj().T, l.conj().T

    hamiltonian = detuning_s * (sd @ s) + omega_u * (ud @ u) + omega_l * (ld @ l)
    creation = G_u * (ud @ sd) + G_l * (ld @ sd)
    pump = (creation + creation.conj().T).tocsr()

    jumps = [math.sqrt(gamma_s) * s]
    for op, gamma, n_th in ((u, gamma_u, system.n_th_vu), (l, gamma_l, system.n_th_vl)):
        jumps.append(math.sqrt(gamma * (1.0 + n_th)) * op)
        if n_th > 0:
            jumps.append(math.sqrt(gamma * n_th) * op.conj().T)
    decay = sum((c.conj().T @ c for c in jumps), sp.csr_matrix(hamiltonian.shape))

    max_rate = max(
        abs(detuning_s), abs(omega_u), abs(omega_l), abs(G_u), abs(G_l), gamma_s, gamma_u, gamma_l
    )
    return _Generator(
        static=(hamiltonian - 0.5j * decay).tocsr(),
        pump=pump,
        jumps=tuple(c.tocsr() for c in jumps),
        max_rate=max_rate,
    )


def _step_plan(fc: FockConfig, t_end: float, max_rate: float) -> tuple[float, int]:
    dt = fc.dt if fc.dt is not None else STEP_SAFETY / max_rate
    n_steps = max(1, math.ceil(t_end / dt))
    return t_end / n_steps, n_steps


def _integrate(
    generator: _Generator,
    rho: np.ndarray,
    envelope: Callable[[float], float],
    dt: float,
    n_steps: int,
    store_every: int,
    on_store: Callable[[float, np.ndarray], None],
) -> np.ndarray:
    """Fixed-step RK4; ``on_store`` sees t = 0, every ``store_every`` steps and the end."""
    on_store(0.0, rho)
    for step in range(n_steps):
        t = step * dt
        e0, e_mid, e1 = envelope(t), envelope(t + dt / 2), envelope(t + dt)
        k1 = generator(rho, e0)
        k2 = generator(rho + dt / 2 * k1, e_mid)
        k3 = generator(rho + dt / 2 * k2, e_mid)
        k4 = generator(rho + dt * k3, e1)
        rho = rho + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if (step + 1) % store_every == 0 or step + 1 == n_steps:
            on_store((step + 1) * dt, rho)
    return rho


class _Recorder:
    """Collects observables at stored steps; enforces state validity and the truncation limit."""

    def __init__(self, phi: float, fc: FockConfig):
        self.phi = phi
        self.fc = fc
        self.times: list[float] = []
        self.moments: list[FockMoments] = []
        self.max_trace_error = 0.0

    def __call__(self, t: float, rho: np.ndarray) -> None:
        self._check_state(t, rho)
        for mode, population in _top_populations(rho, self.fc.dims).items():
            if population > self.fc.overflow_tolerance:
                raise TruncationOverflowError(mode, population, t)
        self.times.append(t)
        self.moments.append(fock_moments(rho, self.phi, self.fc.dims))

    def _check_state(self, t: float, rho: np.ndarray) -> None:
        """Unit trace and positive semidefinite ρ at every stored step.

        Raises:
            InvalidStateError: if ρ is non-finite or breaks the trace or positivity bound
        """
        if not np.all(np.isfinite(rho)):
            raise InvalidStateError(f"Non-finite density matrix at t={t:.1f} fs; reduce dt")

        trace_error = abs(np.trace(rho).real - 1.0)
        self.max_trace_error = max(self.max_trace_error, trace_error)
        if trace_error > TRACE_TOLERANCE:
            raise InvalidStateError(f"Trace error {trace_error:.3e} at t={t:.1f} fs")

        hermitian = (rho + rho.conj().T) / 2.0
        lowest = float(np.linalg.eigvalsh(hermitian)[0])
        if lowest < -POSITIVITY_TOLERANCE:
            raise InvalidStateError(
                f"Density matrix not positive at t={t:.1f} fs: eigenvalue {lowest:.3e}; reduce dt"
            )

    def series(self, field: str) -> np.ndarray:
        return np.array([getattr(m, field) for m in self.moments], dtype=float)


# ============================================================
# Public solvers
# ============================================================

def evolve_pulse(
    k_i: float,
    k_f: float,
    n0: float,
    p: Optional[SystemParams] = None,
    fc: Optional[FockConfig] = None,
) -> PulseTrajectory:
    """Pulsed excitation with pump occupation n0·exp(−γ_{s_U} t).

    The initial state is s_L vacuum times thermal phonon-polaritons. Photons per pulse
    are ∫ γ⟨n(t)⟩ dt over [0, t_end], t_end defaulting to 20/γ_{s_U}.

    Raises:
        ValueError: if n0 is negative
        TruncationOverflowError: if a top Fock level exceeds the overflow tolerance
        InvalidStateError: if ρ loses unit trace or positivity (dt too large)
    """
    p = p or default_params()
    fc = fc or FockConfig()
    if n0 < 0:
        raise ValueError(f"n0 must be nonnegative, got {n0}")

    system = build_system(k_i, k_f, n0, p)
    space = fock_space(fc.dims)
    generator = _generator(system, space)

    pump_decay = ev_to_rate(system.gamma_s_u)
    t_end = fc.t_end if fc.t_end is not None else 20.0 / pump_decay
    dt, n_steps = _step_plan(fc, t_end, generator.max_rate)
    logger.info(
        f"Pulse k_i={k_i:.3f} k_f={k_f:.3f} n0={n0:.3e}: dims={fc.dims}, "
        f"dt={dt:.3f} fs, {n_steps} steps to {t_end:.0f} fs"
    )

    rho0 = _product_thermal(fc.dims, (0.0, system.n_th_vu, system.n_th_vl))
    recorder = _Recorder(system.phi, fc)
    _integrate(
        generator,
        rho0,
        lambda t: math.exp(-pump_decay * t / 2.0),
        dt,
        n_steps,
        fc.store_every,
        recorder,
    )

    t = np.array(recorder.times)
    n_s, n_ir = recorder.series("n_s"), recorder.series("n_ir")
    vis_flux = ev_to_rate(system.gamma_s_l) * n_s
    ir_flux = ev_to_rate(system.gamma_ir) * n_ir
    photons_vis = float(scipy.integrate.trapezoid(vis_flux, t))
    photons_ir = float(scipy.integrate.trapezoid(ir_flux, t))

    logger.info(f"Pulse photons: vis={photons_vis:.4g}, ir={photons_ir:.4g}")
    return PulseTrajectory(
        t=t,
        n_s=n_s,
        n_vu=recorder.series("n_vu"),
        n_vl=recorder.series("n_vl"),
        n_ir=n_ir,
        g2_cross_t=recorder.series("g2_cross"),
        photons_per_pulse_vis=photons_vis,
        photons_per_pulse_ir=photons_ir,
        profile_vis=vis_flux / photons_vis if photons_vis > 0 else np.zeros_like(t),
        profile_ir=ir_flux / photons_ir if photons_ir > 0 else np.zeros_like(t),
        window_fs=float(t[-1]),
        n0=n0,
        phi=system.phi,
        max_trace_error=recorder.max_trace_error,
    )


def steady_state(
    k_i: float,
    k_f: float,
    n_pump: float,
    p: Optional[SystemParams] = None,
    fc: Optional[FockConfig] = None,
) -> tuple[np.ndarray, FockMoments]:
    """Relax the constant-pump master equation from the thermal state.

    t_end defaults to 20 / min(γ) over the three dynamical modes.

    Returns:
        (final density matrix, its moments)

    Raises:
        TruncationOverflowError: if a top Fock level exceeds the overflow tolerance
        InvalidStateError: if ρ loses unit trace or positivity (dt too large)
    """
    p = p or default_params()
    fc = fc or FockConfig()
    system = build_system(k_i, k_f, n_pump, p)
    generator = _generator(system, fock_space(fc.dims))

    slowest = ev_to_rate(min(system.gamma_s_l, system.gamma_v_u, system.gamma_v_l))
    t_end = fc.t_end if fc.t_end is not None else 20.0 / slowest
    dt, n_steps = _step_plan(fc, t_end, generator.max_rate)
    logger.info(f"CW relaxation n_pump={n_pump:.3e}: {n_steps} steps of {dt:.3f} fs")

    rho0 = _product_thermal(fc.dims, (system.n_th_s, system.n_th_vu, system.n_th_vl))
    recorder = _Recorder(system.phi, fc)
    rho = _integrate(generator, rho0, lambda t: 1.0, dt, n_steps, n_steps, recorder)
    return rho, recorder.moments[-1]
