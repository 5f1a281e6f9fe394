"""
Polariton Optomechanics - Schema Definitions

Enums and Pydantic models for polariton bases, couplings, Langevin systems,
covariances and pulsed trajectories. Energies are in eV, wave vectors in 1/μm,
times in fs and rates in 1/fs unless a field says otherwise.
"""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


# ============================================================
# Enums - Branches & Components
# ============================================================

class LRBranch(str, Enum):
    """Counter-propagating lattice-resonance branches"""
    LEFT = "left"
    RIGHT = "right"


class ExcitonBranch(str, Enum):
    """Exciton-polariton branches, in ascending energy (Hopfield column order)"""
    LOWER = "l"
    UPPER = "u"
    HIGHER = "h"

    @property
    def column(self) -> int:
        return _EXCITON_COLUMNS[self]


class BareComponent(str, Enum):
    """Bare states forming the rows of the Hopfield matrix"""
    EXC = "exc"
    VIS_R = "vis_r"
    VIS_L = "vis_l"

    @property
    def row(self) -> int:
        return _BARE_ROWS[self]


class PhononBranch(str, Enum):
    """Phonon-polariton branches"""
    UPPER = "upper"
    LOWER = "lower"


_EXCITON_COLUMNS = {ExcitonBranch.LOWER: 0, ExcitonBranch.UPPER: 1, ExcitonBranch.HIGHER: 2}
_BARE_ROWS = {BareComponent.EXC: 0, BareComponent.VIS_R: 1, BareComponent.VIS_L: 2}


# ============================================================
# Enums - Dynamical Modes & Observables
# ============================================================

class Mode(str, Enum):
    """Dynamical modes of the linearized system, in fixed basis order"""
    S_L = "s_l"
    V_U = "v_u"
    V_L = "v_l"

    @property
    def slot(self) -> int:
        """Index of the annihilation operator in (s, s†, vU, vU†, vL, vL†)."""
        return 2 * list(Mode).index(self)


class ModePair(str, Enum):
    """Mode pairs for quadrature reduction"""
    S_VU = "s_l-v_u"
    S_VL = "s_l-v_l"
    VIS_IR = "vis-ir"


class IRFilter(str, Enum):
    """Which phonon-polariton pathway feeds the detected IR mode"""
    UPPER = "upper"
    LOWER = "lower"
    BOTH = "both"

    def weights(self, phi: float) -> tuple[float, float]:
        """Amplitudes (w_U, w_L) of v_U and v_L in the IR output mode."""
        w_u = float(np.sin(phi)) if self is not IRFilter.LOWER else 0.0
        w_l = float(np.cos(phi)) if self is not IRFilter.UPPER else 0.0
        return w_u, w_l


# ============================================================
# Base Model
# ============================================================

class NumericModel(BaseModel):
    """Frozen model whose numpy fields are made read-only after validation."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @model_validator(mode="after")
    def _lock_arrays(self):
        for name in type(self).model_fields:
            value = getattr(self, name)
            if isinstance(value, np.ndarray):
                value.flags.writeable = False
        return self


# ============================================================
# Dispersion Models
# ============================================================

class ExcitonPolaritonBasis(NumericModel):
    """Exciton-polariton eigenfrequencies, Hopfield matrix and linewidths at one k"""
    k: float
    omega_l: float
    omega_u: float
    omega_h: float
    hopfield: np.ndarray  # rows (Exc, VisR, VisL), columns (L, U, h)
    gamma_l: float = Field(ge=0.0)
    gamma_u: float = Field(ge=0.0)
    gamma_h: float = Field(ge=0.0)

    def amplitude(self, branch: ExcitonBranch, component: BareComponent) -> complex:
        """Hopfield coefficient X_{branch, component}."""
        return complex(self.hopfield[component.row, branch.column])

    def visible_amplitude(self, branch: ExcitonBranch) -> complex:
        """X_Vis = X_VisR + X_VisL."""
        return self.amplitude(branch, BareComponent.VIS_R) + self.amplitude(
            branch, BareComponent.VIS_L
        )

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([self.omega_l, self.omega_u, self.omega_h])


class PhononPolaritonBasis(NumericModel):
    """Phonon-polariton mixing angle, eigenfrequencies and linewidths at one q"""
    q: float
    phi: float = Field(ge=0.0, le=np.pi / 2)
    omega_u: float
    omega_l: float
    gamma_u: float = Field(ge=0.0)
    gamma_l: float = Field(ge=0.0)


# ============================================================
# Coupling Models
# ============================================================

class CouplingSet(NumericModel):
    """Single-polariton optomechanical couplings for the transition k_i → k_f (eV)"""
    k_i: float
    k_f: float
    g_vib: complex
    g_ir: complex
    g_upper: complex
    g_lower: complex
    phi: float


# ============================================================
# Langevin Models
# ============================================================

class LangevinSystem(NumericModel):
    """Linearized Langevin drift and diffusion in the basis (s, s†, vU, vU†, vL, vL†)"""
    k_i: float
    k_f: float
    n_pump: float = Field(ge=0.0)

    drift: np.ndarray  # 1/fs
    coupling_drift: np.ndarray  # pump-coupling part of drift, 1/fs
    diffusion: np.ndarray  # 1/fs

    omega_s_u: float
    omega_s_l: float
    omega_v_u: float
    omega_v_l: float
    gamma_s_u: float
    gamma_s_l: float
    gamma_v_u: float
    gamma_v_l: float
    gamma_ir: float  # bare IR cavity linewidth, for output rates
    n_th_s: float
    n_th_vu: float
    n_th_vl: float

    couplings: CouplingSet

    @property
    def phi(self) -> float:
        return self.couplings.phi

    @property
    def free_drift(self) -> np.ndarray:
        return self.drift - self.coupling_drift


class CovarianceSet(NumericModel):
    """Equal-time second moments ⟨A Aᵀ⟩ of a stable Langevin system"""
    second_moments: np.ndarray
    system: LangevinSystem

    def occupation(self, mode: Mode) -> float:
        """⟨a†a⟩ for one mode."""
        i = mode.slot
        return float(self.second_moments[i + 1, i].real)

    def moment(self, row: int, col: int) -> complex:
        return complex(self.second_moments[row, col])


# ============================================================
# Entanglement & Correlation Models
# ============================================================

class QuadratureCovariance(NumericModel):
    """Real symmetric 4×4 quadrature covariance of one mode pair, basis (x1, p1, x2, p2)"""
    r: np.ndarray
    pair_label: ModePair
    snr_vis: Optional[float] = None
    snr_ir: Optional[float] = None

    @property
    def c11(self) -> np.ndarray:
        return self.r[:2, :2]

    @property
    def c22(self) -> np.ndarray:
        return self.r[2:, 2:]

    @property
    def c12(self) -> np.ndarray:
        return self.r[:2, 2:]


class CorrelationTrace(NumericModel):
    """g²_Vis-IR(τ) on a delay grid"""
    tau_grid: np.ndarray
    g2_cross: np.ndarray
    source_filter: IRFilter


class EmissionRates(BaseModel):
    """Steady emission rates, photons/s"""
    model_config = ConfigDict(frozen=True)

    vis_rate: float
    ir_rate: float
    excess_ir_rate: float
    phonon_rate: float


# ============================================================
# Master-Equation Models
# ============================================================

class FockConfig(BaseModel):
    """Fock truncation and integrator settings"""
    model_config = ConfigDict(frozen=True)

    cutoff_s: int = Field(6, ge=2)
    cutoff_vu: int = Field(6, ge=2)
    cutoff_vl: int = Field(6, ge=2)
    dt: Optional[float] = Field(None, gt=0.0)  # fs
    t_end: Optional[float] = Field(None, gt=0.0)  # fs
    store_every: int = Field(10, ge=1)
    overflow_tolerance: float = Field(1e-3, gt=0.0)

    @model_validator(mode="after")
    def _check_dimension(self):
        if self.dimension > 4096:
            raise ValueError(
                f"Hilbert-space dimension {self.dimension} exceeds 4096 "
                f"(cutoffs {self.cutoff_s}, {self.cutoff_vu}, {self.cutoff_vl})"
            )
        return self

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.cutoff_s, self.cutoff_vu, self.cutoff_vl)

    @property
    def dimension(self) -> int:
        return self.cutoff_s * self.cutoff_vu * self.cutoff_vl


class FockMoments(BaseModel):
    """Occupations and equal-time g² evaluated on a density matrix"""
    model_config = ConfigDict(frozen=True)

    n_s: float
    n_vu: float
    n_vl: float
    n_ir: float
    vu_vl: complex  # ⟨v_U† v_L⟩
    g2_cross: float


class PulseTrajectory(NumericModel):
    """Time series from the pulsed master-equation solver"""
    t: np.ndarray  # fs
    n_s: np.ndarray
    n_vu: np.ndarray
    n_vl: np.ndarray
    n_ir: np.ndarray
    g2_cross_t: np.ndarray  # NaN where undefined
    photons_per_pulse_vis: float
    photons_per_pulse_ir: float
    profile_vis: np.ndarray  # 1/fs, integrates to 1
    profile_ir: np.ndarray
    window_fs: float
    n0: float
    phi: float
    max_trace_error: float
