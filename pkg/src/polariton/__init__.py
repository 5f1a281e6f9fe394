"""
Polariton Optomechanics - Simulation Library

Dispersions, couplings, Langevin covariances, entanglement, photon correlations
and pulsed master-equation dynamics of a double-resonant polariton structure.
"""

__version__ = "0.1.0"

from .errors import (
    PolaritonError,
    ConfigError,
    ConfigParseError,
    UnknownKeyError,
    ConfigValidationError,
    DispersionDomainError,
    InstabilityError,
    InvalidStateError,
    TruncationOverflowError,
    GridPointError,
)
from .schema import (
    # Enums
    LRBranch,
    ExcitonBranch,
    BareComponent,
    PhononBranch,
    Mode,
    ModePair,
    IRFilter,
    # Models
    ExcitonPolaritonBasis,
    PhononPolaritonBasis,
    CouplingSet,
    LangevinSystem,
    CovarianceSet,
    QuadratureCovariance,
    CorrelationTrace,
    EmissionRates,
    FockConfig,
    FockMoments,
    PulseTrajectory,
)
from .params import (
    SystemParams,
    default_params,
    load_config,
    load_config_text,
    dump_config,
    parse_flat_config,
)
from .dispersion import (
    HBAR_C_EV_UM,
    HBAR_EV_FS,
    HBAR_EV_S,
    ev_to_rate,
    lr_freq,
    ir_freq,
    thermal_occupation,
    exciton_polariton_basis,
    exciton_polariton_energies,
    phonon_polariton_basis,
    phonon_polariton_energies,
    mixing_angle,
)
from .coupling import coupling_set, couplings_from_bases, collective_coupling
from .langevin import (
    build_system,
    with_pump,
    assemble_drift,
    stability_margin,
    instability_threshold,
    pulsed_applicability_bound,
    steady_covariance,
    two_time_covariance,
    thermal_moments,
    evolve_moments,
    relax_moments,
)
from .entanglement import (
    quadrature_reduce,
    vis_ir_reduce,
    log_negativity,
    symplectic_eigenvalue,
    physicality_margin,
)
from .correlations import (
    g2_cross,
    g2_cross_trace,
    g2_heralded,
    g3_cross,
    cauchy_schwarz_violated,
    ir_occupation,
    quantum_efficiency,
    emission_rates,
    matching_locus,
)
from .lindblad import (
    evolve_pulse,
    steady_state,
    fock_moments,
    g2_cross_equal_time,
    thermal_state,
)

__all__ = [
    "__version__",
    # Errors
    "PolaritonError",
    "ConfigError",
    "ConfigParseError",
    "UnknownKeyError",
    "ConfigValidationError",
    "DispersionDomainError",
    "InstabilityError",
    "InvalidStateError",
    "TruncationOverflowError",
    "GridPointError",
    # Enums
    "LRBranch",
    "ExcitonBranch",
    "BareComponent",
    "PhononBranch",
    "Mode",
    "ModePair",
    "IRFilter",
    # Models
    "SystemParams",
    "ExcitonPolaritonBasis",
    "PhononPolaritonBasis",
    "CouplingSet",
    "LangevinSystem",
    "CovarianceSet",
    "QuadratureCovariance",
    "CorrelationTrace",
    "EmissionRates",
    "FockConfig",
    "FockMoments",
    "PulseTrajectory",
    # Params
    "default_params",
    "load_config",
    "load_config_text",
    "dump_config",
    "parse_flat_config",
    # Dispersion
    "HBAR_C_EV_UM",
    "HBAR_EV_FS",
    "HBAR_EV_S",
    "ev_to_rate",
    "lr_freq",
    "ir_freq",
    "thermal_occupation",
    "exciton_polariton_basis",
    "exciton_polariton_energies",
    "phonon_polariton_basis",
    "phonon_polariton_energies",
    "mixing_angle",
    # Coupling
    "coupling_set",
    "couplings_from_bases",
    "collective_coupling",
    # Langevin
    "build_system",
    "with_pump",
    "assemble_drift",
    "stability_margin",
    "instability_threshold",
    "pulsed_applicability_bound",
    "steady_covariance",
    "two_time_covariance",
    "thermal_moments",
    "evolve_moments",
    "relax_moments",
    # Entanglement
    "quadrature_reduce",
    "vis_ir_reduce",
    "log_negativity",
    "symplectic_eigenvalue",
    "physicality_margin",
    # Correlations
    "g2_cross",
    "g2_cross_trace",
    "g2_heralded",
    "g3_cross",
    "cauchy_schwarz_violated",
    "ir_occupation",
    "quantum_efficiency",
    "emission_rates",
    "matching_locus",
    # Lindblad
    "evolve_pulse",
    "steady_state",
    "fock_moments",
    "g2_cross_equal_time",
    "thermal_state",
]
