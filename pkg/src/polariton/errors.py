"""Exception hierarchy for the polariton simulator."""


class PolaritonError(Exception):
    """Base class for all simulator errors."""


# ============================================================
# Configuration
# ============================================================

class ConfigError(PolaritonError, ValueError):
    """Parameter or scenario file could not be turned into a valid model."""


class ConfigParseError(ConfigError):
    """Malformed line in a flat key-value file."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}{message}")


class UnknownKeyError(ConfigError):
    """Key not recognised by the target model."""

    def __init__(self, keys: list[str]):
        self.keys = keys
        super().__init__(f"Unknown config key(s): {', '.join(sorted(keys))}")


class ConfigValidationError(ConfigError):
    """Values parsed but failed model validation (e.g. nonpositive energy)."""


# ============================================================
# Numerics
# ============================================================

class DispersionDomainError(PolaritonError, ValueError):
    """Wave vector outside the first Brillouin-zone crossing region."""


class InstabilityError(PolaritonError, RuntimeError):
    """Drift matrix has an eigenvalue with nonnegative real part."""

    def __init__(self, margin: float, n_pump: float):
        self.margin = margin
        self.n_pump = n_pump
        super().__init__(
            f"Linearized system unstable at n_pump={n_pump:.6g} (margin {margin:.3e} 1/fs)"
        )


class InvalidStateError(PolaritonError, RuntimeError):
    """Covariance or density matrix is unphysical, or a ratio is undefined."""


class TruncationOverflowError(PolaritonError, RuntimeError):
    """Top Fock level population exceeded tolerance; larger cutoff needed."""

    def __init__(self, mode: str, population: float, t_fs: float):
        self.mode = mode
        self.population = population
        self.t_fs = t_fs
        super().__init__(
            f"Fock truncation overflow in mode {mode}: top-level population "
            f"{population:.3e} at t={t_fs:.1f} fs"
        )


# ============================================================
# Sweeps
# ============================================================

class GridPointError(PolaritonError, RuntimeError):
    """Numerical failure at one sweep point; names the point."""

    def __init__(self, point: dict, cause: Exception):
        self.point = point
        self.cause = cause
        where = ", ".join(f"{key}={value:.6g}" for key, value in point.items())
        super().__init__(f"{type(cause).__name__} at {where}: {cause}")
