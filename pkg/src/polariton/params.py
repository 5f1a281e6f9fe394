"""System parameters and the flat key-value configuration format.

A config file holds one ``key = value`` per line; ``#`` starts a comment.
Keys present override :func:`default_params`; unknown keys are rejected.
"""

import logging
import math
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigParseError, ConfigValidationError, UnknownKeyError

logger = logging.getLogger(__name__)


class SystemParams(BaseModel):
    """Physical constants of the double-resonant polariton structure."""

    model_config = ConfigDict(frozen=True)

    # Visible lattice resonances
    n_eff: float = Field(1.42, gt=0.0)
    lattice_a: float = Field(0.35, gt=0.0)  # μm

    # IR cavity
    omega_ir0: float = Field(0.14, gt=0.0)
    alpha_ir: float = Field(0.04, gt=0.0)  # eV·μm²

    # Molecular exciton and vibration
    omega_vib: float = Field(0.2, gt=0.0)
    omega_exc_shifted: float = Field(2.72, gt=0.0)
    lambda_hr: float = Field(1.0, ge=0.0)
    n_exc: float = Field(1e8, ge=1.0)

    # Light-matter coupling
    rabi_vis: float = Field(0.05, gt=0.0)
    rabi_ir: float = Field(0.016, gt=0.0)

    # Linewidths
    gamma_vis_l: float = Field(0.003, gt=0.0)
    gamma_vis_r: float = Field(0.003, gt=0.0)
    gamma_ir: float = Field(0.004, gt=0.0)
    gamma_exc: float = Field(1e-5, gt=0.0)
    dephasing_exc: float = Field(0.05, gt=0.0)  # not used by the linearized model
    q_vib: float = Field(100.0, gt=0.0)

    # Environment
    kt: float = Field(0.025, gt=0.0)
    n_bg_vis: float = Field(1e-6, ge=0.0)
    n_bg_ir: float = Field(1e-3, ge=0.0)

    @property
    def gamma_vib(self) -> float:
        """Vibrational linewidth ω_Vib / Q."""
        return self.omega_vib / self.q_vib

    @property
    def lr_crossing_k(self) -> float:
        """Reciprocal lattice vector 2π/a, 1/μm."""
        return 2.0 * math.pi / self.lattice_a


# ============================================================
# Config keys
# ============================================================

# config key -> SystemParams field(s)
CONFIG_KEYS: dict[str, tuple[str, ...]] = {
    "n_eff": ("n_eff",),
    "lattice_a_um": ("lattice_a",),
    "omega_ir0_ev": ("omega_ir0",),
    "alpha_ir_ev_um2": ("alpha_ir",),
    "omega_vib_ev": ("omega_vib",),
    "omega_exc_shifted_ev": ("omega_exc_shifted",),
    "lambda_hr": ("lambda_hr",),
    "n_exc": ("n_exc",),
    "rabi_vis_ev": ("rabi_vis",),
    "rabi_ir_ev": ("rabi_ir",),
    "gamma_vis_ev": ("gamma_vis_l", "gamma_vis_r"),
    "gamma_vis_l_ev": ("gamma_vis_l",),
    "gamma_vis_r_ev": ("gamma_vis_r",),
    "gamma_ir_ev": ("gamma_ir",),
    "gamma_exc_ev": ("gamma_exc",),
    "dephasing_exc_ev": ("dephasing_exc",),
    "q_vib": ("q_vib",),
    "kt_ev": ("kt",),
    "n_bg_vis": ("n_bg_vis",),
    "n_bg_ir": ("n_bg_ir",),
}

IGNORED_KEYS = {"dephasing_exc_ev"}


def default_params() -> SystemParams:
    """Parameter set of the reference structure."""
    return SystemParams()


def parse_flat_config(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines into a dict of raw strings.

    Args:
        text: File contents

    Returns:
        Mapping of keys to unparsed values, in file order

    Raises:
        ConfigParseError: on a line without ``=``, an empty key or value, or a duplicate key
    """
    entries: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigParseError(f"expected 'key = value', got {line.strip()!r}", line_no)
        key, value = (part.strip() for part in stripped.split("=", 1))
        if not key or not value:
            raise ConfigParseError(f"empty key or value in {line.strip()!r}", line_no)
        if key in entries:
            raise ConfigParseError(f"duplicate key {key!r}", line_no)
        entries[key] = value
    return entries


def load_config_text(text: str, base: Optional[SystemParams] = None) -> SystemParams:
    """Build SystemParams from flat config text layered over ``base`` (defaults if None)."""
    entries = parse_flat_config(text)

    unknown = [key for key in entries if key not in CONFIG_KEYS]
    if unknown:
        raise UnknownKeyError(unknown)

    overrides: dict[str, str] = {}
    for key, raw in entries.items():
        if key in IGNORED_KEYS:
            logger.warning(f"Config key {key} is stored but not used by the linearized model")
        for field in CONFIG_KEYS[key]:
            overrides[field] = raw

    base = base or default_params()
    try:
        return SystemParams.model_validate({**base.model_dump(), **overrides})
    except ValidationError as exc:
        raise ConfigValidationError(str(exc)) from exc


def load_config(path: str | Path) -> SystemParams:
    """Load SystemParams from a flat key-value file.

    Args:
        path: Config file path

    Returns:
        Defaults overridden by the keys present in the file

    Raises:
        FileNotFoundError: if the file does not exist
        ConfigError: on parse, unknown-key or validation failures
    """
    path = Path(path)
    logger.info(f"Loading parameters from {path}")
    return load_config_text(path.read_text(encoding="utf-8"))


def dump_config(p: SystemParams) -> str:
    """Serialize SystemParams to the flat format; ``load_config_text`` round-trips it exactly."""
    values = p.model_dump()
    lines = ["# polariton-optomech system parameters"]
    for key, fields in CONFIG_KEYS.items():
        if key in ("gamma_vis_l_ev", "gamma_vis_r_ev", "gamma_vis_ev"):
            continue
        if key in IGNORED_KEYS and values[fields[0]] == SystemParams.model_fields[fields[0]].default:
            continue
        lines.append(f"{key} = {values[fields[0]]!r}")

    if p.gamma_vis_l == p.gamma_vis_r:
        lines.append(f"gamma_vis_ev = {p.gamma_vis_l!r}")
    else:
        lines.append(f"gamma_vis_l_ev = {p.gamma_vis_l!r}")
        lines.append(f"gamma_vis_r_ev = {p.gamma_vis_r!r}")
    return "\n".join(lines) + "\n"
