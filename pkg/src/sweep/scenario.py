"""Scenario definition for sweeps, read from the same flat key-value format as parameters."""

import logging
import math
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.polariton import FockConfig, IRFilter, SystemParams
from src.polariton.errors import ConfigValidationError, UnknownKeyError
from src.polariton.params import parse_flat_config

logger = logging.getLogger(__name__)


# ============================================================
# Enums
# ============================================================

class ScenarioMode(str, Enum):
    """Sweep modes, one per output family"""
    DISPERSION = "dispersion"
    LOGNEG_POLARITON = "logneg-polariton"
    LOGNEG_VISIR = "logneg-visir"
    G2_MAP = "g2-map"
    G2_TRACE = "g2-trace"
    QE_MAP = "qe-map"
    THRESHOLD_MAP = "threshold-map"
    PULSE = "pulse"
    RATES_SWEEP = "rates-sweep"


class Background(str, Enum):
    """Background occupations applied to output modes"""
    PARAMS = "params"  # n_bg_vis / n_bg_ir from SystemParams
    NONE = "none"


# modes whose points are (k_i, k_f) grid cells
GRID_MODES = {
    ScenarioMode.LOGNEG_POLARITON,
    ScenarioMode.LOGNEG_VISIR,
    ScenarioMode.G2_MAP,
    ScenarioMode.G2_TRACE,
    ScenarioMode.QE_MAP,
    ScenarioMode.THRESHOLD_MAP,
}
CW_MODES = GRID_MODES - {ScenarioMode.THRESHOLD_MAP}


def axis(lo: float, hi: Optional[float], step: Optional[float]) -> list[float]:
    """Inclusive range lo, lo+step, ..., ≤ hi; a single point when hi is None."""
    if hi is None:
        return [float(lo)]
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [float(v) for v in np.round(lo + step * np.arange(count), 10)]


# ============================================================
# Scenario Model
# ============================================================

class Scenario(BaseModel):
    """One sweep: mode, wave-vector grid, pump settings and output name"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: ScenarioMode

    # Wave-vector grid, 1/μm
    k_i_min: Optional[float] = None
    k_i_max: Optional[float] = None
    k_i_step: Optional[float] = Field(None, gt=0.0)
    k_f_min: Optional[float] = None
    k_f_max: Optional[float] = None
    k_f_step: Optional[float] = Field(None, gt=0.0)

    # Pump
    n_pump: Optional[float] = Field(None, ge=0.0)
    n_pump_min: Optional[float] = Field(None, gt=0.0)
    n_pump_max: Optional[float] = Field(None, gt=0.0)
    n_pump_points: Optional[int] = Field(None, ge=1)
    n0: Optional[float] = Field(None, ge=0.0)
    n0_max: Optional[float] = Field(None, gt=0.0)
    n0_points: Optional[int] = Field(None, ge=1)

    # Delay grid, fs
    tau_min_fs: float = Field(0.0, ge=0.0)
    tau_max_fs: Optional[float] = Field(None, ge=0.0)
    tau_step_fs: Optional[float] = Field(None, gt=0.0)

    filter: IRFilter = IRFilter.BOTH
    bg: Background = Background.PARAMS
    output_name: Optional[str] = Field(None, pattern=r"^[A-Za-z0-9_.-]+$")

    # Master-equation settings (pulse mode)
    cutoff_s: int = Field(6, ge=2)
    cutoff_vu: int = Field(6, ge=2)
    cutoff_vl: int = Field(6, ge=2)
    dt_fs: Optional[float] = Field(None, gt=0.0)
    t_end_fs: Optional[float] = Field(None, gt=0.0)

    @model_validator(mode="after")
    def _check_mode_fields(self):
        required = ["k_i_min"]
        if self.mode is not ScenarioMode.DISPERSION:
            required.append("k_f_min")
        if self.mode in CW_MODES:
            required.append("n_pump")
        if self.mode is ScenarioMode.G2_TRACE:
            required += ["tau_max_fs", "tau_step_fs"]
        if self.mode is ScenarioMode.RATES_SWEEP:
            required += ["n_pump_min", "n_pump_max", "n_pump_points"]
        if self.mode is ScenarioMode.PULSE:
            required.append("n0")

        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"mode {self.mode.value} requires: {', '.join(missing)}")

        for lo, hi, step in (
            ("k_i_min", "k_i_max", "k_i_step"),
            ("k_f_min", "k_f_max", "k_f_step"),
            ("tau_min_fs", "tau_max_fs", "tau_step_fs"),
        ):
            self._check_range(lo, hi, step)
        if self.n_pump_min is not None and self.n_pump_max is not None:
            if self.n_pump_max < self.n_pump_min:
                raise ValueError("n_pump_max must be >= n_pump_min")
        if self.n0_max is not None and (self.n0 is None or self.n0_max < self.n0 or self.n0 == 0):
            raise ValueError("n0_max needs a positive n0 <= n0_max")
        return self

    def _check_range(self, lo: str, hi: str, step: str) -> None:
        lo_v, hi_v, step_v = getattr(self, lo), getattr(self, hi), getattr(self, step)
        if hi_v is None:
            return
        if step_v is None:
            raise ValueError(f"{hi} given without {step}")
        if lo_v is None or hi_v < lo_v:
            raise ValueError(f"empty range {lo}..{hi}")

    # ========================================================================
    # Grids
    # ========================================================================

    @property
    def name(self) -> str:
        return self.output_name or self.mode.value

    def k_i_values(self) -> list[float]:
        return axis(self.k_i_min, self.k_i_max, self.k_i_step)

    def k_f_values(self) -> list[float]:
        return axis(self.k_f_min, self.k_f_max, self.k_f_step)

    def tau_values(self) -> list[float]:
        return axis(self.tau_min_fs, self.tau_max_fs, self.tau_step_fs)

    def pump_values(self) -> list[float]:
        """Log-spaced pump occupations for rates-sweep."""
        return _log_axis(self.n_pump_min, self.n_pump_max, self.n_pump_points)

    def n0_values(self) -> list[float]:
        if self.n0_max is None:
            return [float(self.n0)]
        return _log_axis(self.n0, self.n0_max, self.n0_points or 1)

    def backgrounds(self, p: SystemParams) -> tuple[float, float]:
        if self.bg is Background.NONE:
            return 0.0, 0.0
        return p.n_bg_vis, p.n_bg_ir

    def fock_config(self) -> FockConfig:
        return FockConfig(
            cutoff_s=self.cutoff_s,
            cutoff_vu=self.cutoff_vu,
            cutoff_vl=self.cutoff_vl,
            dt=self.dt_fs,
            t_end=self.t_end_fs,
        )


def _log_axis(lo: float, hi: float, count: int) -> list[float]:
    if count == 1:
        return [float(lo)]
    return [float(v) for v in np.geomspace(lo, hi, count)]


# ============================================================
# Loading
# ============================================================

def load_scenario_text(text: str) -> Scenario:
    """Parse and validate scenario text.

    Raises:
        ConfigError: on parse, unknown-key or validation failures
    """
    entries = parse_flat_config(text)
    unknown = [key for key in entries if key not in Scenario.model_fields]
    if unknown:
        raise UnknownKeyError(unknown)
    try:
        return Scenario.model_validate(entries)
    except ValidationError as exc:
        raise ConfigValidationError(str(exc)) from exc


def load_scenario(path: str | Path) -> Scenario:
    """Load a scenario file."""
    path = Path(path)
    logger.info(f"Loading scenario from {path}")
    return load_scenario_text(path.read_text(encoding="utf-8"))
