"""
Scenario sweeps: (k_i, k_f) grids, pump and pulse scans written as CSV/JSON.
"""

from .scenario import (
    Background,
    Scenario,
    ScenarioMode,
    axis,
    load_scenario,
    load_scenario_text,
)
from .modes import MODE_COLUMNS, format_value, plan_points
from .state import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, SweepState
from .graph import create_sweep_graph, run, run_sweep

__all__ = [
    # Scenario
    "Background",
    "Scenario",
    "ScenarioMode",
    "axis",
    "load_scenario",
    "load_scenario_text",
    # Modes
    "MODE_COLUMNS",
    "format_value",
    "plan_points",
    # Pipeline
    "SweepState",
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_NUMERICAL",
    "create_sweep_graph",
    "run",
    "run_sweep",
]
