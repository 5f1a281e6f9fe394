"""Input loading node: scenario and parameter files."""

import logging

from pydantic import ValidationError

from src.polariton import ConfigError, default_params, load_config

from ..scenario import load_scenario
from ..state import EXIT_CONFIG, SweepState

logger = logging.getLogger(__name__)


def load_inputs(state: SweepState) -> SweepState:
    """Load the scenario and system parameters.

    Args:
        state: Sweep state with scenario_path / params_path (or preloaded models)

    Returns:
        Updated state with scenario and params
    """
    try:
        if state.get("scenario") is None:
            if not state.get("scenario_path"):
                raise ConfigError("No scenario given")
            state["scenario"] = load_scenario(state["scenario_path"])

        if state.get("params") is None:
            params_path = state.get("params_path")
            state["params"] = load_config(params_path) if params_path else default_params()

    except (ConfigError, ValidationError, OSError) as e:
        print(f"[Load Inputs] Error: {e}")
        state["error"] = f"Configuration error: {e}"
        state["exit_code"] = EXIT_CONFIG
        return state

    print(f"[Load Inputs] Scenario: {state['scenario'].mode.value} ({state['scenario'].name})")
    return state
