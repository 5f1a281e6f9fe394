"""Grid planning node: column layout, sweep points and wave-vector domain check."""

from src.polariton import DispersionDomainError

from ..modes import MODE_COLUMNS, plan_points
from ..scenario import ScenarioMode
from ..state import EXIT_CONFIG, SweepState


def plan_grid(state: SweepState) -> SweepState:
    """Expand the scenario into ordered sweep points.

    Args:
        state: Sweep state with a loaded scenario

    Returns:
        Updated state with columns and points
    """
    if state.get("error"):
        return state

    scenario = state["scenario"]
    limit = state["params"].lr_crossing_k

    if scenario.mode is ScenarioMode.DISPERSION:
        wave_vectors = scenario.k_i_values()
    else:
        wave_vectors = scenario.k_i_values() + scenario.k_f_values()
    outside = [k for k in wave_vectors if abs(k) >= limit]
    if outside:
        error = DispersionDomainError(
            f"|k|={abs(outside[0]):.6g} 1/μm outside the crossing region |k| < {limit:.6g}"
        )
        print(f"[Plan Grid] Error: {error}")
        state["error"] = f"Configuration error: {error}"
        state["exit_code"] = EXIT_CONFIG
        return state

    state["columns"] = MODE_COLUMNS[scenario.mode]
    state["points"] = plan_points(scenario)
    print(f"[Plan Grid] {len(state['points'])} points, columns: {', '.join(state['columns'])}")
    return state
