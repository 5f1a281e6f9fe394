"""LangGraph pipeline for scenario sweeps."""

from typing import Optional

from langgraph.graph import END, StateGraph

from src.polariton import SystemParams

from .nodes import evaluate_grid, load_inputs, plan_grid, write_outputs
from .scenario import Scenario
from .state import EXIT_OK, SweepState


def create_sweep_graph():
    """Create the LangGraph pipeline for one scenario run.

    The pipeline flows as follows:
    Load Inputs → Plan Grid → Evaluate Grid → Write Outputs

    Returns:
        Compiled StateGraph ready for execution
    """
    workflow = StateGraph(SweepState)

    workflow.add_node("load_inputs", load_inputs)
    workflow.add_node("plan_grid", plan_grid)
    workflow.add_node("evaluate_grid", evaluate_grid)
    workflow.add_node("write_outputs", write_outputs)

    # Linear flow; nodes pass through once an error is set
    workflow.set_entry_point("load_inputs")
    workflow.add_edge("load_inputs", "plan_grid")
    workflow.add_edge("plan_grid", "evaluate_grid")
    workflow.add_edge("evaluate_grid", "write_outputs")
    workflow.add_edge("write_outputs", END)

    return workflow.compile()


def _initial_state(**inputs) -> SweepState:
    state: SweepState = {
        "scenario_path": None,
        "params_path": None,
        "threads": 1,
        "out_dir": ".",
        "scenario": None,
        "params": None,
        "columns": None,
        "points": None,
        "rows": None,
        "summary": None,
        "outputs": None,
        "error": None,
        "exit_code": EXIT_OK,
    }
    state.update(inputs)
    return state


def run_sweep(
    scenario_path: str,
    params_path: Optional[str] = None,
    threads: int = 1,
    out_dir: str = ".",
) -> SweepState:
    """Run a scenario file end to end.

    Args:
        scenario_path: Scenario file (flat key-value format)
        params_path: Parameter file; defaults are used when None
        threads: Worker threads for grid evaluation
        out_dir: Directory for CSV and JSON outputs

    Returns:
        Final state; ``exit_code`` is 0, 2 (configuration) or 3 (numerical failure)
    """
    graph = create_sweep_graph()
    return graph.invoke(
        _initial_state(
            scenario_path=str(scenario_path),
            params_path=str(params_path) if params_path else None,
            threads=threads,
            out_dir=str(out_dir),
        )
    )


def run(
    scenario: Scenario,
    params: SystemParams,
    threads: int = 1,
    out_dir: str = ".",
) -> SweepState:
    """Run an already-validated scenario with the given parameters."""
    graph = create_sweep_graph()
    return graph.invoke(
        _initial_state(scenario=scenario, params=params, threads=threads, out_dir=str(out_dir))
    )
