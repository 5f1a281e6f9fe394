"""Grid evaluation node: runs the mode evaluator over all sweep points."""

import logging
from concurrent.futures import ThreadPoolExecutor

from src.polariton import (
    DispersionDomainError,
    GridPointError,
    InstabilityError,
    InvalidStateError,
    SystemParams,
    TruncationOverflowError,
)

from ..modes import MODE_EVALUATORS, PointResult
from ..scenario import Scenario
from ..state import EXIT_CONFIG, EXIT_NUMERICAL, SweepState

logger = logging.getLogger(__name__)

NUMERICAL_ERRORS = (InvalidStateError, TruncationOverflowError, InstabilityError)


def _evaluate_point(point: dict, scenario: Scenario, p: SystemParams) -> PointResult:
    evaluator = MODE_EVALUATORS[scenario.mode]
    try:
        return evaluator(point, scenario, p)
    except NUMERICAL_ERRORS as e:
        logger.debug(f"Point {point} failed: {e}")
        raise GridPointError(point, e) from e


def evaluate_grid(state: SweepState) -> SweepState:
    """Evaluate every sweep point, preserving point order in the output rows.

    Args:
        state: Sweep state with points

    Returns:
        Updated state with rows and summary
    """
    if state.get("error"):
        return state

    scenario = state["scenario"]
    params = state["params"]
    points = state["points"]
    threads = max(1, state.get("threads") or 1)

    print(f"[Evaluate Grid] {len(points)} points on {threads} thread(s)")
    logger.info(f"Evaluating {scenario.mode.value} sweep: {len(points)} points, {threads} threads")

    try:
        if threads == 1:
            results = [_evaluate_point(point, scenario, params) for point in points]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda point: _evaluate_point(point, scenario, params), points))

    except GridPointError as e:
        print(f"[Evaluate Grid] Error: {e}")
        state["error"] = f"Numerical failure: {e}"
        state["exit_code"] = EXIT_NUMERICAL
        return state
    except DispersionDomainError as e:
        print(f"[Evaluate Grid] Error: {e}")
        state["error"] = f"Configuration error: {e}"
        state["exit_code"] = EXIT_CONFIG
        return state

    state["rows"] = [row for result in results for row in result.rows]
    state["summary"] = [result.summary for result in results if result.summary is not None]
    print(f"[Evaluate Grid] {len(state['rows'])} rows")
    return state
