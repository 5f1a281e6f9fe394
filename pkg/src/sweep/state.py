"""Sweep state definition for the LangGraph pipeline."""

from typing import Any, Optional, TypedDict

from src.polariton import SystemParams

from .scenario import Scenario


class SweepState(TypedDict):
    """State schema for one scenario run.

    This state flows through the LangGraph pipeline and gets updated
    by each node (Load Inputs → Plan Grid → Evaluate Grid → Write Outputs).
    """

    # ===== Input =====
    scenario_path: Optional[str]
    """Scenario file; ignored when ``scenario`` is already set"""

    params_path: Optional[str]
    """Parameter file; defaults are used when missing"""

    threads: int
    """Worker threads for grid evaluation"""

    out_dir: str
    """Directory receiving <name>.csv and <name>.json"""

    # ===== Loaded Inputs =====
    scenario: Optional[Scenario]
    params: Optional[SystemParams]

    # ===== Planning =====
    columns: Optional[list[str]]
    points: Optional[list[dict[str, float]]]
    """Sweep points in output order"""

    # ===== Evaluation =====
    rows: Optional[list[list[Any]]]
    summary: Optional[list[dict]]
    """Per-point summary records (pulse mode); empty otherwise"""

    # ===== Output =====
    outputs: Optional[list[str]]
    """Paths of the files written"""

    # ===== Error Handling =====
    error: Optional[str]
    """Error message if any step fails"""

    exit_code: int
    """0 on success, 2 for configuration errors, 3 for numerical failures"""


# Exit statuses
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
