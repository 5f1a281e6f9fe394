"""Output node: CSV and JSON files for one sweep."""

import csv
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from src.polariton import __version__

from ..modes import format_value, json_value
from ..state import EXIT_OK, SweepState

logger = logging.getLogger(__name__)

PROGRAM = "polariton-optomech"


class SweepReport(BaseModel):
    """JSON document mirroring the CSV; only ``metadata`` varies between runs"""
    metadata: dict[str, Any]
    columns: list[str]
    rows: list[list[Any]]
    summary: list[dict[str, Any]]


def csv_header(mode: str) -> str:
    return f"# {PROGRAM} v{__version__} scenario={mode}"


def write_csv(path: Path, mode: str, columns: list[str], rows: list[list[Any]]) -> None:
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write(csv_header(mode) + "\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(value) for value in row])


def build_report(state: SweepState) -> SweepReport:
    scenario = state["scenario"]
    return SweepReport(
        metadata={
            "program": PROGRAM,
            "version": __version__,
            "scenario": scenario.mode.value,
            "name": scenario.name,
            "threads": state.get("threads", 1),
            "generated_at": datetime.now(timezone.utc).isoformat(),
        },
        columns=state["columns"],
        rows=[[json_value(value) for value in row] for row in state["rows"]],
        summary=[
            {key: json_value(value) for key, value in record.items()}
            for record in state.get("summary") or []
        ],
    )


def write_outputs(state: SweepState) -> SweepState:
    """Write <name>.csv and <name>.json into the output directory.

    Row order follows the grid, never the thread schedule, so repeated runs of one
    scenario give byte-identical CSV files and JSON documents that differ only in
    ``metadata`` (generated_at, threads).

    Args:
        state: Sweep state with columns and rows

    Returns:
        Updated state with outputs and exit_code
    """
    if state.get("error"):
        return state

    scenario = state["scenario"]
    out_dir = Path(state.get("out_dir") or ".")
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / f"{scenario.name}.csv"
    json_path = out_dir / f"{scenario.name}.json"

    write_csv(csv_path, scenario.mode.value, state["columns"], state["rows"])
    json_path.write_text(build_report(state).model_dump_json(indent=2) + "\n", encoding="utf-8")

    state["outputs"] = [str(csv_path), str(json_path)]
    state["exit_code"] = EXIT_OK
    print(f"[Write Outputs] Wrote {csv_path} and {json_path}")
    logger.info(f"Sweep {scenario.name}: {len(state['rows'])} rows written to {out_dir}")
    return state
