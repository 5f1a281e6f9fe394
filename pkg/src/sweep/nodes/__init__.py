"""Sweep nodes for the LangGraph pipeline."""

from .load_inputs import load_inputs
from .plan_grid import plan_grid
from .evaluate_grid import evaluate_grid
from .write_outputs import write_outputs

__all__ = [
    "load_inputs",
    "plan_grid",
    "evaluate_grid",
    "write_outputs",
]
