"""Example scenario and parameter files for the simulate CLI."""

from pathlib import Path

DATA_DIR = Path(__file__).parent
SCENARIO_DIR = DATA_DIR / "scenarios"
PARAMS_DIR = DATA_DIR / "params"
