"""Run a polariton optomechanics scenario and write CSV/JSON outputs.

Usage:
    python scripts/simulate.py --scenario data/scenarios/dispersion.conf
    python scripts/simulate.py --scenario data/scenarios/qe_map.conf --threads 8 --out results
    python scripts/simulate.py --scenario data/scenarios/pulse.conf --params data/params/default.conf

Exit codes:
    0  success
    2  configuration error (bad file, unknown key, invalid value, k outside the zone)
    3  numerical failure at a named sweep point
"""

import argparse
import logging
import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import get_settings
from src.sweep import EXIT_CONFIG, run_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Polariton optomechanics sweeps: dispersion, entanglement, g², QE, pulses",
    )
    parser.add_argument("--scenario", required=True, help="Scenario file (key = value lines)")
    parser.add_argument("--params", default=None, help="System parameter file; defaults if omitted")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker threads (default: POLOM_THREADS or 1)",
    )
    parser.add_argument("--out", default=None, help="Output directory (default: POLOM_OUTPUT_DIR)")
    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)

    try:
        settings = get_settings()
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    logging.basicConfig(
        level=settings.log_level_value,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    threads = args.threads if args.threads is not None else settings.threads
    if threads < 1:
        print(f"Error: --threads must be >= 1, got {threads}", file=sys.stderr)
        return EXIT_CONFIG

    print(f"\n{'='*60}")
    print(f"Scenario: {args.scenario}")
    print(f"{'='*60}\n")

    result = run_sweep(
        scenario_path=args.scenario,
        params_path=args.params,
        threads=threads,
        out_dir=args.out or settings.output_dir,
    )

    if result.get("error"):
        print(f"Error: {result['error']}", file=sys.stderr)
    else:
        for path in result.get("outputs") or []:
            print(f"  {path}")
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
