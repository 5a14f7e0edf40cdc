#!/usr/bin/env python3
"""Replay all worked counterexamples and the bundled scenario files.

Usage: python scripts/run_demos.py
"""

import sys
from pathlib import Path

from hintegral.cli import main as cli

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def main() -> int:
    worst = 0
    for name in ("monotone-failure", "distributivity", "no-approx"):
        print(f"== demo {name} ==")
        worst = max(worst, cli(["demo", name]))
        print()
    for path in sorted(SCENARIOS.glob("continuity_*.json")) + sorted(
        SCENARIOS.glob("lineness_*.json")
    ) + sorted(SCENARIOS.glob("convexity_*.json")):
        print(f"== defi {path.name} ==")
        worst = max(worst, cli(["defi", str(path)]))
        print()
    print("== eval unit interval examples ==")
    for fn in ("function_root2.json", "function_const_1_1.json"):
        worst = max(
            worst,
            cli(["eval", str(SCENARIOS / "space_unit_interval.json"), str(SCENARIOS / fn)]),
        )
    return worst


if __name__ == "__main__":
    sys.exit(main())
