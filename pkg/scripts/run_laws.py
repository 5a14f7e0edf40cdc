#!/usr/bin/env python3
"""Run the full randomized law suites and print the reports.

Usage: python scripts/run_laws.py [--trials N] [--seed S] [--json]
"""

import argparse
import json
import sys

from hintegral.oracle import check_algebra_laws, check_integral_laws


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    algebra = check_algebra_laws(args.trials, args.seed)
    integral = check_integral_laws(max(args.trials // 10, 1), args.seed)
    if args.json:
        print(json.dumps([algebra.to_json(), integral.to_json()], indent=2))
    else:
        for r in (algebra, integral):
            status = "ok" if r.ok else f"{len(r.violations)} violation(s)"
            print(f"{r.law}: {r.trials} trials: {status}")
            for v in r.violations[:10]:
                print(f"  {v}")
    return 0 if algebra.ok and integral.ok else 1


if __name__ == "__main__":
    sys.exit(main())
