#!/usr/bin/env python3
"""Run the three-gate qubit purification demo and print its report."""

import argparse
import math
import sys

from purifykit import qubit_demo


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=float, default=0.5, help="weight of the x+ state")
    parser.add_argument("--theta", type=float, default=math.pi / 4)
    parser.add_argument("--phase", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    report = qubit_demo(args.q, args.theta, args.phase, seed=args.seed)
    print(report.render())
    return 0 if report.passed() else 2


if __name__ == "__main__":
    sys.exit(main())
