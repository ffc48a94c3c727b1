#!/usr/bin/env python3
"""Convergence-order study: third-order iteration vs multiplicity Newton.

For each built-in example, runs both methods, prints the max-norm error
per iteration and the empirical order estimated from the last error
triple above the precision floor.

Usage:
    python scripts/order_study.py [--digits 64] [--iters 12]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from simulroot.fixtures import EXAMPLES, run_example
from simulroot.solver import InsufficientDataError, Method, empirical_order, pre_floor_errors


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--digits", type=int, default=64)
    parser.add_argument("--iters", type=int, default=12)
    args = parser.parse_args()

    for index, example in EXAMPLES.items():
        print(f"== table {index}: {example.name} ==")
        for method in (Method.CHEBYSHEV, Method.NEWTON_BASELINE):
            iters = args.iters if method is Method.CHEBYSHEV else 4 * args.iters
            report = run_example(example, digits=args.digits, method=method, max_iters=iters)
            errors = report.trace.max_errors()
            usable = pre_floor_errors(errors, args.digits)
            print(f"  {method.value}:")
            for k, err in enumerate(errors):
                marker = "" if k < len(usable) else "   (at precision floor)"
                print(f"    k={k:<2d} max error {err.dec:.6E}{marker}")
                if k >= len(usable):
                    break
            try:
                order = empirical_order(usable)
                print(f"    empirical order ~ {order.dec:.4f}")
            except InsufficientDataError as exc:
                print(f"    empirical order unavailable: {exc}")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
