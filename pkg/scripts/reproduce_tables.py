#!/usr/bin/env python3
"""Re-run the three built-in worked examples and diff them against the
embedded reference tables.

Usage:
    python scripts/reproduce_tables.py [--digits 64]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from simulroot.fixtures import EXAMPLES, TABLE_TOLERANCE, diff_against_table, run_example
from simulroot.ingest import render_trace
from simulroot.numeric import PrecisionConfig, make_real


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--digits", type=int, default=64)
    args = parser.parse_args()

    tolerance = make_real(TABLE_TOLERANCE, PrecisionConfig(digits=args.digits))
    exit_code = 0
    for index, example in EXAMPLES.items():
        print(f"== table {index}: {example.name} ==")
        print(f"   {example.expression}, start {', '.join(example.init)}")
        report = run_example(example, digits=args.digits)
        sys.stdout.write(render_trace(report, "table", places=19).decode())
        diffs = diff_against_table(report, example, digits=args.digits)
        worst = max(diffs, key=lambda cell: cell.discrepancy)
        print(f"   worst cell: row {worst.row} x{worst.col + 1}, gap {worst.discrepancy.dec:.2E}")
        for cell in diffs:
            if cell.discrepancy > tolerance:
                print(f"   MISMATCH row {cell.row} x{cell.col + 1} (gap {cell.discrepancy.dec:.2E})")
                if cell.note:
                    print(f"     note: {cell.note}")
                exit_code = 3
        print()
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
