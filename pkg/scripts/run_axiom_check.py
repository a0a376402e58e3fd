#!/usr/bin/env python3
"""Run the 27-axiom fragment check on a grid of small models and, optionally,
the full corrupted-model sweep.

Usage:
    python scripts/run_axiom_check.py
    python scripts/run_axiom_check.py --mutations
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from diagcat import axioms as ax
from diagcat.abelian import parse_group
from diagcat.field import ExactField


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--mutations", action="store_true",
                        help="also run every targeted corruption")
    parser.add_argument("--max-dim", type=int, default=3)
    parser.add_argument("--max-len", type=int, default=2)
    args = parser.parse_args()

    grid = [
        (ExactField(3), parse_group("Z/2")),
        (ExactField(5), parse_group("Z/4")),
        (ExactField(7), parse_group("Z/2 + Z/2")),
    ]
    bound = ax.bounds(args.max_dim, args.max_len)
    for field, group in grid:
        t0 = time.time()
        report = ax.check_axioms(field, group, bound)
        status = "ok" if report.all_pass else "FAILED"
        print(
            f"{str(field):4s} {str(group):12s} N={bound.max_dimension} "
            f"M={bound.max_tensor_length}: {report.passed}/27 "
            f"({len(report.skipped)} skipped) [{time.time()-t0:.1f}s] {status}"
        )
        for r in report.failed:
            print(f"    axiom {r.index}: {r.detail}")

    if args.mutations:
        field, group = ExactField(5), parse_group("Z/4")
        small = ax.bounds(2, 2)
        print("\ncorrupted models (each should fail exactly its target):")
        for name, mut in ax.MUTATIONS.items():
            model = ax.mutated_model(field, group, small, name)
            report = ax.check_axioms(field, group, small, model)
            failed = sorted(r.index for r in report.failed)
            verdict = "ok" if failed == [mut.axiom] else "UNEXPECTED"
            print(f"  {name:32s} -> failed {failed} (target {mut.axiom}) {verdict}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
