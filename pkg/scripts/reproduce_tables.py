"""Recompute every golden table row and compare against the frozen values."""

import argparse
import sys

from levlab.reporting import check_golden, render_rows, reproduce_tables


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-6)
    args = parser.parse_args()

    rows = reproduce_tables()
    print(render_rows(rows))
    check_golden(rows, tol=args.tol)
    print(f"\nall {len(rows)} rows reproduced within {args.tol:g}")


if __name__ == "__main__":
    sys.exit(main())
