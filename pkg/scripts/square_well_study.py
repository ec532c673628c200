"""Full pipeline for one square well: counters, sector windings, time delay."""

import argparse
import sys

from levlab.loops import Sector
from levlab.potentials import square_well
from levlab.scattering import PotentialAnalysis


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--depth", type=float, default=1.0)
    parser.add_argument("--half-width", type=float, default=1.0)
    parser.add_argument("--phase-csv", help="write unwrapped phase curves here")
    args = parser.parse_args()

    analysis = PotentialAnalysis(square_well(args.depth, args.half_width))
    print(f"potential: {analysis.potential.label}")

    rc = analysis.resonance
    print(f"threshold: {'exceptional (gamma = %g)' % rc.gamma if rc.is_exceptional else 'generic'}")
    print(
        f"bound states: shooting = {analysis.n_bound_shooting}, "
        f"finite difference = {analysis.n_bound_fd}"
    )

    for sector in (Sector.FULL, Sector.EVEN, Sector.ODD):
        report = analysis.report(sector)
        w = ", ".join(f"{v:+.6f}" for v in report.w)
        print(
            f"  [{sector.value:<4}] w = ({w})  total = {report.total:+.6f}  "
            f"n = {report.n_bound}  residual = {report.residual:.2e}"
        )

    full = analysis.report(Sector.FULL)
    delay = analysis.time_delay()
    print(f"time delay integral: {delay:.9f} (n + correction = {full.n_bound + full.correction:.9f})")

    if args.phase_csv:
        from levlab.cli import _write_phase_csv

        _write_phase_csv(args.phase_csv, analysis.scattering)
        print(f"wrote {args.phase_csv}")


if __name__ == "__main__":
    sys.exit(main())
