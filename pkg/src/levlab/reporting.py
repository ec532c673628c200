"""Golden result tables and serialisable winding reports.

The tables pin down every verified configuration: the solvable point
interactions over attractive, trivial, repulsive, and infinitely strong
couplings, and three square wells (a generic one and the two resonance-tuned
depths).  Expected windings and bound-state counts are frozen literals;
``check_golden`` compares recomputed rows against them and names the exact
row and column of any disagreement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.optimize import brentq

from .errors import GoldenMismatch
from .loops import Sector, WindingReport
from .point import DELTA, DELTA_PRIME, PointInteraction, verify_levinson
from .potentials import Potential, square_well
from .scattering import PotentialAnalysis, SolverSettings, zero_energy_tail_slope

_COLUMNS = ("w1", "w2", "w3", "w4", "total", "n_bound")


@dataclass(frozen=True)
class TableRow:
    """One verified configuration: computed quantities next to frozen ones."""

    label: str
    w: tuple[float, float, float, float]
    total: float
    n_bound: int
    expected_w: tuple[float, float, float, float]
    expected_n: int

    @property
    def expected_total(self) -> float:
        return float(sum(self.expected_w))

    def mismatches(self, tol: float) -> list[tuple[str, float, float]]:
        """(column, computed, expected) triples exceeding the tolerance."""
        bad = []
        for name, got, want in zip(_COLUMNS[:4], self.w, self.expected_w):
            if abs(got - want) > tol:
                bad.append((name, got, want))
        if abs(self.total - self.expected_total) > tol:
            bad.append(("total", self.total, self.expected_total))
        if self.n_bound != self.expected_n:
            bad.append(("n_bound", float(self.n_bound), float(self.expected_n)))
        return bad


def _row_from_report(label: str, report: WindingReport, expected_w, expected_n) -> TableRow:
    return TableRow(
        label=label,
        w=report.w,
        total=report.total,
        n_bound=report.n_bound,
        expected_w=tuple(float(v) for v in expected_w),
        expected_n=int(expected_n),
    )


# (kind, coupling, sector, expected windings, expected bound states)
_POINT_GOLDEN = (
    (DELTA, -1.0, Sector.EVEN, (-0.5, -0.5, 0.0, 0.0), 1),
    (DELTA, 0.0, Sector.EVEN, (0.0, 0.0, 0.0, 0.0), 0),
    (DELTA, 1.0, Sector.EVEN, (-0.5, 0.5, 0.0, 0.0), 0),
    (DELTA, math.inf, Sector.EVEN, (-0.5, 0.0, 0.5, 0.0), 0),
    (DELTA_PRIME, -1.0, Sector.ODD, (0.0, -0.5, -0.5, 0.0), 1),
    (DELTA_PRIME, 0.0, Sector.ODD, (0.0, 0.0, 0.0, 0.0), 0),
    (DELTA_PRIME, 1.0, Sector.ODD, (0.0, 0.5, -0.5, 0.0), 0),
    (DELTA_PRIME, math.inf, Sector.ODD, (0.5, 0.0, -0.5, 0.0), 0),
)


def point_table_rows() -> list[TableRow]:
    """The point-interaction table in its nontrivial sector."""
    rows = []
    for kind, coupling, sector, expected_w, expected_n in _POINT_GOLDEN:
        interaction = PointInteraction(kind, coupling)
        report = verify_levinson(interaction, sector)
        name = "alpha" if kind == DELTA else "beta"
        label = f"{kind} {name}={coupling:g} [{sector.value}]"
        rows.append(_row_from_report(label, report, expected_w, expected_n))
    return rows


# ---------------------------------------------------------------------------
# Square wells, including the resonance-tuned depths


@lru_cache(maxsize=None)
def tuned_resonance_depth(variant: str) -> float:
    """Depth of the unit-half-width square well whose zero-energy solution
    goes flat at the edge: an odd resonance near (pi/2)^2, an even one near
    pi^2.  Located as a root of the tail slope; the propagation is exact for
    square wells, so the root is machine precise."""
    if variant == "odd":
        bracket = (2.0, 3.0)
    elif variant == "even":
        bracket = (9.0, 10.5)
    else:
        raise ValueError(f"unknown resonance variant {variant!r}")

    def slope(depth: float) -> float:
        return zero_energy_tail_slope(square_well(depth, 1.0))

    return float(brentq(slope, *bracket, xtol=1e-13, rtol=8.9e-16))


def tuned_exceptional_well(variant: str) -> Potential:
    """Unit-half-width square well tuned onto the odd or even resonance."""
    return square_well(tuned_resonance_depth(variant), 1.0)


# (label stem, well factory, per-sector expectations)
_WELL_GOLDEN = (
    (
        "square-well depth=1",
        lambda: square_well(1.0, 1.0),
        {
            Sector.FULL: ((-0.5, -0.5, 0.0, 0.0), 1),
            Sector.EVEN: ((-0.5, -0.5, 0.0, 0.0), 1),
            Sector.ODD: ((0.0, 0.0, 0.0, 0.0), 0),
        },
    ),
    (
        "square-well odd-resonance",
        lambda: tuned_exceptional_well("odd"),
        {
            Sector.FULL: ((0.0, -1.0, 0.0, 0.0), 1),
            Sector.EVEN: ((-0.5, -0.5, 0.0, 0.0), 1),
            Sector.ODD: ((0.5, -0.5, 0.0, 0.0), 0),
        },
    ),
    (
        "square-well even-resonance",
        lambda: tuned_exceptional_well("even"),
        {
            Sector.FULL: ((0.0, -2.0, 0.0, 0.0), 2),
            Sector.EVEN: ((0.0, -1.0, 0.0, 0.0), 1),
            Sector.ODD: ((0.0, -1.0, 0.0, 0.0), 1),
        },
    ),
)


def well_table_rows(settings: SolverSettings | None = None) -> list[TableRow]:
    """Square-well sector table: generic plus both tuned resonant depths."""
    rows = []
    for stem, factory, expectations in _WELL_GOLDEN:
        analysis = PotentialAnalysis(factory(), settings)
        for sector in (Sector.FULL, Sector.EVEN, Sector.ODD):
            expected_w, expected_n = expectations[sector]
            report = analysis.report(sector)
            label = f"{stem} [{sector.value}]"
            rows.append(_row_from_report(label, report, expected_w, expected_n))
    return rows


def reproduce_tables(settings: SolverSettings | None = None) -> list[TableRow]:
    """All golden rows: point interactions first, then the square wells."""
    return point_table_rows() + well_table_rows(settings)


def check_golden(rows, tol: float = 1e-6) -> None:
    """Raise GoldenMismatch naming the first offending row and column."""
    for row in rows:
        bad = row.mismatches(tol)
        if bad:
            column, got, want = bad[0]
            raise GoldenMismatch(
                f"table row {row.label!r}, column {column}: "
                f"computed {got:.10g}, expected {want:.10g}"
            )


def render_rows(rows) -> str:
    """Aligned text table of computed windings against the frozen values."""
    width = max(len(r.label) for r in rows) + 2
    header = (
        f"{'configuration':<{width}}"
        f"{'w1':>9}{'w2':>9}{'w3':>9}{'w4':>9}{'total':>9}{'n':>4}  status"
    )
    lines = [header, "-" * len(header)]
    for r in rows:
        bad = r.mismatches(1e-6)
        status = "ok" if not bad else "MISMATCH " + ",".join(b[0] for b in bad)
        cells = "".join(f"{v:>9.4f}" for v in (*r.w, r.total))
        lines.append(f"{r.label:<{width}}{cells}{r.n_bound:>4}  {status}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Report serialisation


def render_report(report: WindingReport) -> str:
    """Loss-free JSON form of a winding report."""
    return json.dumps(report.to_dict(), sort_keys=True, indent=2)


def parse_report(text: str) -> WindingReport:
    """Inverse of render_report; round-trips every field exactly."""
    return WindingReport.from_dict(json.loads(text))
