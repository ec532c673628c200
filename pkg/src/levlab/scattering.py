"""Scattering analysis of short-range potentials on the line.

Everything the index bookkeeping needs from a potential is produced here:

* unitary scattering matrices on an adaptively refined momentum grid,
* the threshold class (generic, or exceptional with the asymptotic ratio
  gamma of the bounded zero-energy solution) with an independent cross-check
  against a small-momentum extrapolation of the scattering matrix itself,
* the number of bound states, counted twice by unrelated routes (nodes of
  the zero-energy solution, and negative eigenvalues of a finite-difference
  Hamiltonian),
* the spectral-shift (time-delay) integral along the momentum side of the
  boundary square, summed from eigenphase increments,
* assembled boundary loops, full line or per parity sector.

Momenta and matrices live in the plane-wave basis (transmission on the
diagonal) or the even-odd basis; the index constructions use even-odd, where
the threshold forms are real orthogonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    ClassificationAmbiguous,
    PhaseJumpTooLarge,
    ResolutionInsufficient,
    SolverDiverged,
    SymmetryRequired,
)
from .loops import (
    BoundaryLoop,
    ResonanceClass,
    Sector,
    Side,
    WindingReport,
    connector_path,
    constant_path,
    interpolated_path,
    loop_winding,
)
from .potentials import Potential, integrated_absolute
from .propagate import (
    TransferEngine,
    build_mesh,
    fd_negative_eigenvalue_count,
    truncation_radius,
)

_SQ2 = 1.0 / math.sqrt(2.0)
_EO = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]])
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SolverSettings:
    """Numerical knobs for the scattering pipeline.

    The defaults satisfy every tolerance used in the test suite; loosen them
    only for exploratory runs.  ``dead_zone`` brackets the normalised slope of
    the zero-energy tail inside which neither threshold class can be
    certified.
    """

    kappa_min: float = 1e-4
    kappa_max: float = 1e3
    points_per_decade: int = 24
    refine_phase_step: float = 0.35
    refine_entry_step: float = 0.3
    max_refine_rounds: int = 14
    coarse_h: float = 0.05
    feature_cells: int = 32
    solver_tol: float = 2e-10
    max_halvings: int = 6
    tail_tol: float = 1e-10
    radius_cap: float = 2048.0
    dead_zone: tuple[float, float] = (1e-6, 1e-3)
    classify_probe: float = 2e-4
    classify_cross_tol: float = 1e-3
    shooting_horizon: float = 1e6
    fd_h: float = 0.005
    fd_min_box: float = 40.0
    fd_box_margin: float = 1.3
    fd_growth: float = 2.0
    fd_max_growth: int = 5
    winding_samples: int = 257
    winding_tol: float = 1e-9
    corner_tol: float = 1e-8


def to_even_odd(matrices: np.ndarray) -> np.ndarray:
    """Conjugate plane-wave scattering matrices into the even-odd basis.

    The transform is involutive, so it also maps even-odd back to plane.
    Accepts a single 2x2 matrix or a stack (n, 2, 2).
    """
    m = np.asarray(matrices, dtype=complex)
    return _EO @ m @ _EO


@dataclass
class ScatteringData:
    """Scattering matrices on an ascending momentum grid in a fixed basis."""

    kappas: np.ndarray
    matrices: np.ndarray
    basis: str = "plane"

    def in_even_odd(self) -> "ScatteringData":
        if self.basis == "even-odd":
            return self
        return ScatteringData(self.kappas, to_even_odd(self.matrices), "even-odd")

    def unitarity_defect(self) -> float:
        """Worst entrywise distance of S^dag S from the identity on the grid."""
        prod = np.conj(np.transpose(self.matrices, (0, 2, 1))) @ self.matrices
        return float(np.max(np.abs(prod - _I2)))

    def det_phases(self) -> np.ndarray:
        """Continuously unwrapped argument of det S along the grid."""
        dets = np.linalg.det(self.matrices)
        steps = np.angle(dets[1:] * np.conj(dets[:-1]))
        return np.angle(dets[0]) + np.concatenate([[0.0], np.cumsum(steps)])

    def eigenphase_curves(self) -> np.ndarray:
        """Unwrapped eigenphases (n, 2), branches matched by eigenvector overlap."""
        n = self.kappas.size
        phases = np.empty((n, 2))
        lam, vec = np.linalg.eig(self.matrices[0])
        order = np.argsort(np.angle(lam))
        lam, vec = lam[order], vec[:, order]
        phases[0] = np.angle(lam)
        for i in range(1, n):
            w, v = np.linalg.eig(self.matrices[i])
            overlap = np.abs(vec.conj().T @ v) ** 2
            if overlap[0, 0] + overlap[1, 1] < overlap[0, 1] + overlap[1, 0]:
                w, v = w[::-1], v[:, ::-1]
            phases[i] = phases[i - 1] + np.angle(w * np.conj(lam))
            lam, vec = w, v
        return phases

    def write_csv(self, path) -> None:
        """Entrywise CSV dump; floats use shortest round-trip formatting, so
        identical data produces byte-identical files."""
        header = "kappa,re11,im11,re12,im12,re21,im21,re22,im22"
        rows = [header]
        for k, m in zip(self.kappas, self.matrices):
            cells = [repr(float(k))]
            for i in (0, 1):
                for j in (0, 1):
                    cells.append(repr(float(m[i, j].real)))
                    cells.append(repr(float(m[i, j].imag)))
            rows.append(",".join(cells))
        with open(path, "w") as fh:
            fh.write("\n".join(rows) + "\n")


def _plane_matrices(engine: TransferEngine, kappas: np.ndarray) -> np.ndarray:
    t, r_left, r_right = engine.plane_wave_coefficients(kappas)
    mats = np.empty((kappas.size, 2, 2), dtype=complex)
    mats[:, 0, 0] = t
    mats[:, 0, 1] = r_right
    mats[:, 1, 0] = r_left
    mats[:, 1, 1] = t
    return mats


def s_matrix_grid(engine: TransferEngine, settings: SolverSettings) -> ScatteringData:
    """Plane-basis scattering matrices on a refined geometric momentum grid.

    Midpoints are inserted wherever the determinant phase or the entries jump
    by more than the configured steps, so every neighbour pair is close enough
    for unambiguous phase tracking.
    """
    decades = math.log10(settings.kappa_max / settings.kappa_min)
    n0 = int(round(decades * settings.points_per_decade)) + 1
    kappas = np.geomspace(settings.kappa_min, settings.kappa_max, n0)
    mats = _plane_matrices(engine, kappas)
    for _ in range(settings.max_refine_rounds):
        dets = np.linalg.det(mats)
        dphi = np.abs(np.angle(dets[1:] * np.conj(dets[:-1])))
        dent = np.sqrt(np.sum(np.abs(np.diff(mats, axis=0)) ** 2, axis=(1, 2)))
        need = (dphi > settings.refine_phase_step) | (dent > settings.refine_entry_step)
        if not need.any():
            return ScatteringData(kappas, mats, "plane")
        mids = np.sqrt(kappas[:-1][need] * kappas[1:][need])
        kappas = np.concatenate([kappas, mids])
        mats = np.concatenate([mats, _plane_matrices(engine, mids)])
        order = np.argsort(kappas)
        kappas, mats = kappas[order], mats[order]
    raise SolverDiverged(
        "momentum grid still refining after "
        f"{settings.max_refine_rounds} rounds ({kappas.size} points); "
        "the scattering matrix varies too rapidly to track"
    )


# ---------------------------------------------------------------------------
# Threshold behaviour


def threshold_matrix(resonance: ResonanceClass) -> np.ndarray:
    """Zero-energy scattering matrix in the even-odd basis.

    Generic thresholds give diag(-1, 1); an exceptional threshold with
    asymptotic ratio gamma gives the real orthogonal matrix with 2 gamma on
    the diagonal and +-(1 - gamma^2) off it, normalised by 1 + gamma^2.
    """
    if not resonance.is_exceptional:
        return np.diag([-1.0 + 0.0j, 1.0 + 0.0j])
    g = resonance.gamma
    return np.array(
        [[2.0 * g, 1.0 - g * g], [g * g - 1.0, 2.0 * g]], dtype=complex
    ) / (1.0 + g * g)


def zero_energy_tail(engine: TransferEngine) -> tuple[float, float, float, float]:
    """Asymptotic data (c1, c2, scale, ratio) of the zero-energy solution.

    The solution seeded flat (value 1, slope 0) at the left edge behaves as
    c1 + c2 x past the right edge.  ``ratio`` is the tail slope normalised by
    the solution's overall size and the edge position; it vanishes exactly on
    an exceptional threshold.
    """
    _, psi, dpsi = engine.edge_states()
    x_r = engine.x_max
    c2 = float(dpsi[-1])
    c1 = float(psi[-1]) - c2 * x_r
    scale = max(1.0, float(np.max(np.abs(psi))))
    ratio = abs(c2) * max(1.0, abs(x_r)) / scale
    return c1, c2, scale, ratio


def classify_threshold(engine: TransferEngine, settings: SolverSettings) -> ResonanceClass:
    """Threshold class from the zero-energy tail, cross-checked against the
    scattering matrix extrapolated to zero momentum.

    Raises ClassificationAmbiguous inside the dead zone, when an exceptional
    gamma degenerates towards zero (a zero-energy bound state rather than a
    resonance), or when the extrapolation disagrees with the classified form.
    """
    c1, _, _, ratio = zero_energy_tail(engine)
    low, high = settings.dead_zone
    if ratio >= high:
        resonance = ResonanceClass.generic()
    elif ratio <= low:
        if abs(c1) < 1e-6:
            raise ClassificationAmbiguous(
                "zero-energy solution decays on both sides "
                f"(c1 = {c1:.3e}); threshold eigenvalue, no resonance ratio"
            )
        resonance = ResonanceClass.exceptional(c1)
    else:
        raise ClassificationAmbiguous(
            f"normalised tail slope {ratio:.3e} falls in the dead zone "
            f"[{low:g}, {high:g}]"
        )
    k = settings.classify_probe
    probe = to_even_odd(_plane_matrices(engine, np.array([k, 2.0 * k])))
    extrapolated = 2.0 * probe[0] - probe[1]
    gap = float(np.max(np.abs(extrapolated - threshold_matrix(resonance))))
    if gap > settings.classify_cross_tol:
        raise ClassificationAmbiguous(
            f"threshold form cross-check failed: extrapolated scattering "
            f"matrix differs from the {resonance.tag} form by {gap:.3e}"
        )
    return resonance


# ---------------------------------------------------------------------------
# Bound-state counters (two independent routes)


def count_bound_states_shooting(engine: TransferEngine, settings: SolverSettings) -> int:
    """Bound states as nodes of the zero-energy solution flat at the left.

    Sign changes at cell edges count interior nodes; a final node hiding in
    the linear tail beyond the propagation interval is counted when the tail
    slope actually reaches zero within the configured horizon.
    """
    _, psi, _ = engine.edge_states()
    signs = np.sign(psi)
    signs = signs[signs != 0.0]
    nodes = int(np.sum(signs[:-1] * signs[1:] < 0))
    c1, c2, _, _ = zero_energy_tail(engine)
    end = c1 + c2 * engine.x_max
    horizon = settings.shooting_horizon * max(1.0, engine.x_max)
    if end * c2 < 0.0 and abs(c2) * horizon > abs(end):
        nodes += 1
    return nodes


def _fd_count(potential: Potential, box: float, h: float, parity: str | None) -> int:
    length = 2.0 * box if parity is None else box
    n = max(2000, int(round(length / h)))
    return fd_negative_eigenvalue_count(potential, box, n, parity=parity)


def count_bound_states_fd(
    potential: Potential,
    radius: float,
    settings: SolverSettings,
    *,
    parity: str | None = None,
) -> int:
    """Bound states as negative eigenvalues of a finite-difference box.

    Independent of the propagation route: no transfer matrices, no shooting.
    The box starts large enough for the weak-coupling tail estimate and keeps
    growing until the count stops changing; resolution is certified by grid
    doubling inside the counter itself.
    """
    strength = integrated_absolute(potential, max(radius, 8.0))
    box = max(settings.fd_min_box, settings.fd_box_margin * radius + 8.0)
    if strength < 1.2:
        # shallow well: weakest binding momentum ~ strength / 2
        box = max(box, 8.0 / max(0.45 * strength, 5e-3))
    box = min(box, 2000.0)
    count = _fd_count(potential, box, settings.fd_h, parity)
    for _ in range(settings.fd_max_growth):
        bigger = settings.fd_growth * box
        again = _fd_count(potential, bigger, settings.fd_h, parity)
        if again == count:
            return count
        box, count = bigger, again
    raise ResolutionInsufficient(
        f"negative-eigenvalue count still changing at box half-width {box:g}"
    )


# ---------------------------------------------------------------------------
# Time delay


def time_delay_integral(matrices) -> float:
    """Spectral-shift integral along the momentum side, from eigenphase sums.

    ``matrices`` runs from the threshold form to the identity; every step
    contributes the angles of the relative unitary S_next S_prev^dag.  Each
    angle must stay within pi/2 so the branch is unambiguous.  The result is
    minus the winding of det S along the side, i.e. the integral of the
    properly normalised time delay over all energies.
    """
    mats = [np.asarray(m, dtype=complex) for m in matrices]
    if len(mats) < 2:
        raise ValueError("need at least two matrices along the side")
    total = 0.0
    for prev, nxt in zip(mats[:-1], mats[1:]):
        angles = np.angle(np.linalg.eigvals(nxt @ prev.conj().T))
        worst = float(np.max(np.abs(angles)))
        if worst > 0.5 * np.pi + 1e-12:
            raise PhaseJumpTooLarge(
                f"eigenphase step {worst:.3f} rad exceeds pi/2; grid too coarse"
            )
        total += float(angles.sum())
    return -total / (2.0 * np.pi)


# ---------------------------------------------------------------------------
# Sector helpers


_SECTOR_SLOT = {Sector.EVEN: 0, Sector.ODD: 1}


def sector_threshold_value(sector: Sector, resonance: ResonanceClass) -> float:
    """Zero-energy scattering value of one parity sector: the even sector is
    -1 generic / +1 exceptional, the odd sector +1 generic / -1 exceptional."""
    if sector is Sector.EVEN:
        return 1.0 if resonance.is_exceptional else -1.0
    if sector is Sector.ODD:
        return -1.0 if resonance.is_exceptional else 1.0
    raise ValueError("sector threshold values exist for parity sectors only")


def _embed_sector(values: np.ndarray, sector: Sector) -> np.ndarray:
    """diag(s, 1) or diag(1, s): one sector's scalar data as 2x2 unitaries."""
    out = np.zeros(values.shape + (2, 2), dtype=complex)
    slot = _SECTOR_SLOT[sector]
    out[..., slot, slot] = values
    out[..., 1 - slot, 1 - slot] = 1.0
    return out


# ---------------------------------------------------------------------------
# Full analysis


class PotentialAnalysis:
    """Caches every derived quantity of one potential under fixed settings.

    The expensive steps (mesh convergence, the momentum grid, the counters)
    run once on first use and are shared by loops, reports, and tables.
    """

    def __init__(self, potential: Potential, settings: SolverSettings | None = None):
        self.potential = potential
        self.settings = settings or SolverSettings()
        self._sector_counts: dict[Sector, int] = {}
        self._reports: dict[Sector, WindingReport] = {}

    @cached_property
    def radius(self) -> float:
        """Certified truncation radius of the potential."""
        return truncation_radius(
            self.potential, tol=self.settings.tail_tol, cap=self.settings.radius_cap
        )

    @cached_property
    def engine(self) -> TransferEngine:
        """Transfer engine on a mesh refined until probe data stops moving."""
        s = self.settings
        r = self.radius
        mesh = build_mesh(
            self.potential, -r, r, coarse_h=s.coarse_h, feature_cells=s.feature_cells
        )
        probes = np.geomspace(1e-3, 50.0, 10)
        previous = None
        for _ in range(s.max_halvings + 1):
            engine = TransferEngine(self.potential, mesh)
            t, r_l, r_r = engine.plane_wave_coefficients(probes)
            c1, c2, scale, _ = zero_energy_tail(engine)
            snapshot = np.concatenate(
                [t, r_l, r_r, [complex(c1 / scale), complex(c2 / scale)]]
            )
            if previous is not None and float(np.max(np.abs(snapshot - previous))) < s.solver_tol:
                return engine
            previous = snapshot
            mesh = mesh.halved(self.potential)
        raise SolverDiverged(
            f"scattering data not converged after {s.max_halvings} mesh halvings"
        )

    @cached_property
    def scattering(self) -> ScatteringData:
        """Plane-basis scattering matrices on the refined momentum grid."""
        return s_matrix_grid(self.engine, self.settings)

    @cached_property
    def resonance(self) -> ResonanceClass:
        """Threshold class, with the extrapolation cross-check applied."""
        return classify_threshold(self.engine, self.settings)

    @cached_property
    def n_bound_shooting(self) -> int:
        return count_bound_states_shooting(self.engine, self.settings)

    @cached_property
    def n_bound_fd(self) -> int:
        return count_bound_states_fd(self.potential, self.radius, self.settings)

    def bound_states(self) -> int:
        """Certified bound-state count; both routes must agree."""
        if self.n_bound_shooting != self.n_bound_fd:
            raise ResolutionInsufficient(
                f"bound-state counters disagree: {self.n_bound_shooting} from the "
                f"zero-energy nodes, {self.n_bound_fd} from the finite-difference box"
            )
        return self.n_bound_shooting

    def sector_bound_states(self, sector: Sector) -> int:
        """Half-line bound states of one parity sector (symmetric potentials)."""
        self._require_symmetric(sector)
        if sector not in self._sector_counts:
            parity = "even" if sector is Sector.EVEN else "odd"
            self._sector_counts[sector] = count_bound_states_fd(
                self.potential, self.radius, self.settings, parity=parity
            )
        return self._sector_counts[sector]

    def sector_resonance(self, sector: Sector) -> ResonanceClass:
        """Threshold class of one parity sector.

        A symmetric potential can only be exceptional with gamma = +1 (even
        resonance) or -1 (odd resonance); the matching sector inherits the
        exceptional tag, the other stays generic.
        """
        self._require_symmetric(sector)
        full = self.resonance
        if not full.is_exceptional:
            return ResonanceClass.generic()
        g = full.gamma
        if abs(g - 1.0) <= 1e-3:
            resonant = Sector.EVEN
        elif abs(g + 1.0) <= 1e-3:
            resonant = Sector.ODD
        else:
            raise ClassificationAmbiguous(
                f"symmetric potential with exceptional gamma {g:.6f} not at +-1"
            )
        if sector is resonant:
            return ResonanceClass.exceptional(1.0 if resonant is Sector.EVEN else -1.0)
        return ResonanceClass.generic()

    def _require_symmetric(self, sector: Sector) -> None:
        if sector is Sector.FULL:
            return
        if not self.potential.symmetric:
            raise SymmetryRequired(
                "parity sectors exist only for potentials declared symmetric"
            )

    def _b2_nodes(self, sector: Sector) -> tuple[np.ndarray, np.ndarray]:
        data = self.scattering.in_even_odd()
        if sector is Sector.FULL:
            start = threshold_matrix(self.resonance)
            mats = data.matrices
        else:
            start_value = sector_threshold_value(sector, self.sector_resonance(sector))
            start = _embed_sector(np.array(start_value, dtype=complex), sector)
            slot = _SECTOR_SLOT[sector]
            mats = _embed_sector(data.matrices[:, slot, slot], sector)
        ts = data.kappas / (1.0 + data.kappas)
        params = np.concatenate([[0.0], ts, [1.0]])
        values = np.concatenate([[start], mats, [_I2]])
        return params, values

    def loop(self, sector: Sector = Sector.FULL) -> BoundaryLoop:
        """The boundary square: threshold connector, momentum side, identity
        sides at infinite energy and at the left end of the dilation axis."""
        self._require_symmetric(sector)
        params, values = self._b2_nodes(sector)
        tag = "S" if sector is Sector.FULL else f"S_{sector.value}"
        return BoundaryLoop(
            sides=(
                connector_path(values[0], Side.B1),
                interpolated_path(Side.B2, params, values, label=tag),
                constant_path(Side.B3, _I2, label="1"),
                constant_path(Side.B4, _I2, label="1"),
            )
        )

    def time_delay(self) -> float:
        """Spectral-shift integral over the momentum side (full line)."""
        params, values = self._b2_nodes(Sector.FULL)
        return time_delay_integral(values)

    def report(self, sector: Sector = Sector.FULL) -> WindingReport:
        """Windings, bound states, and the residual of total = -n_bound."""
        if sector in self._reports:
            return self._reports[sector]
        s = self.settings
        base = loop_winding(
            self.loop(sector),
            corner_tol=s.corner_tol,
            n_samples=s.winding_samples,
            tol=s.winding_tol,
        )
        if sector is Sector.FULL:
            n = self.bound_states()
            resonance = self.resonance
        else:
            n = self.sector_bound_states(sector)
            resonance = self.sector_resonance(sector)
        report = WindingReport(
            w=base.w,
            total=base.total,
            n_bound=n,
            correction=base.correction,
            resonance=resonance,
            residual=abs(base.total + n),
        )
        self._reports[sector] = report
        return report


def zero_energy_tail_slope(potential: Potential, settings: SolverSettings | None = None) -> float:
    """Normalised tail slope of the zero-energy solution (the classification
    ratio, with sign).  Vanishes exactly at an exceptional threshold, so roots
    in a potential-family parameter locate resonant members."""
    analysis = PotentialAnalysis(potential, settings)
    _, c2, scale, _ = zero_energy_tail(analysis.engine)
    return c2 * max(1.0, analysis.engine.x_max) / scale
