"""Unitary boundary loops over the compactified energy-dilation square.

The index bookkeeping lives on the boundary of a square whose horizontal
coordinate is energy (momentum squared) and whose vertical coordinate is the
spectral parameter of the dilation generator.  The four sides are traversed
counterclockwise:

    B1: zero-energy side, dilation parameter x from -inf to +inf
    B2: energy side at x = +inf, momentum kappa from 0 to +inf
    B3: infinite-energy side, x from +inf back to -inf
    B4: energy side at x = -inf, kappa from +inf back to 0

Each side carries a norm-continuous family of 2x2 unitaries; a closed loop
has a well defined winding number of the determinant, computed here by phase
unwrapping of determinant step ratios with adaptive sample doubling.

Infinite endpoint coordinates are represented by exact endpoint values at
t = 0 and t = 1 of each side's unit-interval parametrisation; no floating
infinity ever enters a quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, ClassVar, Optional

import numpy as np

from .errors import (
    CornerMismatch,
    NonUnitaryPath,
    PhaseJumpTooLarge,
    WindingNotConverged,
)

INF = float("inf")

# tanh saturates to 1 and sech underflows past double precision well before
# the argument reaches this cap, so clipping changes nothing measurable while
# keeping cosh away from overflow.
_ARG_CAP = 40.0

_I2 = np.eye(2, dtype=complex)


def r_even(x):
    """Universal even-sector multiplier -tanh(pi x) - i sech(pi x).

    Accepts scalars or arrays; +-inf map to the exact limits -+1.  The value
    lies on the unit circle for every real argument.
    """
    arr = np.asarray(x, dtype=float)
    z = np.clip(np.pi * arr, -_ARG_CAP, _ARG_CAP)
    out = -np.tanh(z) - 1j / np.cosh(z)
    out = np.where(np.isposinf(arr), -1.0 + 0.0j, out)
    out = np.where(np.isneginf(arr), 1.0 + 0.0j, out)
    if np.ndim(x) == 0:
        return complex(out)
    return out


def r_odd(x):
    """Universal odd-sector multiplier, the complex conjugate of r_even."""
    return np.conjugate(r_even(x))


# ---------------------------------------------------------------------------
# 2x2 unitary values


def unitarity_defect(u: np.ndarray) -> float:
    """Max-norm distance of U^dag U from the identity."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def as_unitary(entries, *, strict: bool = True, tol: float = 1e-10) -> np.ndarray:
    """Coerce input to a 2x2 complex matrix, checking unitarity when strict."""
    u = np.array(entries, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {u.shape}")
    if strict:
        defect = unitarity_defect(u)
        if not defect < tol:  # also rejects nan
            raise ValueError(f"matrix is not unitary: defect {defect:.3e} >= {tol:g}")
    return u


def nearest_unitary(m: np.ndarray) -> np.ndarray:
    """Polar projection of an almost-unitary matrix back onto U(2)."""
    w, _, vh = np.linalg.svd(m)
    return w @ vh


class Side(Enum):
    """Sides of the boundary square in traversal order.

    B1 holds the zero-energy threshold connector (dilation sweep up), B2 the
    physical scattering matrices (momentum sweep up), B3 the infinite-energy
    connector (dilation sweep back), and B4 the return momentum sweep on the
    free edge, identically the identity for decaying systems.
    """

    B1 = 1
    B2 = 2
    B3 = 3
    B4 = 4


class Sector(Enum):
    """Parity sector of the full-line problem."""

    EVEN = "even"
    ODD = "odd"
    FULL = "full"


# ---------------------------------------------------------------------------
# Report types


@dataclass(frozen=True)
class ResonanceClass:
    """Threshold behaviour tag: generic, or exceptional with the ratio of the
    right to the left asymptotic constant of the bounded zero-energy solution."""

    tag: str
    gamma: Optional[float] = None

    _TAGS: ClassVar[tuple[str, str]] = ("generic", "exceptional")

    def __post_init__(self):
        if self.tag not in self._TAGS:
            raise ValueError(f"unknown resonance tag {self.tag!r}")
        if self.tag == "exceptional":
            if self.gamma is None or self.gamma == 0.0:
                raise ValueError("exceptional class requires a nonzero gamma")
        elif self.gamma is not None:
            raise ValueError("generic class carries no gamma")

    @classmethod
    def generic(cls) -> "ResonanceClass":
        return cls("generic")

    @classmethod
    def exceptional(cls, gamma: float) -> "ResonanceClass":
        return cls("exceptional", float(gamma))

    @property
    def is_exceptional(self) -> bool:
        return self.tag == "exceptional"

    def to_dict(self) -> dict:
        return {"tag": self.tag, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, data: dict) -> "ResonanceClass":
        return cls(data["tag"], data.get("gamma"))


@dataclass(frozen=True)
class WindingReport:
    """Per-side windings of a boundary loop plus bound-state bookkeeping.

    ``correction`` is the part of the total winding not carried by the energy
    side B2 (the sum w1 + w3 + w4); with the time-delay sign convention used
    here the B2 integral equals n_bound plus this correction.  ``residual`` is
    |total + n_bound| and is small exactly when the index identity holds.
    """

    w: tuple[float, float, float, float]
    total: float
    n_bound: Optional[int] = None
    correction: Optional[float] = None
    resonance: Optional[ResonanceClass] = None
    residual: Optional[float] = None

    @property
    def integer_defect(self) -> float:
        """Distance of the total winding from the nearest integer."""
        return abs(self.total - round(self.total))

    def to_dict(self) -> dict:
        return {
            "w": list(self.w),
            "total": self.total,
            "n_bound": self.n_bound,
            "correction": self.correction,
            "resonance": None if self.resonance is None else self.resonance.to_dict(),
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WindingReport":
        res = data.get("resonance")
        return cls(
            w=tuple(data["w"]),
            total=data["total"],
            n_bound=data.get("n_bound"),
            correction=data.get("correction"),
            resonance=None if res is None else ResonanceClass.from_dict(res),
            residual=data.get("residual"),
        )


# ---------------------------------------------------------------------------
# Paths


@dataclass
class BoundaryPath:
    """One side of the boundary square: t in [0, 1] mapped to a 2x2 unitary.

    t = 0 is the start of the traversal in the side's stated orientation.
    """

    side: Side
    eval: Callable[[float], np.ndarray]
    label: str = ""

    def start_value(self) -> np.ndarray:
        return self.eval(0.0)

    def end_value(self) -> np.ndarray:
        return self.eval(1.0)


def dilation_coordinate(t: float) -> float:
    """Map the open unit interval onto the dilation axis, x = tan(pi (t - 1/2))."""
    return math.tan(math.pi * (t - 0.5))


def momentum_coordinate(t: float) -> float:
    """Map the open unit interval onto the momentum half-line, kappa = t / (1 - t)."""
    return t / (1.0 - t)


def _matrix_label(u: np.ndarray) -> str:
    if np.allclose(u, _I2, atol=1e-12):
        return "1"
    if np.allclose(u, -_I2, atol=1e-12):
        return "-1"
    return "U"


def constant_path(side: Side, value, *, label: str = "") -> BoundaryPath:
    """A side holding a single unitary value for the whole traversal."""
    v = as_unitary(value)

    def evaluate(t: float) -> np.ndarray:
        return v.copy()

    return BoundaryPath(side=side, eval=evaluate, label=label or _matrix_label(v))


def connector_path(
    s_end,
    side: Side = Side.B1,
    *,
    label: str = "",
    check_samples: int = 41,
    tol: float = 1e-10,
) -> BoundaryPath:
    """Dilation-side path joining the identity to a unitary endpoint.

    At dilation parameter x the value is

        1 + (1/2) (1 - R(x)) (s_end - 1),   R(x) = diag(r_even(x), r_odd(x)),

    which equals the identity at x = -inf and s_end at x = +inf.  On side B1
    the traversal runs with increasing x; on B3 it is reversed, starting at
    s_end and ending at the identity.

    The construction stays unitary for the admitted endpoint shapes (identity,
    +-1 blocks, and both zero-energy scattering forms); endpoints outside that
    family are rejected by a sampled unitarity check.
    """
    if side not in (Side.B1, Side.B3):
        raise ValueError("connector paths live on the dilation sides B1/B3")
    s = as_unitary(s_end)
    delta = s - _I2

    def value_at(x: float) -> np.ndarray:
        r = np.diag([r_even(x), r_odd(x)])
        return _I2 + 0.5 * (_I2 - r) @ delta

    forward = side is Side.B1

    def evaluate(t: float) -> np.ndarray:
        u = t if forward else 1.0 - t
        if u <= 0.0:
            return _I2.copy()
        if u >= 1.0:
            return s.copy()
        return value_at(dilation_coordinate(u))

    path = BoundaryPath(side=side, eval=evaluate, label=label or _matrix_label(s))
    worst = max(unitarity_defect(evaluate(float(t))) for t in np.linspace(0.0, 1.0, check_samples))
    if not worst < tol:
        raise NonUnitaryPath(
            f"connector endpoint leaves the unitary family along the path "
            f"(worst defect {worst:.3e} >= {tol:g})"
        )
    return path


def interpolated_path(
    side: Side,
    node_params,
    node_values,
    *,
    label: str = "",
    node_tol: float = 1e-8,
) -> BoundaryPath:
    """Piecewise-linear path through unitary nodes, re-projected onto U(2).

    Node parameters must be strictly increasing and span [0, 1]; each node must
    be unitary to ``node_tol``.  Between nodes the entries are interpolated
    linearly and polar-projected, which keeps the path unitary and continuous.
    """
    ts = np.asarray(node_params, dtype=float)
    us = np.asarray(node_values, dtype=complex)
    if ts.ndim != 1 or us.shape != (ts.size, 2, 2):
        raise ValueError("need matching 1d parameters and (n, 2, 2) values")
    if ts[0] != 0.0 or ts[-1] != 1.0 or np.any(np.diff(ts) <= 0):
        raise ValueError("node parameters must increase strictly from 0 to 1")
    worst = max(unitarity_defect(u) for u in us)
    if not worst < node_tol:
        raise NonUnitaryPath(f"interpolation node is not unitary (defect {worst:.3e})")

    def evaluate(t: float) -> np.ndarray:
        t = min(max(float(t), 0.0), 1.0)
        j = int(np.searchsorted(ts, t, side="right")) - 1
        if j >= ts.size - 1:
            return us[-1].copy()
        if t == ts[j]:
            return us[j].copy()
        theta = (t - ts[j]) / (ts[j + 1] - ts[j])
        return nearest_unitary((1.0 - theta) * us[j] + theta * us[j + 1])

    return BoundaryPath(side=side, eval=evaluate, label=label)


def reverse_path(path: BoundaryPath, side: Optional[Side] = None) -> BoundaryPath:
    """The same values traversed in the opposite direction."""
    return BoundaryPath(
        side=side or path.side,
        eval=lambda t: path.eval(1.0 - t),
        label=path.label,
    )


def concat_paths(
    a: BoundaryPath,
    b: BoundaryPath,
    *,
    side: Optional[Side] = None,
    tol: float = 1e-8,
) -> BoundaryPath:
    """Concatenation of two paths; the end of `a` must match the start of `b`."""
    gap = float(np.max(np.abs(a.end_value() - b.start_value())))
    if not gap < tol:
        raise ValueError(f"paths do not join: endpoint gap {gap:.3e}")

    def evaluate(t: float) -> np.ndarray:
        if t <= 0.5:
            return a.eval(2.0 * t)
        return b.eval(2.0 * t - 1.0)

    return BoundaryPath(side=side or a.side, eval=evaluate, label=f"{a.label}*{b.label}")


def max_value_step(path: BoundaryPath, n_samples: int = 129) -> float:
    """Largest entrywise jump between consecutive samples; halves under
    refinement for a continuous path."""
    ts = np.linspace(0.0, 1.0, n_samples)
    vals = [path.eval(float(t)) for t in ts]
    return max(
        float(np.max(np.abs(vals[i + 1] - vals[i]))) for i in range(len(vals) - 1)
    )


def path_unitarity_defect(path: BoundaryPath, n_samples: int = 129) -> float:
    """Worst sampled unitarity defect along the path."""
    ts = np.linspace(0.0, 1.0, n_samples)
    return max(unitarity_defect(path.eval(float(t))) for t in ts)


# ---------------------------------------------------------------------------
# Winding numbers


def _phase_steps(path: BoundaryPath, n: int) -> np.ndarray:
    ts = np.linspace(0.0, 1.0, n)
    dets = np.empty(n, dtype=complex)
    for i, t in enumerate(ts):
        dets[i] = np.linalg.det(path.eval(float(t)))
    return np.angle(dets[1:] * np.conj(dets[:-1]))


def winding(
    path: BoundaryPath,
    n_samples: int = 257,
    refine: bool = True,
    *,
    tol: float = 1e-8,
    max_samples: int = 1 << 17,
) -> float:
    """Winding number of det along the path via unwrapped phase steps.

    Doubles the sample count until two successive estimates agree to ``tol``
    and no single step exceeds pi/2.  The phase-step sum telescopes, so for a
    continuous path the estimate is exact as soon as the sampling is fine
    enough to rule out hidden full turns.
    """
    if n_samples < 16:
        raise ValueError("n_samples must be at least 16")
    n = int(n_samples)
    steps = _phase_steps(path, n)
    est = float(steps.sum() / (2.0 * np.pi))
    if not refine:
        if steps.size and float(np.max(np.abs(steps))) > np.pi / 2:
            raise PhaseJumpTooLarge(
                f"phase step exceeds pi/2 at n_samples={n} with refinement disabled"
            )
        return est
    while True:
        n2 = 2 * n - 1
        steps2 = _phase_steps(path, n2)
        est2 = float(steps2.sum() / (2.0 * np.pi))
        max_step = float(np.max(np.abs(steps2))) if steps2.size else 0.0
        if max_step <= np.pi / 2 and abs(est2 - est) < tol:
            return est2
        if n2 >= max_samples:
            if max_step > np.pi / 2:
                raise PhaseJumpTooLarge(
                    f"determinant phase step {max_step:.3f} rad still exceeds pi/2 "
                    f"at the sample cap {n2}"
                )
            raise WindingNotConverged(
                f"winding estimates still moving by {abs(est2 - est):.3e} at the sample cap"
            )
        n, est = n2, est2


@dataclass
class BoundaryLoop:
    """The four sides of the boundary square in traversal order B1..B4."""

    sides: tuple[BoundaryPath, BoundaryPath, BoundaryPath, BoundaryPath]

    def __post_init__(self):
        if len(self.sides) != 4:
            raise ValueError("a boundary loop has exactly four sides")
        expected = (Side.B1, Side.B2, Side.B3, Side.B4)
        got = tuple(p.side for p in self.sides)
        if got != expected:
            raise ValueError(f"sides out of order: {got}")

    def corner_defect(self) -> float:
        """Largest mismatch between the end of one side and the start of the next."""
        worst = 0.0
        for i in range(4):
            here = self.sides[i].end_value()
            there = self.sides[(i + 1) % 4].start_value()
            worst = max(worst, float(np.max(np.abs(here - there))))
        return worst

    def labels(self) -> tuple[str, str, str, str]:
        return tuple(p.label for p in self.sides)


def loop_winding(
    loop: BoundaryLoop,
    *,
    corner_tol: float = 1e-8,
    n_samples: int = 257,
    tol: float = 1e-8,
    max_samples: int = 1 << 17,
) -> WindingReport:
    """Per-side windings (and their sum) of a closed boundary loop.

    Returns a partial report: bound-state count and resonance class are left
    for the caller that knows the underlying system.
    """
    defect = loop.corner_defect()
    if not defect < corner_tol:
        raise CornerMismatch(f"loop corners differ by {defect:.3e} >= {corner_tol:g}")
    ws = tuple(
        winding(p, n_samples=n_samples, tol=tol, max_samples=max_samples)
        for p in loop.sides
    )
    total = float(sum(ws))
    return WindingReport(w=ws, total=total, correction=ws[0] + ws[2] + ws[3])
