"""Potential descriptors for the full-line scattering solver.

A potential carries, besides its profile, the metadata the solver needs:
declared tail decay, an optional exact support radius, breakpoints where the
profile is allowed to be non-smooth, and feature zones that the propagation
mesh must resolve.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

# Integrability of (1 + |x|)^(1/2 + eps) V requires faster decay than this.
MIN_DECAY_EXPONENT = 2.5


@dataclass(eq=False)
class Potential:
    """A real potential on the line.

    ``decay_exponent`` is the declared power-law bound on the tail; declaring
    a slow tail only warns, but the solver will refuse a truncation radius it
    cannot certify.  ``features`` lists (center, width) pairs marking zones the
    propagation mesh must refine.
    """

    profile: Callable[[np.ndarray], np.ndarray]
    decay_exponent: float = math.inf
    support_radius: Optional[float] = None
    symmetric: bool = False
    breakpoints: tuple[float, ...] = ()
    features: tuple[tuple[float, float], ...] = ()
    label: str = "potential"

    def __post_init__(self):
        if self.decay_exponent <= MIN_DECAY_EXPONENT:
            warnings.warn(
                f"declared tail decay exponent {self.decay_exponent:g} <= "
                f"{MIN_DECAY_EXPONENT}: outside the short-range class, results "
                "may not converge",
                stacklevel=3,
            )
        if self.support_radius is not None and self.support_radius <= 0:
            raise ValueError("support_radius must be positive")
        if self.symmetric:
            xs = np.linspace(0.1, self._probe_radius(), 37)
            left = self(-xs)
            right = self(xs)
            scale = max(1.0, float(np.max(np.abs(right))))
            if np.max(np.abs(left - right)) > 1e-10 * scale:
                raise ValueError("potential declared symmetric but V(-x) != V(x)")

    def _probe_radius(self) -> float:
        if self.support_radius is not None:
            return self.support_radius
        if self.features:
            return max(abs(c) + 4.0 * w for c, w in self.features)
        return 8.0

    def __call__(self, x) -> np.ndarray:
        return self.profile(np.asarray(x, dtype=float))


def square_well(depth: float, half_width: float) -> Potential:
    """V = -depth on [-half_width, half_width], zero elsewhere."""
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    a = float(half_width)
    d = float(depth)

    def profile(x: np.ndarray) -> np.ndarray:
        return np.where(np.abs(x) <= a, -d, 0.0)

    return Potential(
        profile=profile,
        decay_exponent=math.inf,
        support_radius=a,
        symmetric=True,
        breakpoints=(-a, a),
        label=f"square well (depth {d:g}, half-width {a:g})",
    )


def gaussian_wells(wells: Sequence[tuple[float, float, float]]) -> Potential:
    """Sum of Gaussian wells; each entry is (depth, center, width) with the
    well contributing -depth * exp(-(x - center)^2 / (2 width^2))."""
    entries = [(float(d), float(c), float(w)) for d, c, w in wells]
    for d, c, w in entries:
        if w <= 0:
            raise ValueError("well widths must be positive")

    def profile(x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x, dtype=float)
        for d, c, w in entries:
            out -= d * np.exp(-((x - c) ** 2) / (2.0 * w * w))
        return out

    mirrored = {(d, -c, w) for d, c, w in entries}
    symmetric = mirrored == set(entries)
    label = "gaussian well" if len(entries) == 1 else f"sum of {len(entries)} gaussian wells"
    return Potential(
        profile=profile,
        decay_exponent=math.inf,
        support_radius=None,
        symmetric=symmetric,
        features=tuple((c, w) for _, c, w in entries),
        label=label,
    )


def tabulated_potential(
    xs: Sequence[float],
    values: Sequence[float],
    *,
    decay_exponent: float = math.inf,
) -> Potential:
    """Piecewise-linear interpolation of samples, zero outside the table."""
    x = np.asarray(xs, dtype=float)
    v = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size < 2 or x.shape != v.shape:
        raise ValueError("need matching 1d abscissae and values, at least two points")
    if np.any(np.diff(x) <= 0):
        raise ValueError("abscissae must be strictly increasing")

    def profile(q: np.ndarray) -> np.ndarray:
        return np.interp(q, x, v, left=0.0, right=0.0)

    radius = float(max(abs(x[0]), abs(x[-1])))
    probe = np.linspace(0.0, radius, 101)
    symmetric = bool(np.max(np.abs(profile(probe) - profile(-probe))) < 1e-12)
    min_dx = float(np.min(np.diff(x)))
    span = 0.5 * float(x[-1] - x[0])
    center = 0.5 * float(x[-1] + x[0])
    return Potential(
        profile=profile,
        decay_exponent=float(decay_exponent),
        support_radius=radius,
        symmetric=symmetric,
        breakpoints=tuple(float(t) for t in x),
        features=((center, max(min_dx, span / 64.0)),),
        label=f"tabulated potential ({x.size} samples)",
    )


def zero_potential() -> Potential:
    """The free line."""
    return Potential(
        profile=lambda x: np.zeros_like(x, dtype=float),
        decay_exponent=math.inf,
        support_radius=1.0,
        symmetric=True,
        label="zero potential",
    )


def scaled_potential(base: Potential, factor: float) -> Potential:
    """The same profile multiplied by a coupling factor (metadata preserved)."""
    s = float(factor)
    return Potential(
        profile=lambda x: s * base.profile(np.asarray(x, dtype=float)),
        decay_exponent=base.decay_exponent,
        support_radius=base.support_radius,
        symmetric=base.symmetric,
        breakpoints=base.breakpoints,
        features=base.features,
        label=f"{base.label} x {s:g}",
    )


def integrated_absolute(potential: Potential, radius: float, n: int = 4097) -> float:
    """Trapezoid estimate of the integral of |V| over [-radius, radius]."""
    xs = np.linspace(-radius, radius, n)
    return float(np.trapezoid(np.abs(potential(xs)), xs))
