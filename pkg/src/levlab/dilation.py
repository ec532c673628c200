"""Verification of the half-space splitting as a dilation multiplier.

The positive-frequency half of a function f on the line, restricted to the
ray of direction omega,

    (T f)(r omega) = (2 pi)^(-1/2) * integral_0^inf exp(i kappa r)
                     fhat(kappa omega) dkappa,

acts diagonally in the scale decomposition: on the even part it multiplies
the Mellin spectrum by (1 - r_even(s)) / 2, on the odd part by
(1 - r_odd(s)) / 2, with the same universal circle-valued multipliers that
build the threshold connectors of the boundary loops.  This module checks
that statement numerically: the left side by adaptive quadrature of the
closed-form Fourier transform, the right side by a discretised unitary
Mellin transform, with no shared code between the routes.

The Mellin convention is M f(s) = (2 pi)^(-1/2) * integral_0^inf
x^(-1/2 - i s) f(x) dx, evaluated after x = exp(u) as an ordinary Fourier
sum on a uniform u grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermval

from .errors import QuadratureNotConverged
from .loops import r_even, r_odd

_SQRT_2PI = math.sqrt(2.0 * math.pi)

GAUSSIAN = "gaussian-cosine"
HERMITE = "hermite"

# Evaluation point standing in for r = 0 (the Mellin kernel x^(-1/2+is)
# needs a positive abscissa; the multiplier image is continuous at 0).
ORIGIN_PROXY = 1e-9


@dataclass(frozen=True)
class ProbeFunction:
    """A test function with a closed-form Fourier transform.

    gaussian-cosine: amplitude * cos(freq x) * exp(-(x - center)^2 / 2 width^2)
    hermite:         amplitude * H_order(x / width) * exp(-x^2 / 2 width^2)
    """

    kind: str
    width: float
    center: float = 0.0
    freq: float = 0.0
    order: int = 0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.kind not in (GAUSSIAN, HERMITE):
            raise ValueError(f"unknown test-function kind {self.kind!r}")
        if not self.width > 0:
            raise ValueError("width must be positive")
        if self.kind == GAUSSIAN and self.order != 0:
            raise ValueError("gaussian-cosine takes no Hermite order")
        if self.kind == HERMITE:
            if self.center != 0.0 or self.freq != 0.0:
                raise ValueError("hermite kind is centred and unmodulated")
            if self.order < 0:
                raise ValueError("order must be nonnegative")

    @property
    def label(self) -> str:
        if self.kind == HERMITE:
            return f"hermite(n={self.order}, w={self.width:g})"
        bits = [f"w={self.width:g}"]
        if self.center:
            bits.append(f"c={self.center:g}")
        if self.freq:
            bits.append(f"nu={self.freq:g}")
        return f"gaussian({', '.join(bits)})"

    def _hermite(self, y: np.ndarray) -> np.ndarray:
        coeff = np.zeros(self.order + 1)
        coeff[-1] = 1.0
        return hermval(y, coeff)

    def value(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == HERMITE:
            return (
                self.amplitude
                * self._hermite(x / self.width)
                * np.exp(-(x * x) / (2.0 * self.width**2))
            )
        return (
            self.amplitude
            * np.cos(self.freq * x)
            * np.exp(-((x - self.center) ** 2) / (2.0 * self.width**2))
        )

    def fourier(self, k) -> np.ndarray:
        """Unitary-convention Fourier transform, in closed form."""
        k = np.asarray(k, dtype=float)
        w, c, nu = self.width, self.center, self.freq
        if self.kind == HERMITE:
            return (
                self.amplitude
                * w
                * (-1j) ** self.order
                * self._hermite(w * k)
                * np.exp(-(w * k) ** 2 / 2.0)
            )
        lobe_minus = np.exp(-1j * (k - nu) * c - (w * (k - nu)) ** 2 / 2.0)
        lobe_plus = np.exp(-1j * (k + nu) * c - (w * (k + nu)) ** 2 / 2.0)
        return self.amplitude * 0.5 * w * (lobe_minus + lobe_plus)

    def even_part(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return 0.5 * (self.value(r) + self.value(-r))

    def odd_part(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return 0.5 * (self.value(r) - self.value(-r))

    def momentum_cutoff(self) -> float:
        """Past this momentum the transform is below 1e-17 of its peak."""
        return abs(self.freq) + (9.0 + 2.0 * self.order) / self.width


@lru_cache(maxsize=16)
def _gauss_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def apply_halfline_fourier(
    fn: ProbeFunction,
    r,
    omega: int,
    *,
    tol: float = 1e-10,
    max_nodes: int = 8192,
) -> np.ndarray:
    """(T f)(r omega) by adaptive Gauss-Legendre on the momentum half-line.

    Node counts double until two estimates agree to ``tol`` everywhere.
    """
    if omega not in (-1, 1):
        raise ValueError("omega must be +1 or -1")
    r = np.atleast_1d(np.asarray(r, dtype=float))
    cap = fn.momentum_cutoff()
    previous = None
    n = 64
    while n <= max_nodes:
        base, weights = _gauss_nodes(n)
        nodes = 0.5 * cap * (base + 1.0)
        scaled = 0.5 * cap * weights
        fhat = fn.fourier(omega * nodes)
        phases = np.exp(1j * np.outer(r, nodes))
        vals = (phases @ (scaled * fhat)) / _SQRT_2PI
        if previous is not None and float(np.max(np.abs(vals - previous))) < tol:
            return vals
        previous = vals
        n *= 2
    raise QuadratureNotConverged(
        f"half-line Fourier quadrature not settled below {tol:g} at {max_nodes} nodes"
    )


class MellinEvaluator:
    """Discretised unitary Mellin transform on a fixed logarithmic grid.

    Forward: phi(s) = (du / sqrt(2 pi)) * sum_u exp(-i sign s u) e^(u/2) f(e^u).
    Inverse at target x: x^(-1/2) (ds / sqrt(2 pi)) * sum_s exp(i sign s ln x) phi(s).

    ``sign = +1`` is the convention the multiplier statement refers to;
    flipping it reverses the spectral axis and must wreck the identity, which
    the command-line self-test uses as a built-in failure probe.
    """

    def __init__(
        self,
        *,
        u_min: float = -44.0,
        u_max: float = 4.0,
        du: float = 0.02,
        s_max: float = 48.0,
        ds: float = 0.02,
        sign: float = 1.0,
        chunk: int = 512,
    ):
        if sign not in (1.0, -1.0):
            raise ValueError("sign must be +-1")
        self.u = np.arange(u_min, u_max + 0.5 * du, du)
        self.du = du
        self.s = np.arange(-s_max, s_max + 0.5 * ds, ds)
        self.ds = ds
        self.sign = sign
        self.chunk = chunk

    @property
    def x(self) -> np.ndarray:
        """Abscissae e^u of the logarithmic sampling grid."""
        return np.exp(self.u)

    def forward(self, samples: np.ndarray) -> np.ndarray:
        """Mellin spectrum of a function given by its values on ``self.x``."""
        h = np.exp(0.5 * self.u) * np.asarray(samples)
        out = np.empty(self.s.size, dtype=complex)
        for start in range(0, self.s.size, self.chunk):
            block = self.s[start : start + self.chunk]
            kernel = np.exp((-1j * self.sign) * np.outer(block, self.u))
            out[start : start + self.chunk] = kernel @ h
        return out * (self.du / _SQRT_2PI)

    def inverse_at(self, spectrum: np.ndarray, x) -> np.ndarray:
        """Inverse transform of a spectrum, evaluated at positive targets."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(x <= 0.0):
            raise ValueError("Mellin inversion targets must be positive")
        kernel = np.exp((1j * self.sign) * np.outer(np.log(x), self.s))
        return (kernel @ spectrum) * (self.ds / _SQRT_2PI) / np.sqrt(x)

    def parseval_defect(self, samples: np.ndarray) -> float:
        """Relative mismatch of the grid norms on both sides of the transform;
        small exactly when the discretisation resolves the function."""
        h = np.exp(0.5 * self.u) * np.asarray(samples)
        left = float(np.sum(np.abs(h) ** 2) * self.du)
        right = float(np.sum(np.abs(self.forward(samples)) ** 2) * self.ds)
        return abs(right - left) / max(left, 1e-300)


def apply_half_one_minus_r(
    fn: ProbeFunction,
    r,
    omega: int,
    evaluator: MellinEvaluator | None = None,
) -> np.ndarray:
    """The claimed multiplier form of T f on the ray of direction omega:
    (1/2)(1 - r_even) on the even part plus omega times the odd analogue."""
    if omega not in (-1, 1):
        raise ValueError("omega must be +1 or -1")
    ev = evaluator or MellinEvaluator()
    r = np.atleast_1d(np.asarray(r, dtype=float))
    targets = np.where(r <= 0.0, ORIGIN_PROXY, r)
    xs = ev.x
    even_img = ev.inverse_at(r_even(ev.s) * ev.forward(fn.even_part(xs)), targets)
    odd_img = ev.inverse_at(r_odd(ev.s) * ev.forward(fn.odd_part(xs)), targets)
    even_half = 0.5 * (fn.even_part(targets) - even_img)
    odd_half = 0.5 * (fn.odd_part(targets) - odd_img)
    return even_half + omega * odd_half


def identity_residual(
    fn: ProbeFunction,
    evaluator: MellinEvaluator | None = None,
    r_points: np.ndarray | None = None,
) -> float:
    """Relative l2 gap between the two routes over a logarithmic ray grid."""
    ev = evaluator or MellinEvaluator()
    r = np.geomspace(0.05, 6.0, 20) if r_points is None else np.asarray(r_points)
    diffs = []
    scale = []
    for omega in (1, -1):
        direct = apply_halfline_fourier(fn, r, omega)
        multiplier = apply_half_one_minus_r(fn, r, omega, ev)
        diffs.append(direct - multiplier)
        scale.append(direct)
    num = float(np.linalg.norm(np.concatenate(diffs)))
    den = float(np.linalg.norm(np.concatenate(scale)))
    return num / den if den > 1e-12 else num


def default_suite() -> tuple[ProbeFunction, ...]:
    """Five test functions; the first is the calibration Gaussian whose
    half-line Fourier value at the origin is exactly one half."""
    return (
        ProbeFunction(GAUSSIAN, width=1.0),
        ProbeFunction(GAUSSIAN, width=0.7, center=1.3),
        ProbeFunction(GAUSSIAN, width=1.2, freq=2.5),
        ProbeFunction(HERMITE, width=0.9, order=1),
        ProbeFunction(GAUSSIAN, width=1.5, center=-0.4, freq=1.0),
    )


def suite_residuals(evaluator: MellinEvaluator | None = None) -> list[tuple[str, float]]:
    """(label, residual) for every function of the default suite, sharing one
    evaluator so the Mellin grids are built a single time."""
    ev = evaluator or MellinEvaluator()
    return [(fn.label, identity_residual(fn, ev)) for fn in default_suite()]
