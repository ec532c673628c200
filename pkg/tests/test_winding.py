"""Winding engine on paths with analytically known answers."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from levlab.errors import CornerMismatch, PhaseJumpTooLarge
from levlab.loops import (
    BoundaryLoop,
    BoundaryPath,
    Side,
    concat_paths,
    constant_path,
    loop_winding,
    reverse_path,
    winding,
)


def phase_path(turns, side=Side.B2):
    """det winds exactly ``turns`` times: diag(exp(2 pi i turns t), 1)."""

    def evaluate(t):
        return np.diag([np.exp(2j * np.pi * turns * t), 1.0])

    return BoundaryPath(side=side, eval=evaluate, label=f"{turns} turns")


def arc_path(phi_start, phi_end, side=Side.B2):
    """diag(exp(i phi), 1) with the phase moving linearly between the ends."""

    def evaluate(t):
        return np.diag([np.exp(1j * (phi_start + (phi_end - phi_start) * t)), 1.0])

    return BoundaryPath(side=side, eval=evaluate, label="arc")


def test_constant_path_has_zero_winding():
    path = constant_path(Side.B4, np.eye(2))
    assert winding(path) == 0.0


@pytest.mark.parametrize("turns", [-2, -1, 1, 3])
def test_integer_turns(turns):
    assert abs(winding(phase_path(turns)) - turns) < 1e-12


def test_half_turn():
    assert abs(winding(arc_path(0.0, -np.pi)) + 0.5) < 1e-12


def test_reversal_negates():
    path = phase_path(2)
    assert abs(winding(reverse_path(path)) + 2.0) < 1e-12


def test_reparametrisation_invariance():
    base = arc_path(0.0, 3.0)

    def smooth(t):
        return t * t * (3.0 - 2.0 * t)

    warped = BoundaryPath(side=base.side, eval=lambda t: base.eval(smooth(t)))
    assert abs(winding(base) - winding(warped)) < 1e-9


def test_concatenation_adds():
    a = arc_path(0.0, np.pi)
    b = arc_path(np.pi, 3.0 * np.pi)
    joined = concat_paths(a, b)
    assert abs(winding(joined) - (winding(a) + winding(b))) < 1e-9


def test_concatenation_rejects_gap():
    a = arc_path(0.0, 1.0)
    b = arc_path(2.0, 3.0)
    with pytest.raises(ValueError):
        concat_paths(a, b)


def test_jump_discontinuity_is_detected():
    def evaluate(t):
        return np.diag([1.0 + 0.0j, 1.0]) if t < 0.5 else np.diag([-1.0 + 0.0j, 1.0])

    path = BoundaryPath(side=Side.B2, eval=evaluate, label="jump")
    with pytest.raises(PhaseJumpTooLarge):
        winding(path, max_samples=4097)


def test_loop_requires_side_order():
    sides = [constant_path(s, np.eye(2)) for s in Side]
    with pytest.raises(ValueError):
        BoundaryLoop(sides=(sides[1], sides[0], sides[2], sides[3]))


def test_loop_corner_mismatch_raises():
    loop = BoundaryLoop(
        sides=(
            constant_path(Side.B1, np.eye(2)),
            constant_path(Side.B2, np.diag([-1.0, 1.0])),
            constant_path(Side.B3, np.eye(2)),
            constant_path(Side.B4, np.eye(2)),
        )
    )
    with pytest.raises(CornerMismatch):
        loop_winding(loop)


def test_closed_identity_loop():
    loop = BoundaryLoop(
        sides=tuple(constant_path(s, np.eye(2)) for s in Side)
    )
    report = loop_winding(loop)
    assert report.w == (0.0, 0.0, 0.0, 0.0)
    assert report.total == 0.0
    assert report.correction == 0.0


@given(st.integers(-3, 3))
def test_integer_turns_exact(turns):
    assert abs(winding(phase_path(turns)) - turns) < 1e-10
