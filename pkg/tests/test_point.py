"""Solvable point interactions: scattering values, tables, duality."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from levlab.loops import Sector
from levlab.point import (
    DELTA,
    DELTA_PRIME,
    PointInteraction,
    bound_state_count,
    build_loop,
    interaction_s_matrix,
    nontrivial_sector,
    resonance_for_sector,
    s_alpha,
    s_beta,
    sector_bound_state_count,
    verify_levinson,
)

INF = math.inf

COUPLINGS = [-5.0, -1.0, -0.1, 0.1, 1.0, 5.0, INF]


def expected_windings(kind, coupling):
    """Nontrivial-sector windings from the phase arithmetic of the scattering
    amplitude: the threshold connector always contributes, the momentum side
    sweeps half a turn whose sign follows the coupling, and an infinitely
    strong coupling moves the half turn to the infinite-energy side."""
    if coupling == 0.0:
        return (0.0, 0.0, 0.0, 0.0)
    if kind == DELTA:
        if coupling == INF:
            return (-0.5, 0.0, 0.5, 0.0)
        return (-0.5, -0.5 if coupling < 0 else 0.5, 0.0, 0.0)
    if coupling == INF:
        return (0.5, 0.0, -0.5, 0.0)
    return (0.0, -0.5 if coupling < 0 else 0.5, -0.5, 0.0)


# --- scattering values ------------------------------------------------------


def test_even_amplitude_example():
    assert abs(s_alpha(-2.0, 1.0) - 1j) < 1e-15


def test_odd_amplitude_example():
    assert abs(s_beta(2.0, 1.0) - 1j) < 1e-15


def test_even_amplitude_limits():
    assert s_alpha(1.0, 0.0) == -1.0
    assert s_alpha(1.0, INF) == 1.0
    assert s_alpha(0.0, 5.0) == 1.0
    for lam in (0.0, 3.0, INF):
        assert s_alpha(INF, lam) == -1.0


def test_odd_amplitude_limits():
    assert s_beta(1.0, 0.0) == 1.0
    assert s_beta(1.0, INF) == -1.0
    assert s_beta(0.0, 5.0) == 1.0
    for lam in (0.0, 3.0, INF):
        assert s_beta(INF, lam) == -1.0


@given(
    st.floats(1e-3, 1e3),
    st.sampled_from([-1.0, 1.0]),
    st.floats(1e-6, 1e6),
)
def test_amplitudes_on_unit_circle(magnitude, sign, lam):
    coupling = sign * magnitude
    assert abs(abs(s_alpha(coupling, lam)) - 1.0) < 1e-12
    assert abs(abs(s_beta(coupling, lam)) - 1.0) < 1e-12


def test_interaction_matrix_embeds_by_sector():
    m = interaction_s_matrix(PointInteraction(DELTA, -2.0), 1.0)
    assert m[0, 0] == s_alpha(-2.0, 1.0)
    assert m[1, 1] == 1.0
    m = interaction_s_matrix(PointInteraction(DELTA_PRIME, 2.0), 1.0)
    assert m[0, 0] == 1.0
    assert m[1, 1] == s_beta(2.0, 1.0)


# --- construction validation ------------------------------------------------


def test_interaction_rejects_bad_couplings():
    with pytest.raises(ValueError):
        PointInteraction(DELTA, math.nan)
    with pytest.raises(ValueError):
        PointInteraction(DELTA, -INF)
    with pytest.raises(ValueError):
        PointInteraction("contact", 1.0)


def test_full_sector_has_no_single_report():
    with pytest.raises(ValueError):
        verify_levinson(PointInteraction(DELTA, 1.0), Sector.FULL)


# --- bound states and thresholds -------------------------------------------


def test_bound_state_counts():
    assert bound_state_count(PointInteraction(DELTA, -1.0)) == 1
    assert bound_state_count(PointInteraction(DELTA, 1.0)) == 0
    assert bound_state_count(PointInteraction(DELTA, INF)) == 0
    assert sector_bound_state_count(PointInteraction(DELTA, -1.0), Sector.EVEN) == 1
    assert sector_bound_state_count(PointInteraction(DELTA, -1.0), Sector.ODD) == 0
    assert sector_bound_state_count(PointInteraction(DELTA_PRIME, -1.0), Sector.ODD) == 1


def test_threshold_classes():
    # even sector resonates when the even amplitude is +1 at zero energy
    assert resonance_for_sector(PointInteraction(DELTA, 0.0), Sector.EVEN).is_exceptional
    assert not resonance_for_sector(PointInteraction(DELTA, 1.0), Sector.EVEN).is_exceptional
    # the free odd half line stays generic, the free even half line resonates
    assert not resonance_for_sector(PointInteraction(DELTA, 1.0), Sector.ODD).is_exceptional
    assert resonance_for_sector(PointInteraction(DELTA_PRIME, 1.0), Sector.EVEN).is_exceptional
    assert resonance_for_sector(PointInteraction(DELTA_PRIME, INF), Sector.ODD).is_exceptional
    assert not resonance_for_sector(PointInteraction(DELTA_PRIME, 1.0), Sector.ODD).is_exceptional


def test_nontrivial_sector():
    assert nontrivial_sector(PointInteraction(DELTA, 2.0)) is Sector.EVEN
    assert nontrivial_sector(PointInteraction(DELTA_PRIME, 2.0)) is Sector.ODD


# --- the full table ---------------------------------------------------------


@pytest.mark.parametrize("kind", [DELTA, DELTA_PRIME])
@pytest.mark.parametrize("coupling", COUPLINGS + [0.0])
def test_winding_table(kind, coupling):
    interaction = PointInteraction(kind, coupling)
    active = nontrivial_sector(interaction)
    report = verify_levinson(interaction, active)
    expected = expected_windings(kind, coupling)
    assert max(abs(g - w) for g, w in zip(report.w, expected)) < 1e-9
    assert report.n_bound == (1 if (coupling < 0 and coupling != -INF) else 0)
    assert report.residual < 1e-9
    # trivial sector: empty loop, no bound states
    other = Sector.ODD if active is Sector.EVEN else Sector.EVEN
    trivial = verify_levinson(interaction, other)
    assert trivial.w == (0.0, 0.0, 0.0, 0.0)
    assert trivial.n_bound == 0


@pytest.mark.parametrize("coupling", COUPLINGS)
def test_duality_swaps_dilation_sides(coupling):
    """The odd table of the derivative coupling is the even table of the
    plain coupling with the two dilation sides exchanged."""
    even = verify_levinson(PointInteraction(DELTA, coupling), Sector.EVEN)
    odd = verify_levinson(PointInteraction(DELTA_PRIME, coupling), Sector.ODD)
    w1, w2, w3, w4 = even.w
    swapped = (w3, w2, w1, w4)
    assert max(abs(a - b) for a, b in zip(odd.w, swapped)) < 1e-9


def test_loop_corners_close():
    for kind, coupling in [(DELTA, -1.0), (DELTA, INF), (DELTA_PRIME, 0.5)]:
        interaction = PointInteraction(kind, coupling)
        loop = build_loop(interaction, nontrivial_sector(interaction))
        assert loop.corner_defect() < 1e-12
