"""Threshold crossings: a well tuned so a new level sits exactly at zero.

Walking the depth across the tuned value must step the bound-state count,
shift the time-delay integral by a full unit through a half-integer middle,
and flip the zero-energy tail slope.
"""

import pytest

from levlab.errors import SymmetryRequired
from levlab.loops import Sector
from levlab.potentials import gaussian_wells, square_well
from levlab.reporting import tuned_resonance_depth
from levlab.scattering import PotentialAnalysis, zero_energy_tail_slope

STEP = 0.15


@pytest.fixture(scope="module")
def below():
    return PotentialAnalysis(square_well(tuned_resonance_depth("odd") - STEP, 1.0))


@pytest.fixture(scope="module")
def at_odd():
    return PotentialAnalysis(square_well(tuned_resonance_depth("odd"), 1.0))


@pytest.fixture(scope="module")
def above():
    return PotentialAnalysis(square_well(tuned_resonance_depth("odd") + STEP, 1.0))


@pytest.fixture(scope="module")
def at_even():
    return PotentialAnalysis(square_well(tuned_resonance_depth("even"), 1.0))


def test_bound_state_count_steps(below, at_odd, above):
    assert below.bound_states() == 1
    assert at_odd.bound_states() == 1  # the new level is exactly at threshold
    assert above.bound_states() == 2


def test_classification_walks_generic_exceptional_generic(below, at_odd, above):
    assert not below.resonance.is_exceptional
    rc = at_odd.resonance
    assert rc.is_exceptional and abs(rc.gamma + 1.0) < 1e-9
    assert not above.resonance.is_exceptional


def test_time_delay_steps_through_half_integer(below, at_odd, above):
    assert abs(below.time_delay() - 0.5) < 1e-6
    assert abs(at_odd.time_delay() - 1.0) < 1e-6
    assert abs(above.time_delay() - 1.5) < 1e-6


def test_totals_track_bound_states(below, at_odd, above):
    for analysis in (below, at_odd, above):
        report = analysis.report(Sector.FULL)
        assert abs(report.total + analysis.bound_states()) < 1e-6


def test_tail_slope_flips_sign(below, above):
    s_below = zero_energy_tail_slope(below.potential)
    s_above = zero_energy_tail_slope(above.potential)
    assert s_below * s_above < 0


@pytest.mark.parametrize("fixture", ["below", "at_odd", "above", "at_even"])
def test_sector_windings_add_up(fixture, request):
    analysis = request.getfixturevalue(fixture)
    full = analysis.report(Sector.FULL)
    even = analysis.report(Sector.EVEN)
    odd = analysis.report(Sector.ODD)
    for j in range(4):
        assert abs(full.w[j] - (even.w[j] + odd.w[j])) <= 1e-6
    assert full.n_bound == even.n_bound + odd.n_bound


def test_at_most_one_exceptional_sector(at_odd, at_even, below):
    def flags(analysis):
        return [
            analysis.sector_resonance(s).is_exceptional
            for s in (Sector.EVEN, Sector.ODD)
        ]

    assert flags(at_odd) == [False, True]
    assert flags(at_even) == [True, False]
    assert flags(below) == [False, False]


def test_odd_resonance_sector_split(at_odd):
    even = at_odd.report(Sector.EVEN)
    odd = at_odd.report(Sector.ODD)
    assert max(abs(a - b) for a, b in zip(even.w, (-0.5, -0.5, 0.0, 0.0))) < 1e-6
    assert max(abs(a - b) for a, b in zip(odd.w, (0.5, -0.5, 0.0, 0.0))) < 1e-6
    assert even.n_bound == 1 and odd.n_bound == 0


def test_even_resonance_counts(at_even):
    assert at_even.bound_states() == 2
    assert abs(at_even.time_delay() - 2.0) < 1e-6
    even = at_even.report(Sector.EVEN)
    odd = at_even.report(Sector.ODD)
    assert even.n_bound == 1 and odd.n_bound == 1


def test_sector_reports_need_symmetry():
    analysis = PotentialAnalysis(gaussian_wells([(2.0, 0.7, 0.5)]))
    with pytest.raises(SymmetryRequired):
        analysis.report(Sector.EVEN)
