import math

import numpy as np
import pytest

from heisenberg_sampling.gabor import (
    MAX_FRAME_GRID,
    WHSystemSpec,
    analysis_coefficients,
    frame_bounds,
    orthonormality_defect,
    range_orthogonality,
    tightness_ratio,
    window_norm_check,
)
from heisenberg_sampling.grid import GridSignal, GridSpec, indicator, random_smooth_signals

CASES = [(0.5, 1), (0.25, 2), (0.125, 4)]


def tight_system(spec, h, d, amp=None):
    g = indicator(spec, 0.0, h, math.sqrt(d) if amp is None else amp)
    return WHSystemSpec.covering(h, d, g)


@pytest.mark.parametrize("h,d", CASES)
def test_tight_construction(grid512, h, d):
    tests = random_smooth_signals(grid512, 10, 0)
    report = tightness_ratio(tight_system(grid512, h, d), tests)
    assert report.is_tight(1.0, 1e-9)
    assert window_norm_check(h, d, tight_system(grid512, h, d).window) <= 1e-10


@pytest.mark.parametrize("h,d", CASES)
def test_unnormalised_window_scales_by_one_over_d(grid512, h, d):
    tests = random_smooth_signals(grid512, 5, 1)
    report = tightness_ratio(tight_system(grid512, h, d, amp=1.0), tests)
    assert report.is_tight(1 / d, 1e-9)


def test_frame_bounds_of_tight_system():
    spec = GridSpec(-2.0, 1 / 32, 128)
    report = frame_bounds(tight_system(spec, 0.25, 2))
    assert abs(report.lower_bound_estimate - 1) <= 1e-6
    assert abs(report.upper_bound_estimate - 1) <= 1e-6


def test_frame_bounds_single_atom_and_scaling():
    spec = GridSpec(-2.0, 1 / 32, 128)
    g = indicator(spec, 0, 0.5, math.sqrt(2))
    single = WHSystemSpec(0.5, 1, g, (0, 0), (0, 0))
    report = frame_bounds(single)
    assert np.isclose(report.upper_bound_estimate, 1.0)
    assert np.isclose(report.lower_bound_estimate, 1.0)
    doubled = frame_bounds(tight_system(spec, 0.25, 2, amp=2 * math.sqrt(2)))
    base = frame_bounds(tight_system(spec, 0.25, 2))
    assert np.isclose(doubled.upper_bound_estimate, 4 * base.upper_bound_estimate)
    assert np.isclose(doubled.lower_bound_estimate, 4 * base.lower_bound_estimate)


def test_frame_bounds_refuses_large_grids():
    spec = GridSpec(0.0, 1 / 64, MAX_FRAME_GRID + 1)
    with pytest.raises(ValueError):
        frame_bounds(tight_system(spec, 0.5, 1))


def test_empty_ranges_give_zero(grid512):
    g = indicator(grid512, 0, 0.5)
    empty = WHSystemSpec(0.5, 1, g, (1, 0), (0, 0))
    assert tightness_ratio(empty, random_smooth_signals(grid512, 2, 0)).tight_ratio_max == 0


def test_analysis_coefficient_examples(grid512):
    system = tight_system(grid512, 0.5, 1)
    g = system.window
    c = analysis_coefficients(system, g)
    k0, m0 = -system.k_range[0], -system.m_range[0]
    assert np.isclose(c[k0, m0], 0.5)  # <g, g> = d h
    far = indicator(grid512, 3.0, 3.5)
    shifted = WHSystemSpec(0.5, 1, g, system.k_range, (0, 0))
    assert not np.any(analysis_coefficients(shifted, far))
    f1, f2 = random_smooth_signals(grid512, 2, 4)
    lin = analysis_coefficients(system, f1 * 2.0 + f2)
    assert np.allclose(lin, 2 * analysis_coefficients(system, f1) + analysis_coefficients(system, f2), atol=1e-13)


def test_density_violation_breaks_tightness(grid512):
    # h d = 1.2 > 1: the indicator construction overlaps itself within a period
    g = indicator(grid512, 0.0, 0.6, math.sqrt(2))
    system = WHSystemSpec(0.6 - 0.6 % (1 / 64), 2, g, (-16, 15), (-20, 20))
    report = tightness_ratio(system, random_smooth_signals(grid512, 20, 0))
    assert report.spread > 1e-3


def test_norm_one_window_is_orthonormal(grid512):
    # h d = 1: ||g||^2 = 1 and the system is an orthonormal basis
    system = tight_system(grid512, 0.5, 2)
    assert orthonormality_defect(system) <= 1e-12


def test_redundant_tight_system_is_not_orthonormal(grid512):
    system = tight_system(grid512, 0.25, 2)
    assert orthonormality_defect(system) > 0.1
    # norm bound for normalised tight frames
    assert window_norm_check(0.25, 2, system.window) <= 1e-12
    assert 0.25 * 2 <= 1


def test_window_norm_examples(grid512):
    g = indicator(GridSpec(0.0, 1 / 16, 16), 0, 0.25, math.sqrt(2))
    assert window_norm_check(0.25, 2, g) <= 1e-15
    assert window_norm_check(0.25, 2, GridSignal.zeros(g.spec)) == 0.5
    assert window_norm_check(0.25, 2, g * 1.1) > 1e-3


def test_range_orthogonality_self_pairing(grid512):
    system = tight_system(grid512, 0.25, 2)
    f = random_smooth_signals(grid512, 1, 2)[0]
    value = range_orthogonality(system, system, f, f)
    c = analysis_coefficients(system, f)
    assert abs(value.imag) <= 1e-14
    assert np.isclose(value.real, np.sum(np.abs(c) ** 2))
    assert range_orthogonality(system, system, GridSignal.zeros(grid512), f) == 0
