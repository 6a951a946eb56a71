import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisenberg_sampling.fields import inversion_evaluate_many, parseval_check
from heisenberg_sampling.group import GroupElement, StandardLattice, lattice_arrays
from heisenberg_sampling.sampling import (
    CENTRAL,
    GENERIC,
    LATTICE_QUADRATURE,
    OUTSIDE,
    SampleCache,
    half_band_field,
    expansion_test_points,
    idempotent_selfadjoint_check,
    no_onb_check,
    nontotality_counterexample,
    reproducing_check,
    restriction_isometry_check,
    sampling_expansion,
    sinc_branches,
    sinc_by_inversion,
    sinc_closed_form,
    sinc_evaluate,
    sinc_field,
    sinc_table,
    sinc_table_csv,
)

finite = st.floats(-3, 3, allow_nan=False)


def test_exact_values():
    assert sinc_closed_form(0, 0, 0) == pytest.approx(0.25, abs=1e-15)
    assert sinc_closed_form(0, 0, 1) == pytest.approx(-1 / math.pi ** 2, abs=1e-12)
    assert sinc_closed_form(1.5, 0.3, 0.2) == 0.0
    assert sinc_closed_form(-1.0 - 1e-12, 0.3, 0.2) == 0.0


def test_branch_labels():
    assert sinc_evaluate(GroupElement(2, 0, 0)).branch == OUTSIDE
    assert sinc_evaluate(GroupElement(0.2, 5e-4, 1)).branch == CENTRAL
    assert sinc_evaluate(GroupElement(0.2, 0.5, 1)).branch == GENERIC
    assert list(sinc_branches([0, 0, 3], [0, 1, 1], [0, 0, 0])) == [CENTRAL, GENERIC, OUTSIDE]


def test_closed_form_matches_both_oracles():
    axis_p = np.linspace(-1, 1, 5)
    axis_qt = np.linspace(-2, 2, 5)
    P, Q, T = np.meshgrid(axis_p, axis_qt, axis_qt, indexing="ij")
    closed = sinc_closed_form(P, Q, T)
    oracle = sinc_by_inversion(P, Q, T)
    assert np.abs(closed - oracle.analytic_inner).max() <= 1e-6
    assert np.abs(closed - oracle.numeric_inner).max() <= 1e-6
    assert np.abs(oracle.analytic_inner.imag).max() <= 1e-10


def test_central_line_against_oracle():
    t = np.linspace(-2, 2, 9)
    oracle = sinc_by_inversion(np.full(9, 0.3), np.zeros(9), t)
    assert np.abs(sinc_closed_form(0.3, 0.0, t) - oracle.analytic_inner).max() <= 1e-4


@pytest.mark.parametrize("q_switch", [1e-2, 1e-3, 1e-4])
def test_branches_agree_at_the_switch(q_switch):
    p = np.linspace(-0.9, 0.9, 7)
    t = np.linspace(-2, 2, 7)
    P, T = np.meshgrid(p, t)
    inside = sinc_closed_form(P, q_switch * 0.999, T, q_switch=q_switch)
    outside = sinc_closed_form(P, q_switch * 1.001, T, q_switch=q_switch)
    assert np.abs(inside - outside).max() <= 10 * q_switch ** 2 + 1e-9


@given(finite, finite, finite)
def test_symmetry(p, q, t):
    # S(x^-1) = conj S(x) with S real
    assert sinc_closed_form(-p, -q, -t) == pytest.approx(sinc_closed_form(p, q, t), abs=1e-13)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1, 1), st.floats(-2, 2).filter(lambda q: abs(q) > 1e-3), st.floats(-2, 2))
def test_closed_form_vs_oracle_property(p, q, t):
    oracle = sinc_by_inversion(p, q, t)
    assert abs(sinc_closed_form(p, q, t) - oracle.analytic_inner) <= 1e-6


def test_field_inversion_on_lattice_points():
    F = sinc_field(LATTICE_QUADRATURE)
    _, pts = lattice_arrays(StandardLattice(1), 4)
    sample = pts[np.random.default_rng(0).choice(len(pts), 200, replace=False)]
    got = inversion_evaluate_many(F, sample)
    assert np.abs(got - sinc_closed_form(sample[:, 0], sample[:, 1], sample[:, 2])).max() <= 1e-10


def test_idempotent_and_selfadjoint():
    report = idempotent_selfadjoint_check()
    assert report["points"] == 125
    assert report["convolution_deviation"] <= 1e-8
    assert report["symmetry_deviation"] <= 1e-14


@pytest.fixture(scope="module")
def lattice_field():
    return sinc_field(LATTICE_QUADRATURE)


def test_isometry_sums_monotone(lattice_field):
    cache = SampleCache()
    sums = [restriction_isometry_check(lattice_field, r, cache)[0] for r in (1, 2, 4, 8)]
    assert all(a <= b for a, b in zip(sums, sums[1:]))
    assert sums[-1] <= 0.25 + 1e-12
    assert restriction_isometry_check(lattice_field, 8, cache)[1] == pytest.approx(0.25, abs=1e-14)


def test_isometry_scales_quadratically(lattice_field):
    cache = SampleCache()
    base = restriction_isometry_check(lattice_field, 4, cache)[0]
    doubled = restriction_isometry_check(lattice_field.scaled(2), 4, cache)[0]
    assert doubled == pytest.approx(4 * base, rel=1e-13)


def test_expansion_at_radius_zero_is_a_single_term(lattice_field):
    x = GroupElement(0.25, 0.5, -0.25)
    report = sampling_expansion(lattice_field, [x], 0, cache=SampleCache())
    assert report.reconstructed[0] == pytest.approx(0.25 * sinc_closed_form(0.25, 0.5, -0.25), abs=1e-14)


def test_expansion_error_shrinks_with_radius(lattice_field):
    F = lattice_field.translated(GroupElement(0.5, -0.5, 0.5))
    xs = expansion_test_points(F, count=4, seed=1)
    cache = SampleCache()
    errors = [sampling_expansion(F, xs, r, cache=cache).max_relative_error for r in (2, 4, 8)]
    assert errors[0] > errors[1] > errors[2]


def test_expansion_report_handles_vanishing_reference(lattice_field):
    report = sampling_expansion(lattice_field, [GroupElement(2, 0, 0)], 1, cache=SampleCache())
    assert report.reference[0] == 0
    assert report.errors[0] == abs(report.reconstructed[0])


def test_expansion_test_points_respect_floor(lattice_field):
    F = lattice_field.translated(GroupElement(0.5, -0.5, 0.5))
    xs = expansion_test_points(F, count=5, seed=3)
    assert len(xs) == 5
    assert np.all(np.abs(inversion_evaluate_many(F, xs)) >= 0.02)
    assert xs == expansion_test_points(F, count=5, seed=3)


def test_reproducing_identity(S):
    xs = [GroupElement(a, b, c) for a, b, c in [(0.5, 0.25, 0.125), (-1, 0.5, 1), (0.25, -1.5, 0.5)]]
    assert reproducing_check(S, S, xs).max() <= 1e-8
    moved = S.translated(GroupElement(0.5, 0.5, 0.5))
    assert reproducing_check(moved, S, xs).max() <= 1e-8
    assert np.all(reproducing_check(S.scaled(0), S, xs) == 0)


@pytest.mark.parametrize("h", [0.25, 0.5, 1.0])
def test_nontotality_counterexample(h):
    result = nontotality_counterexample(h)
    assert result["max_coefficient"] == 0.0
    assert abs(result["control_coefficient"]) == pytest.approx(math.sqrt(h / 2), rel=1e-12)


def test_nontotality_rejects_dense_parameters():
    with pytest.raises(ValueError):
        nontotality_counterexample(0.75, d=2)


def test_half_band_field_norm():
    F = half_band_field()
    assert parseval_check(F) == pytest.approx(0.5, abs=1e-13)


def test_no_onb(S):
    result = no_onb_check(S)
    assert result["tight_constant_one"]
    assert result["norm_squared"] == pytest.approx(0.25, abs=1e-14)
    assert result["not_onb"] and not result["onb"]


def test_sinc_table_and_csv():
    rows = sinc_table([0.0, 0.5], [0.0, 1.0], [0.0])
    assert len(rows) == 4
    assert rows[0]["value"] == pytest.approx(0.25)
    parsed = list(csv.DictReader(io.StringIO(sinc_table_csv(rows))))
    assert list(parsed[0]) == ["p", "q", "t", "value", "branch"]
    assert float(parsed[1]["value"]) == pytest.approx(rows[1]["value"], rel=1e-15)
