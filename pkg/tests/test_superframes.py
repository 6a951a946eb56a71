import math

import numpy as np
import pytest

from heisenberg_sampling.gabor import _stack, coefficient_batch, range_orthogonality, tightness_ratio
from heisenberg_sampling.grid import GridSignal, indicator, norm_squared, random_smooth_signals
from heisenberg_sampling.superframes import (
    SuperframeSpec,
    VectorSignal,
    balan_windows,
    density_gate,
    random_vector_signals,
    superframe_tightness,
    window_orthogonality,
)


def test_density_gate_examples():
    assert density_gate((0.25, 0.25), 2)
    assert not density_gate((0.6,), 2)
    assert all(density_gate((h,), 1) for h in (0.1, 0.5, 1.0, -1.0))
    assert not density_gate((0.5, 0.5 + 1e-9), 1)
    with pytest.raises(ValueError):
        density_gate((0.0,), 1)


def test_balan_windows_examples(grid512):
    g1, g2 = balan_windows((0.25, 0.25), 2, grid512)
    assert np.array_equal(g1.values, indicator(grid512, 0, 0.25, math.sqrt(2)).values)
    assert np.array_equal(g2.values, indicator(grid512, 0.25, 0.5, math.sqrt(2)).values)
    (g,) = balan_windows((0.375,), 2, grid512)
    assert np.array_equal(g.values, indicator(grid512, 0, 0.375, math.sqrt(2)).values)
    for h, w in zip((0.125, 0.25, 0.5), balan_windows((0.125, 0.25, 0.5), 1, grid512)):
        assert math.isclose(norm_squared(w), h, rel_tol=1e-14)


def test_balan_windows_refuse_dense_input(grid512):
    with pytest.raises(ValueError):
        balan_windows((0.5, 0.25), 2, grid512)


@pytest.mark.parametrize("h_vec,d", [((0.25, 0.25), 2), ((0.125, 0.125, 0.125), 2), ((0.125, 0.125), 4)])
def test_balan_superframe_is_tight(grid512, h_vec, d):
    spec = SuperframeSpec.covering(d, h_vec, balan_windows(h_vec, d, grid512))
    tests = random_vector_signals(grid512, len(h_vec), 10, 0)
    assert superframe_tightness(spec, tests).is_tight(1.0, 1e-9)


def test_single_component_reduces_to_gabor(grid512):
    h_vec, d = (0.25, 0.25), 2
    windows = balan_windows(h_vec, d, grid512)
    spec = SuperframeSpec.covering(d, h_vec, windows)
    f = random_smooth_signals(grid512, 1, 3)[0]
    vector = superframe_tightness(spec, [VectorSignal.single(2, 1, f)])
    scalar = tightness_ratio(spec.component(1), [f])
    assert math.isclose(vector.tight_ratio_max, scalar.tight_ratio_max, rel_tol=1e-12)


def test_zero_windows_give_zero(grid512):
    zero = GridSignal.zeros(grid512)
    spec = SuperframeSpec(2, (0.25, 0.25), (zero, zero), (-32, 31), (-20, 20))
    assert superframe_tightness(spec, random_vector_signals(grid512, 2, 3, 0)).tight_ratio_max == 0


def test_window_orthogonality(grid512):
    spec = SuperframeSpec.covering(2, (0.25, 0.25), balan_windows((0.25, 0.25), 2, grid512))
    assert window_orthogonality(spec) == 0
    (g,) = balan_windows((0.25,), 2, grid512)
    assert window_orthogonality(SuperframeSpec.covering(2, (0.25,), [g])) == 0
    dup = SuperframeSpec.covering(2, (0.25, 0.25), [g, g])
    assert window_orthogonality(dup) == pytest.approx(0.5)
    mixed = SuperframeSpec.covering(1, (0.25, 0.5), balan_windows((0.25, 0.5), 1, grid512))
    with pytest.raises(ValueError):
        window_orthogonality(mixed)


def test_duplicated_windows_are_not_tight(grid512):
    (g,) = balan_windows((0.25,), 2, grid512)
    dup = SuperframeSpec.covering(2, (0.25, 0.25), [g, g])
    report = superframe_tightness(dup, random_vector_signals(grid512, 2, 20, 0))
    assert report.spread > 1e-3


def test_tight_superframe_components_tight_and_ranges_orthogonal(grid512):
    h_vec, d = (0.25, 0.25), 2
    spec = SuperframeSpec.covering(d, h_vec, balan_windows(h_vec, d, grid512))
    fs = random_smooth_signals(grid512, 6, 9)
    for j in range(2):
        assert tightness_ratio(spec.component(j), fs).is_tight(1.0, 1e-9)
    for f1, f2 in zip(fs[:3], fs[3:]):
        assert abs(range_orthogonality(spec.component(0), spec.component(1), f1, f2)) <= 1e-9


def test_components_tight_with_orthogonal_ranges_give_tight_superframe(grid512):
    # converse direction: assemble the superframe from the verified pieces
    h_vec, d = (0.125, 0.125), 4
    spec = SuperframeSpec.covering(d, h_vec, balan_windows(h_vec, d, grid512))
    fs = random_smooth_signals(grid512, 4, 2)
    assert all(tightness_ratio(spec.component(j), fs).is_tight(1.0, 1e-9) for j in range(2))
    assert abs(range_orthogonality(spec.component(0), spec.component(1), fs[0], fs[1])) <= 1e-9
    assert superframe_tightness(spec, random_vector_signals(grid512, 2, 5, 4)).is_tight(1.0, 1e-9)


def test_perturbing_one_band_changes_only_later_windows(grid512):
    base = balan_windows((0.25, 0.25), 1, grid512)
    moved = balan_windows((0.25, 0.25 + 1 / 64), 1, grid512)
    assert np.array_equal(base[0].values, moved[0].values)
    assert np.abs(base[1].values - moved[1].values).sum() == pytest.approx(1.0)


def test_vector_signal_norm(grid512):
    f, g = random_smooth_signals(grid512, 2, 0)
    v = VectorSignal((f, g))
    assert math.isclose(v.norm_squared(), norm_squared(f) + norm_squared(g))


def test_unequal_bands_need_translation_first_atoms(grid512):
    # with atoms e^{2 pi i d k x} g^j(x + h_j m) the adjacent-band construction
    # is tight only for equal h_j; the per-component phase e^{-2 pi i d k h_j m}
    # (atoms e^{2 pi i d k (x + h_j m)} g^j(x + h_j m)) restores tightness
    h_vec, d = (0.125, 0.25, 0.5), 1
    spec = SuperframeSpec.covering(d, h_vec, balan_windows(h_vec, d, grid512))
    tests = random_vector_signals(grid512, 3, 5, 0)
    assert superframe_tightness(spec, tests).spread > 1e-2
    ks = np.arange(spec.k_range[0], spec.k_range[1] + 1)
    ms = np.arange(spec.m_range[0], spec.m_range[1] + 1)
    total = 0
    for j, h in enumerate(h_vec):
        c = coefficient_batch(spec.component(j), _stack([f.components[j] for f in tests], grid512))
        total = total + c * np.exp(-2j * np.pi * d * h * np.outer(ks, ms))
    norms = np.array([f.norm_squared() for f in tests])
    assert np.allclose((np.abs(total) ** 2).sum(axis=(1, 2)) / norms, 1.0, atol=1e-9)
