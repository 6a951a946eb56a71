"""Frame diagnostics for Weyl-Heisenberg systems ``e^{2 pi i beta k x} g(x + alpha m)``.

Infinite index sets are replaced by finite ones chosen so that nothing is
lost on the grid: every translate meeting the grid window is included, and
the modulation index runs over one DFT period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import (
    GridMismatchError,
    GridSignal,
    dft_period,
    fourier_coefficients,
    norm_squared,
    shift_values,
    steps,
)


@dataclass(frozen=True)
class FrameReport:
    tight_ratio_min: float
    tight_ratio_max: float
    lower_bound_estimate: float
    upper_bound_estimate: float

    @property
    def spread(self) -> float:
        return self.tight_ratio_max - self.tight_ratio_min

    def is_tight(self, constant: float = 1.0, tol: float = 1e-9) -> bool:
        return (
            abs(self.tight_ratio_min - constant) <= tol
            and abs(self.tight_ratio_max - constant) <= tol
        )

    def as_dict(self) -> dict:
        return {
            "tight_ratio_min": self.tight_ratio_min,
            "tight_ratio_max": self.tight_ratio_max,
            "lower_bound_estimate": self.lower_bound_estimate,
            "upper_bound_estimate": self.upper_bound_estimate,
        }


def _index_range(r) -> np.ndarray:
    lo, hi = r
    return np.arange(int(lo), int(hi) + 1)


@dataclass(frozen=True)
class WHSystemSpec:
    """``G(alpha, beta, g)`` truncated to ``k_range x m_range`` (inclusive bounds)."""

    alpha: float
    beta: float
    window: GridSignal
    k_range: tuple[int, int]
    m_range: tuple[int, int]

    def __post_init__(self):
        if self.alpha == 0 or self.beta <= 0:
            raise ValueError("need alpha != 0 and beta > 0")
        for r in (self.k_range, self.m_range):
            if not all(math.isfinite(v) and int(v) == v for v in r):
                raise ValueError(f"index range {r} must have finite integer bounds")

    @classmethod
    def covering(cls, alpha: float, beta: float, window: GridSignal) -> "WHSystemSpec":
        """Index ranges making frame sums exact on ``window``'s grid.

        ``k`` runs over one DFT period of ``1/(beta*delta)`` samples; ``m`` over
        a symmetric range reaching every translate that meets the grid window.
        """
        spec = window.spec
        P = dft_period(beta, spec)
        if P is None:
            raise ValueError(
                f"1/(beta*delta) = {1 / (beta * spec.delta)} is not a whole number of samples"
            )
        steps(alpha, spec.delta, "translation step")
        lo, hi = window.support()
        if lo == hi:
            reach = 0
        else:
            # g(x + alpha m) != 0 needs x + alpha m inside the window support
            span = (hi + spec.n) * spec.delta
            reach = int(math.ceil(span / abs(alpha))) + 1
        return cls(alpha, beta, window, (-(P // 2), P - P // 2 - 1), (-reach, reach))

    @property
    def ks(self) -> np.ndarray:
        return _index_range(self.k_range)

    @property
    def ms(self) -> np.ndarray:
        return _index_range(self.m_range)

    def translated_windows(self) -> np.ndarray:
        """Rows ``g(. + alpha m)`` for each ``m``."""
        delta = self.window.spec.delta
        rows = np.zeros((len(self.ms), self.window.spec.n), dtype=complex)
        for j, m in enumerate(self.ms):
            rows[j] = shift_values(self.window.values, steps(self.alpha * m, delta))
        return rows

    def atoms(self) -> np.ndarray:
        """All atoms as columns of an ``(N, K*M)`` matrix, ``k`` varying fastest."""
        x = self.window.spec.points
        mods = np.exp(2j * np.pi * self.beta * np.outer(self.ks, x))  # (K, N)
        shifted = self.translated_windows()  # (M, N)
        cols = mods[None, :, :] * shifted[:, None, :]  # (M, K, N)
        return cols.reshape(-1, x.size).T


def _stack(signals, spec) -> np.ndarray:
    for f in signals:
        if not f.spec.matches(spec):
            raise GridMismatchError(f"signal grid {f.spec} does not match window grid {spec}")
    return np.array([f.values for f in signals], dtype=complex).reshape(len(signals), spec.n)


def coefficient_batch(spec: WHSystemSpec, values: np.ndarray) -> np.ndarray:
    """Coefficients for rows of ``values``; result shape ``(B, K, M)``."""
    if len(spec.ks) == 0 or len(spec.ms) == 0:
        return np.zeros((values.shape[0], len(spec.ks), len(spec.ms)), dtype=complex)
    shifted = spec.translated_windows()
    products = values[:, None, :] * shifted.conj()[None, :, :]  # (B, M, N)
    c = fourier_coefficients(products, spec.window.spec, spec.beta, spec.ks)  # (B, M, K)
    return np.swapaxes(c, 1, 2)


def analysis_coefficients(spec: WHSystemSpec, f: GridSignal) -> np.ndarray:
    """``c[k, m] = <f, g_{k,m}>`` indexed from the low ends of the ranges."""
    return coefficient_batch(spec, _stack([f], spec.window.spec))[0]


def tightness_ratio(spec: WHSystemSpec, test_signals) -> FrameReport:
    """Ratios ``sum |<f, g_{k,m}>|^2 / ||f||^2`` over a batch of test signals."""
    values = _stack(test_signals, spec.window.spec)
    norms = np.array([norm_squared(f) for f in test_signals])
    if np.any(norms == 0):
        raise ValueError("test signals must have nonzero norm")
    c = coefficient_batch(spec, values)
    ratios = (np.abs(c) ** 2).sum(axis=(1, 2)) / norms
    lo, hi = float(ratios.min()), float(ratios.max())
    return FrameReport(lo, hi, lo, hi)


def frame_operator(spec: WHSystemSpec) -> np.ndarray:
    """Hermitian matrix of ``f -> sum <f, g_j> g_j`` on the grid."""
    atoms = spec.atoms()
    return spec.window.spec.delta * (atoms @ atoms.conj().T)


MAX_FRAME_GRID = 4096


def frame_bounds(spec: WHSystemSpec, rel_cutoff: float = 1e-10) -> FrameReport:
    """Extreme eigenvalues of the frame operator on the span of the atoms."""
    n = spec.window.spec.n
    if n > MAX_FRAME_GRID:
        raise ValueError(f"grid of {n} samples exceeds the dense limit {MAX_FRAME_GRID}")
    if len(spec.ks) == 0 or len(spec.ms) == 0:
        return FrameReport(0.0, 0.0, 0.0, 0.0)
    eig = np.linalg.eigvalsh(frame_operator(spec))
    top = eig.max()
    if top <= 0:
        return FrameReport(0.0, 0.0, 0.0, 0.0)
    on_span = eig[eig > rel_cutoff * top]
    lo, hi = float(on_span.min()), float(on_span.max())
    return FrameReport(lo, hi, lo, hi)


def window_norm_check(h: float, d: int, g: GridSignal) -> float:
    """``| ||g||^2 - |h| d |``; zero for windows of normalised tight systems."""
    return abs(norm_squared(g) - abs(h) * d)


def range_orthogonality(spec_i: WHSystemSpec, spec_j: WHSystemSpec, f1: GridSignal, f2: GridSignal) -> complex:
    """l^2 pairing of ``(<f1, g^j_{k,m}>)`` with ``(<f2, g^i_{k,m}>)``."""
    if spec_i.k_range != spec_j.k_range or spec_i.m_range != spec_j.m_range:
        raise ValueError("systems must share their index ranges")
    cj = analysis_coefficients(spec_j, f1)
    ci = analysis_coefficients(spec_i, f2)
    return complex(np.vdot(ci, cj))


def orthonormality_defect(spec: WHSystemSpec, m_radius: int = 1) -> float:
    """Largest entry of ``|Gram - I|`` over the atoms with ``|m| <= m_radius``.

    Zero for an orthonormal system; a spot check, not a proof of the ONB
    property. The window and its nearby translates must lie inside the grid.
    """
    sub = WHSystemSpec(spec.alpha, spec.beta, spec.window, spec.k_range, (-m_radius, m_radius))
    atoms = sub.atoms()
    gram = spec.window.spec.delta * (atoms.conj().T @ atoms)
    return float(np.abs(gram - np.eye(gram.shape[0])).max())
