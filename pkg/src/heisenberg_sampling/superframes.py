"""Weyl-Heisenberg superframes on r copies of the line.

The atoms are vectors ``(e^{2 pi i d k x} g^j(x + h_j m))_{j=1..r}``; the
explicit tight construction uses adjacent indicator windows of widths
``|h_j|`` scaled by ``sqrt(d)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gabor import FrameReport, WHSystemSpec, _stack, coefficient_batch
from .grid import (
    GridMismatchError,
    GridSignal,
    GridSpec,
    indicator,
    inner_product,
    norm_squared,
    random_smooth_signals,
    steps,
)

GATE_TOL = 1e-12


@dataclass(frozen=True)
class VectorSignal:
    components: tuple[GridSignal, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a vector signal needs at least one component")
        for c in comps[1:]:
            if not c.spec.matches(comps[0].spec):
                raise GridMismatchError("components must share one grid")
        object.__setattr__(self, "components", comps)

    @property
    def spec(self) -> GridSpec:
        return self.components[0].spec

    def __len__(self):
        return len(self.components)

    def norm_squared(self) -> float:
        return sum(norm_squared(c) for c in self.components)

    @classmethod
    def single(cls, r: int, j: int, f: GridSignal) -> "VectorSignal":
        """``f`` in slot ``j``, zero elsewhere."""
        zero = GridSignal.zeros(f.spec)
        return cls(tuple(f if i == j else zero for i in range(r)))


@dataclass(frozen=True)
class SuperframeSpec:
    d: int
    h_vec: tuple[float, ...]
    windows: tuple[GridSignal, ...]
    k_range: tuple[int, int]
    m_range: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "h_vec", tuple(float(h) for h in self.h_vec))
        object.__setattr__(self, "windows", tuple(self.windows))
        if len(self.h_vec) != len(self.windows) or not self.h_vec:
            raise ValueError("need one window per h_j and at least one band")
        if any(h == 0 for h in self.h_vec):
            raise ValueError("all h_j must be nonzero")
        for w in self.windows[1:]:
            if not w.spec.matches(self.windows[0].spec):
                raise GridMismatchError("windows must share one grid")

    @classmethod
    def covering(cls, d: int, h_vec, windows) -> "SuperframeSpec":
        systems = [WHSystemSpec.covering(h, d, g) for h, g in zip(h_vec, windows)]
        reach = max(s.m_range[1] for s in systems)
        return cls(d, tuple(h_vec), tuple(windows), systems[0].k_range, (-reach, reach))

    @property
    def r(self) -> int:
        return len(self.h_vec)

    @property
    def spec(self) -> GridSpec:
        return self.windows[0].spec

    def component(self, j: int) -> WHSystemSpec:
        return WHSystemSpec(self.h_vec[j], self.d, self.windows[j], self.k_range, self.m_range)


def density_gate(h_vec, d: int) -> bool:
    """True iff ``d * sum |h_j| <= 1`` (the boundary counts as passing)."""
    if any(h == 0 for h in h_vec):
        raise ValueError("all h_j must be nonzero")
    return d * sum(abs(h) for h in h_vec) <= 1 + GATE_TOL


def balan_windows(h_vec, d: int, spec: GridSpec) -> list[GridSignal]:
    """``g^i = sqrt(d) * chi_[c_{i-1}, c_i)`` with ``c_i = |h_1| + ... + |h_i|``.

    With atoms ``e^{2 pi i d k x} g^j(x + h_j m)`` the result is a normalised
    tight superframe when all ``h_j`` are equal. For unequal ``h_j`` each
    component stays tight but the coefficient ranges are no longer orthogonal;
    tightness then needs atoms ``e^{2 pi i d k (x + h_j m)} g^j(x + h_j m)``.
    """
    if not density_gate(h_vec, d):
        raise ValueError(f"d * sum|h_j| = {d * sum(abs(h) for h in h_vec)} exceeds 1")
    edges = np.concatenate([[0.0], np.cumsum([abs(h) for h in h_vec])])
    for c in edges:
        steps(c - spec.x0, spec.delta, "window edge")
    if spec.x0 > 0 or spec.x0 + spec.length < edges[-1]:
        raise ValueError(f"grid does not cover [0, {edges[-1]}]")
    amp = np.sqrt(d)
    return [indicator(spec, a, b, amp) for a, b in zip(edges[:-1], edges[1:])]


def _coefficients(spec: SuperframeSpec, tests) -> np.ndarray:
    total = 0
    for j in range(spec.r):
        values = _stack([f.components[j] for f in tests], spec.spec)
        total = total + coefficient_batch(spec.component(j), values)
    return total


def superframe_tightness(spec: SuperframeSpec, tests) -> FrameReport:
    """Ratios ``sum_{k,m} |sum_j <f^j, g^j_{k,m}>|^2 / ||f||^2``."""
    for f in tests:
        if len(f) != spec.r:
            raise ValueError(f"test vector has {len(f)} components, expected {spec.r}")
    norms = np.array([f.norm_squared() for f in tests])
    if np.any(norms == 0):
        raise ValueError("test vectors must have nonzero norm")
    c = _coefficients(spec, tests)
    ratios = (np.abs(c) ** 2).sum(axis=(1, 2)) / norms
    lo, hi = float(ratios.min()), float(ratios.max())
    return FrameReport(lo, hi, lo, hi)


def window_orthogonality(spec: SuperframeSpec) -> float:
    """Largest ``|<g^i, g^j>|`` over ``i != j``; only meaningful for equal ``h_j``."""
    h0 = spec.h_vec[0]
    if any(abs(h - h0) > 1e-12 * abs(h0) for h in spec.h_vec):
        raise ValueError("window orthogonality requires all h_j equal")
    worst = 0.0
    for i in range(spec.r):
        for j in range(i + 1, spec.r):
            worst = max(worst, abs(inner_product(spec.windows[i], spec.windows[j])))
    return worst


def random_vector_signals(spec: GridSpec, r: int, count: int, rng=None) -> list[VectorSignal]:
    rng = np.random.default_rng(rng)
    comps = [random_smooth_signals(spec, count, rng) for _ in range(r)]
    return [VectorSignal(tuple(c[i] for c in comps)) for i in range(count)]
