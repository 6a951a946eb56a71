"""Uniformly sampled complex signals standing in for L^2(R).

A :class:`GridSignal` holds samples ``f(x0 + n*delta)`` for ``n = 0..N-1``.
The pairing is the Riemann sum ``delta * sum(f * conj(g))``. Translations
must move the grid onto itself; nothing here interpolates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: relative tolerance when deciding that a shift is a whole number of steps
ALIGN_TOL = 1e-12


class GridMismatchError(ValueError):
    """Two signals on different grids were combined."""


class AlignmentError(ValueError):
    """A shift or breakpoint does not fall on the grid."""


def steps(x: float, delta: float, what: str = "shift") -> int:
    """Return ``x / delta`` as an int, raising :class:`AlignmentError` otherwise."""
    ratio = x / delta
    n = round(ratio)
    if abs(ratio - n) > ALIGN_TOL * max(1.0, abs(ratio)):
        raise AlignmentError(f"{what} {x!r} is not a multiple of the grid step {delta!r}")
    return int(n)


def is_aligned(x: float, delta: float) -> bool:
    try:
        steps(x, delta)
    except AlignmentError:
        return False
    return True


@dataclass(frozen=True)
class GridSpec:
    x0: float
    delta: float
    n: int

    def __post_init__(self):
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise ValueError(f"grid step must be positive, got {self.delta}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"grid size must be a positive integer, got {self.n}")
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def covering(cls, a: float, b: float, delta: float, centred: bool = False) -> "GridSpec":
        """Grid of step ``delta`` whose cells tile ``[a, b)``.

        With ``centred`` the samples sit at cell midpoints ``a + (n + 1/2) delta``.
        """
        n = steps(b - a, delta, "interval length")
        return cls(a + delta / 2 if centred else a, delta, n)

    @property
    def points(self) -> np.ndarray:
        return self.x0 + self.delta * np.arange(self.n)

    @property
    def length(self) -> float:
        return self.n * self.delta

    def matches(self, other: "GridSpec") -> bool:
        return (
            self.n == other.n
            and math.isclose(self.delta, other.delta, rel_tol=1e-12)
            and math.isclose(self.x0, other.x0, rel_tol=1e-12, abs_tol=1e-12 * self.delta)
        )

    def offset_steps(self, other: "GridSpec") -> int:
        """Index offset of ``other``'s first sample on this grid."""
        if not math.isclose(self.delta, other.delta, rel_tol=1e-12):
            raise GridMismatchError("grids have different steps")
        return steps(other.x0 - self.x0, self.delta, "grid offset")


class GridSignal:
    """Immutable sampled signal."""

    __slots__ = ("spec", "values")

    def __init__(self, spec: GridSpec, values):
        values = np.array(values, dtype=complex)
        if values.shape != (spec.n,):
            raise ValueError(f"expected {spec.n} samples, got shape {values.shape}")
        values.setflags(write=False)
        self.spec = spec
        self.values = values

    @classmethod
    def zeros(cls, spec: GridSpec) -> "GridSignal":
        return cls(spec, np.zeros(spec.n, dtype=complex))

    @classmethod
    def from_function(cls, spec: GridSpec, func) -> "GridSignal":
        return cls(spec, func(spec.points))

    def _check(self, other: "GridSignal"):
        if not self.spec.matches(other.spec):
            raise GridMismatchError(f"grid {self.spec} does not match {other.spec}")

    def __add__(self, other: "GridSignal") -> "GridSignal":
        self._check(other)
        return GridSignal(self.spec, self.values + other.values)

    def __sub__(self, other: "GridSignal") -> "GridSignal":
        self._check(other)
        return GridSignal(self.spec, self.values - other.values)

    def __mul__(self, c) -> "GridSignal":
        return GridSignal(self.spec, self.values * complex(c))

    __rmul__ = __mul__

    def __neg__(self) -> "GridSignal":
        return GridSignal(self.spec, -self.values)

    def __repr__(self):
        return f"GridSignal({self.spec}, norm={norm(self):.6g})"

    def support(self) -> tuple[int, int]:
        """Half-open index range ``[lo, hi)`` containing all nonzero samples."""
        nz = np.flatnonzero(self.values)
        if nz.size == 0:
            return (0, 0)
        return (int(nz[0]), int(nz[-1]) + 1)

    def extend(self, spec: GridSpec) -> "GridSignal":
        """Re-express on a larger grid of the same step; samples must fit inside."""
        off = spec.offset_steps(self.spec)
        lo, hi = self.support()
        if lo < hi and (off + lo < 0 or off + hi > spec.n):
            raise ValueError("signal support does not fit in the target grid")
        out = np.zeros(spec.n, dtype=complex)
        src = np.arange(lo, hi)
        out[src + off] = self.values[lo:hi]
        return GridSignal(spec, out)


def inner_product(f: GridSignal, g: GridSignal) -> complex:
    f._check(g)
    return complex(f.spec.delta * np.vdot(g.values, f.values))


def norm_squared(f: GridSignal) -> float:
    return float(f.spec.delta * np.vdot(f.values, f.values).real)


def norm(f: GridSignal) -> float:
    return math.sqrt(norm_squared(f))


def shift_values(values: np.ndarray, s: int) -> np.ndarray:
    """``out[n] = values[n + s]`` with zero fill, along the last axis."""
    out = np.zeros_like(values)
    n = values.shape[-1]
    if s >= 0:
        if s < n:
            out[..., : n - s] = values[..., s:]
    elif -s < n:
        out[..., -s:] = values[..., : n + s]
    return out


def translate(f: GridSignal, s: float) -> GridSignal:
    """Realise ``x -> f(x + s)``; ``s`` must be a whole number of grid steps."""
    return GridSignal(f.spec, shift_values(f.values, steps(s, f.spec.delta)))


def modulate(f: GridSignal, nu: float) -> GridSignal:
    """Multiply by ``exp(2 pi i nu x)``."""
    if nu == 0:
        return f
    return GridSignal(f.spec, f.values * np.exp(2j * np.pi * nu * f.spec.points))


def indicator(spec: GridSpec, a: float, b: float, amplitude: complex = 1.0) -> GridSignal:
    """``amplitude`` on grid points in the half-open interval ``[a, b)``."""
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b})")
    x = spec.points
    eps = 1e-9 * spec.delta
    mask = (x >= a - eps) & (x < b - eps)
    return GridSignal(spec, np.where(mask, complex(amplitude), 0.0))


def fourier_coefficients(values: np.ndarray, spec: GridSpec, beta: float, ks) -> np.ndarray:
    """``c_k = <v, exp(2 pi i beta k .)>`` for each row ``v`` of ``values``.

    When ``1/(beta*delta)`` is a whole number ``P`` the sum is folded modulo
    ``P`` and evaluated by a length-``P`` FFT, which is exact on the grid;
    ``k`` and ``k + P`` then give the same coefficient. Otherwise the sum is
    evaluated directly for the requested ``ks``.
    """
    ks = np.asarray(ks, dtype=int)
    values = np.asarray(values, dtype=complex)
    period = 1.0 / (beta * spec.delta)
    P = round(period)
    delta = spec.delta
    if abs(period - P) <= ALIGN_TOL * max(1.0, period) and P >= 1:
        n = values.shape[-1]
        pad = (-n) % P
        folded = np.concatenate([values, np.zeros(values.shape[:-1] + (pad,), complex)], axis=-1)
        folded = folded.reshape(values.shape[:-1] + (-1, P)).sum(axis=-2)
        spectrum = np.fft.fft(folded, axis=-1)
        phase = np.exp(-2j * np.pi * beta * ks * spec.x0)
        return delta * phase * spectrum[..., ks % P]
    kernel = np.exp(-2j * np.pi * beta * np.outer(spec.points, ks))
    return delta * values @ kernel


def dft_period(beta: float, spec: GridSpec):
    """Number of distinct modulation indices on the grid, or ``None`` if not whole."""
    period = 1.0 / (beta * spec.delta)
    P = round(period)
    if P >= 1 and abs(period - P) <= ALIGN_TOL * max(1.0, period):
        return P
    return None


def bump(x: np.ndarray, a: float, b: float) -> np.ndarray:
    """Smooth bump equal to zero outside ``(a, b)``."""
    u = (2 * x - (a + b)) / (b - a)
    out = np.zeros_like(x, dtype=float)
    inside = np.abs(u) < 1
    out[inside] = np.exp(1 - 1 / (1 - u[inside] ** 2))
    return out


def random_smooth_signals(spec: GridSpec, count: int, rng=None, support=None) -> list[GridSignal]:
    """Seeded smooth complex test signals vanishing outside ``support``.

    ``support`` defaults to the central half of the grid window.
    """
    rng = np.random.default_rng(rng)
    if support is None:
        support = (spec.x0 + spec.length / 4, spec.x0 + 3 * spec.length / 4)
    a, b = support
    x = spec.points
    envelope = bump(x, a, b)
    out = []
    for _ in range(count):
        freqs = rng.uniform(-4, 4, size=4) / (b - a)
        amps = rng.normal(size=4) + 1j * rng.normal(size=4)
        carrier = np.exp(2j * np.pi * np.outer(x - a, freqs)) @ amps
        out.append(GridSignal(spec, envelope * carrier))
    return out
