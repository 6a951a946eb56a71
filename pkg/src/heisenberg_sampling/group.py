"""Heisenberg group arithmetic, dilation/involution automorphisms and the
standard lattices ``alpha_r o alpha_inv^i (Gamma_d)``.

Points are written in exponential coordinates ``(p, q, t)`` with respect to
the basis ``P, Q, Z`` where ``[P, Q] = Z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class GroupElement:
    p: float
    q: float
    t: float

    def __post_init__(self):
        for name in ("p", "q", "t"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"coordinate {name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __iter__(self):
        return iter((self.p, self.q, self.t))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p, self.q, self.t)


IDENTITY = GroupElement(0.0, 0.0, 0.0)


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    """Campbell-Baker-Hausdorff product."""
    return GroupElement(a.p + b.p, a.q + b.q, a.t + b.t + (a.p * b.q - a.q * b.p) / 2)


def inverse(a: GroupElement) -> GroupElement:
    return GroupElement(-a.p, -a.q, -a.t)


def involution_star_argument(a: GroupElement) -> GroupElement:
    """Argument at which ``g*(x) = conj(g(x^-1))`` samples ``g``."""
    return inverse(a)


def multiply_arrays(a, b):
    """Vectorised group law on ``(p, q, t)`` array triples."""
    ap, aq, at = a
    bp, bq, bt = b
    return (ap + bp, aq + bq, at + bt + (ap * bq - aq * bp) / 2)


@dataclass(frozen=True)
class Automorphism:
    """The automorphism ``alpha_r o alpha_inv^i``.

    ``alpha_r(p, q, t) = (sqrt(r) p, sqrt(r) q, r t)`` and
    ``alpha_inv(p, q, t) = (q, p, -t)``. The two factors commute, so the
    family is closed under composition.
    """

    r: float = 1.0
    i: int = 0

    def __post_init__(self):
        r = float(self.r)
        if not (math.isfinite(r) and r > 0):
            raise ValueError(f"dilation parameter must be positive, got {self.r}")
        if self.i not in (0, 1):
            raise ValueError(f"involution power must be 0 or 1, got {self.i}")
        object.__setattr__(self, "r", r)

    def __call__(self, x: GroupElement) -> GroupElement:
        return apply_automorphism(self, x)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other``."""
        return Automorphism(self.r * other.r, self.i ^ other.i)

    def inverse(self) -> "Automorphism":
        return Automorphism(1.0 / self.r, self.i)


def apply_automorphism(alpha: Automorphism, x: GroupElement) -> GroupElement:
    p, q, t = x.p, x.q, x.t
    if alpha.i:
        p, q, t = q, p, -t
    s = math.sqrt(alpha.r)
    return GroupElement(s * p, s * q, alpha.r * t)


def modulus(alpha: Automorphism) -> float:
    """Haar-measure scaling factor ``Delta(alpha) = r**2``."""
    return alpha.r**2


@dataclass(frozen=True)
class StandardLattice:
    """The lattice ``alpha_r o alpha_inv^i (Gamma_d)``.

    ``Gamma_d`` consists of the points ``(m, d k, l + d m k / 2)``; for this
    family ``d(Gamma) = d`` and ``r(Gamma) = r``.
    """

    d: int = 1
    r: float = 1.0
    i: int = 0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        # validates r and i
        object.__setattr__(self, "r", Automorphism(self.r, self.i).r)

    @property
    def automorphism(self) -> Automorphism:
        return Automorphism(self.r, self.i)

    def point(self, m: int, k: int, l: int) -> "LatticePoint":
        base = GroupElement(m, self.d * k, l + self.d * m * k / 2)
        return LatticePoint(m, k, l, apply_automorphism(self.automorphism, base))

    def coordinates(self, x: GroupElement, tol: float = 1e-9):
        """Recover ``(m, k, l)`` with ``point(m, k, l) == x``, or ``None``."""
        y = apply_automorphism(self.automorphism.inverse(), x)
        m = y.p
        k = y.q / self.d
        if abs(m - round(m)) > tol or abs(k - round(k)) > tol:
            return None
        m, k = round(m), round(k)
        l = y.t - self.d * m * k / 2
        if abs(l - round(l)) > tol:
            return None
        return (m, k, round(l))

    def __contains__(self, x: GroupElement) -> bool:
        return self.coordinates(x) is not None


@dataclass(frozen=True)
class LatticePoint:
    m: int
    k: int
    l: int
    element: GroupElement = field(compare=False)


def covolume(lattice: StandardLattice) -> float:
    return modulus(lattice.automorphism) * lattice.d


def _box(radius: int, dims: int):
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    axis = np.arange(-radius, radius + 1)
    grids = np.meshgrid(*([axis] * dims), indexing="ij")
    return [g.ravel() for g in grids]


def lattice_elements(lattice: StandardLattice, radius: int) -> list[LatticePoint]:
    """All points with ``|m|, |k|, |l| <= radius`` in lexicographic order."""
    m, k, l = _box(radius, 3)
    return [lattice.point(int(a), int(b), int(c)) for a, b, c in zip(m, k, l)]


def reduced_lattice_elements(d: int, radius: int) -> list[LatticePoint]:
    """Points ``(m, d k, d m k / 2)`` of the reduced lattice, ``l`` stored as 0."""
    lattice = StandardLattice(d)
    m, k = _box(radius, 2)
    return [lattice.point(int(a), int(b), 0) for a, b in zip(m, k)]


def lattice_arrays(lattice: StandardLattice, radius: int):
    """Array form of :func:`lattice_elements`.

    Returns ``(indices, coords)`` where ``indices`` is an ``(n, 3)`` integer
    array of ``(m, k, l)`` and ``coords`` an ``(n, 3)`` float array of the
    realised ``(p, q, t)``, both in lexicographic order.
    """
    m, k, l = _box(radius, 3)
    d = lattice.d
    p, q, t = m.astype(float), (d * k).astype(float), l + d * m * k / 2
    if lattice.i:
        p, q, t = q, p, -t
    s = math.sqrt(lattice.r)
    coords = np.stack([s * p, s * q, lattice.r * t], axis=1)
    return np.stack([m, k, l], axis=1), coords
