"""Multiplicity functions and the lattice density criterion.

A left-invariant subspace of L^2 of the group is described on the Plancherel
side by the rank ``m(h)`` of its fibre projections. A lattice with parameters
``d`` and ``r`` admits a tight frame of translates of a single function in the
subspace exactly when::

    m(h) |h| + m(h - 1/r) |h - 1/r| <= 1 / (d r)      for almost every h.

Conditions are evaluated on midpoint grids so breakpoints (a null set) never
act as witnesses.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .group import Automorphism

#: slack allowed above the bound before a check reports a violation
BOUND_TOL = 1e-12

_INTERVAL = re.compile(r"^\s*\[\s*([^,\]]+)\s*,\s*([^\]]+)\s*\]\s*:\s*(\S+)\s*$")


class MultiplicityFunction:
    """Piecewise-constant multiplicity, or a pointwise rule with bounded support.

    Interval form: ``breakpoints`` sorted, ``values[j]`` the value on
    ``(breakpoints[j], breakpoints[j+1])``, zero outside. Rule form: a
    vectorised ``rule(h)`` nonzero only on ``support``; ``bounded`` records
    whether ``m`` itself is bounded.
    """

    def __init__(self, breakpoints=None, values=None, rule=None, support=None, bounded=True, label=""):
        if rule is None:
            bp = np.asarray(breakpoints, dtype=float)
            vals = np.asarray(values, dtype=np.int64)
            if bp.ndim != 1 or len(bp) != len(vals) + 1:
                raise ValueError("need len(breakpoints) == len(values) + 1")
            if np.any(np.diff(bp) <= 0):
                raise ValueError("breakpoints must be strictly increasing")
            if np.any(vals < 0):
                raise ValueError("multiplicities must be nonnegative")
            self.breakpoints, self.values = bp, vals
            self.support = (float(bp[0]), float(bp[-1])) if len(bp) else (0.0, 0.0)
        else:
            if support is None:
                raise ValueError("a rule needs an explicit support interval")
            self.breakpoints, self.values = None, None
            self.support = (float(support[0]), float(support[1]))
        self.rule = rule
        self.bounded = bounded
        self.label = label

    @property
    def is_rule(self) -> bool:
        return self.rule is not None

    def __call__(self, h):
        h = np.asarray(h, dtype=float)
        if self.is_rule:
            return np.asarray(self.rule(h), dtype=float)
        j = np.searchsorted(self.breakpoints, h, side="right") - 1
        inside = (j >= 0) & (j < len(self.values))
        out = np.zeros(h.shape)
        out[inside] = self.values[j[inside]]
        return out

    @classmethod
    def from_intervals(cls, intervals, label="") -> "MultiplicityFunction":
        """Build from ``[(a, b, value), ...]`` with disjoint interiors."""
        items = sorted((float(a), float(b), int(v)) for a, b, v in intervals)
        if not items:
            return cls([0.0, 1.0], [0], label=label)
        bps, vals = [items[0][0]], []
        for a, b, v in items:
            if a >= b:
                raise ValueError(f"empty interval [{a}, {b}]")
            if a < bps[-1]:
                raise ValueError("intervals overlap")
            if a > bps[-1]:
                vals.append(0)
                bps.append(a)
            vals.append(v)
            bps.append(b)
        return cls(bps, vals, label=label)

    @classmethod
    def parse(cls, text: str) -> "MultiplicityFunction":
        """Parse ``"[a,b]:m;[c,d]:n"``."""
        intervals = []
        for part in filter(None, (s.strip() for s in text.split(";"))):
            match = _INTERVAL.match(part)
            if not match:
                raise ValueError(f"cannot parse interval {part!r}; expected [a,b]:m")
            a, b, v = match.groups()
            value = float(v)
            if value != int(value):
                raise ValueError(f"multiplicity {v!r} is not an integer")
            intervals.append((float(a), float(b), int(value)))
        if not intervals:
            raise ValueError("empty multiplicity specification")
        return cls.from_intervals(intervals, label=text)

    def to_intervals(self):
        if self.is_rule:
            raise ValueError("rule-form multiplicities have no interval list")
        return [
            (float(a), float(b), int(v))
            for a, b, v in zip(self.breakpoints[:-1], self.breakpoints[1:], self.values)
            if v
        ]

    def __repr__(self):
        if self.is_rule:
            return f"MultiplicityFunction(rule={self.label or self.rule!r}, support={self.support})"
        return f"MultiplicityFunction({self.to_intervals()})"


@dataclass(frozen=True)
class SigmaSet:
    """Finite union of disjoint closed intervals, stored exactly."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        items = sorted((Fraction(a), Fraction(b)) for a, b in self.intervals)
        for a, b in items:
            if a > b:
                raise ValueError(f"interval [{a}, {b}] is reversed")
        for (_, b), (c, _) in zip(items, items[1:]):
            if c < b:
                raise ValueError("intervals must be disjoint")
        object.__setattr__(self, "intervals", tuple(items))

    @classmethod
    def of(cls, *pairs) -> "SigmaSet":
        return cls(tuple((Fraction(a), Fraction(b)) for a, b in pairs))

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))


@dataclass(frozen=True)
class DensityVerdict:
    satisfied: bool
    max_value: float
    worst_h: float
    bound: float

    def as_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "max_value": self.max_value,
            "worst_h": self.worst_h,
            "bound": self.bound,
        }


def density_lhs(m: MultiplicityFunction, d: int, r: float, h):
    """``m(h)|h| + m(h - 1/r)|h - 1/r|``."""
    h = np.asarray(h, dtype=float)
    g = h - 1.0 / r
    return m(h) * np.abs(h) + m(g) * np.abs(g)


def _midpoints(lo: float, hi: float, step: float) -> np.ndarray:
    n = max(1, math.ceil((hi - lo) / step))
    return lo + (np.arange(n) + 0.5) * step


def _verdict(values, hs, bound) -> DensityVerdict:
    j = int(np.argmax(values))
    top = float(values[j])
    return DensityVerdict(top <= bound + BOUND_TOL, top, float(hs[j]), bound)


def _check_args(d, r, step):
    if int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d}")
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")


def multiplicity_condition_check(m: MultiplicityFunction, d: int, r: float, h_grid_step: float = 1e-3) -> DensityVerdict:
    """Evaluate the density inequality on midpoints of a uniform grid.

    The grid covers every ``h`` at which either term can be nonzero. The
    verdict is ``satisfied`` iff the largest sampled value is at most
    ``1/(d r)`` (plus :data:`BOUND_TOL`); the maximiser is returned too.
    """
    _check_args(d, r, h_grid_step)
    lo, hi = m.support
    hs = _midpoints(lo, hi + 1.0 / r, h_grid_step)
    return _verdict(density_lhs(m, d, r, hs), hs, 1.0 / (d * r))


def simplified_condition_check(m: MultiplicityFunction, d: int, r: float, h_grid_step: float = 1e-3) -> DensityVerdict:
    """``m(h)|h| <= 1/(d r)``, the form the criterion takes when ``d > 1``."""
    _check_args(d, r, h_grid_step)
    if d == 1:
        raise ValueError("the simplified condition only applies for d > 1")
    lo, hi = m.support
    hs = _midpoints(lo, hi, h_grid_step)
    return _verdict(m(hs) * np.abs(hs), hs, 1.0 / (d * r))


def _witness_rule(h):
    a = np.abs(np.asarray(h, dtype=float))
    out = np.zeros(a.shape)
    inside = (a > 0) & (a <= 1)
    out[inside] = np.floor(a[inside] ** -1.5)
    return out


def unbounded_witness() -> MultiplicityFunction:
    """``m(h) = floor(|h|^{-3/2})`` on ``0 < |h| <= 1``: ``m(h)|h|`` integrable, unbounded."""
    return MultiplicityFunction(rule=_witness_rule, support=(-1.0, 1.0), bounded=False,
                                label="floor(|h|^-3/2) on 0<|h|<=1")


def unbounded_witness_integral(terms: int = 1000) -> float:
    """``int_{-1}^{1} m(h)|h| dh`` for :func:`unbounded_witness`.

    ``m >= n`` exactly on ``|h| <= n^{-2/3}``, so the integral is
    ``2 sum_n int_0^{n^{-2/3}} h dh = sum_n n^{-4/3}``. The series is summed
    directly up to ``terms`` and the tail by Euler-Maclaurin.
    """
    n = np.arange(1, terms, dtype=float)
    head = float(np.sum(n ** (-4 / 3)))
    N = float(terms)
    tail = 3 * N ** (-1 / 3) + N ** (-4 / 3) / 2 + (4 / 3) * N ** (-7 / 3) / 12
    return head + tail


def multiplicity_transform(m: MultiplicityFunction, alpha: Automorphism) -> MultiplicityFunction:
    """Multiplicity after the automorphism: ``m~(h) = m((-1)^i h / r)``."""
    sign = -1.0 if alpha.i else 1.0
    scale = sign * alpha.r
    if m.is_rule:
        rule = m.rule
        lo, hi = sorted((scale * m.support[0], scale * m.support[1]))
        return MultiplicityFunction(rule=lambda h: rule(np.asarray(h) / scale), support=(lo, hi),
                                    bounded=m.bounded, label=f"{m.label} transformed by {alpha}")
    bp = m.breakpoints * scale + 0.0  # no negative zeros
    vals = m.values
    if scale < 0:
        bp, vals = bp[::-1], vals[::-1]
    return MultiplicityFunction(bp, vals, label=m.label)


def admissible_normalization(d: int, r: float) -> float:
    """Factor ``1/(sqrt(d) r)`` making a tight-frame generator admissible."""
    if d < 1 or not r > 0:
        raise ValueError("need d >= 1 and r > 0")
    return 1.0 / (math.sqrt(d) * r)


def overlap_measure(sigma: SigmaSet, shift) -> Fraction:
    """Exact measure of ``Sigma cap (Sigma + shift)``."""
    s = Fraction(shift)
    total = Fraction(0)
    for a, b in sigma.intervals:
        for c, e in sigma.intervals:
            lo, hi = max(a, c + s), min(b, e + s)
            if hi > lo:
                total += hi - lo
    return total


def support_condition_check(sigma: SigmaSet, r: float, m_max: int) -> bool:
    """True iff ``Sigma`` and ``Sigma + m/r`` overlap in a null set for ``1 <= |m| <= m_max``.

    ``r`` is converted to an exact rational (every float is one), so the test
    involves no rounding.
    """
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    return all(
        overlap_measure(sigma, Fraction(m) / r) == 0
        for m in range(-m_max, m_max + 1)
        if m != 0
    )
