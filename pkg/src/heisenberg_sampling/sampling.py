"""The explicit sampling space for the integer Heisenberg lattice.

On the Plancherel side the sinc-type function ``S`` has fibres
``S^(h) = eta_h (x) eta_h`` for ``|h| < 1/2``, with
``eta_h = |h|^{-1/2} chi_[-|h|/2, |h|/2)``. Fourier inversion gives a closed
form, implemented by :func:`sinc_closed_form`; :func:`sinc_by_inversion`
re-derives it by quadrature for cross-checking, and the field machinery of
:mod:`heisenberg_sampling.fields` evaluates the same function a third way.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .fields import (
    FieldNode,
    RankOneField,
    fibre_criterion_check,
    hs_pairing_many,
    inversion_evaluate_many,
    node_grid,
    parseval_check,
)
from .gabor import WHSystemSpec, analysis_coefficients
from .grid import GridSpec, indicator
from .group import GroupElement, StandardLattice, lattice_arrays, multiply_arrays
from .quadrature import QuadratureConfig, composite_rule, gauss_legendre

#: below this ``|q|`` the central-line formula replaces the generic branch
Q_SWITCH = 1e-3

#: quadrature for lattice sums, where ``t + pq/2`` reaches the box radius
LATTICE_QUADRATURE = QuadratureConfig(nodes_per_panel=64, panels_per_interval=2)

OUTSIDE, GENERIC, CENTRAL = "outside", "generic", "central-line"


@dataclass(frozen=True)
class SincEvaluation:
    point: GroupElement
    value: float
    branch: str


def _sinc_arrays(p, q, t, q_switch):
    p, q, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (p, q, t)))
    a = 1.0 - np.abs(p)
    outside = a < 0
    central = ~outside & (np.abs(q) <= q_switch)
    generic = ~outside & ~central
    value = np.zeros(p.shape)
    ag, qg, tg = a[generic], q[generic], t[generic]
    plus = tg / 2 + ag * qg / 4
    minus = tg / 2 - ag * qg / 4
    value[generic] = 0.25 * (
        (tg / qg + ag / 2) * np.sinc(plus) ** 2 - (tg / qg - ag / 2) * np.sinc(minus) ** 2
    )
    ac, tc = a[central], t[central]
    value[central] = ac / 4 * (2 * np.sinc(tc) - np.sinc(tc / 2) ** 2)
    branch = np.where(outside, OUTSIDE, np.where(central, CENTRAL, GENERIC))
    return value, branch


def sinc_closed_form(p, q, t, q_switch: float = Q_SWITCH):
    """Closed form of ``S(p, q, t)``; scalars in, float out, arrays in, array out.

    With ``a = 1 - |p|``::

        S = 0                                                    if |p| > 1
        S = (a/4) (2 sinc(t) - sinc^2(t/2))                      if |q| <= q_switch
        S = (1/4) [ (t/q + a/2) sinc^2(t/2 + a q/4)
                  - (t/q - a/2) sinc^2(t/2 - a q/4) ]            otherwise

    where ``sinc(x) = sin(pi x)/(pi x)``. The central-line formula is the
    ``q -> 0`` limit of the generic one, which cancels catastrophically there.
    """
    value, _ = _sinc_arrays(p, q, t, q_switch)
    return float(value) if value.ndim == 0 else value


def sinc_branches(p, q, t, q_switch: float = Q_SWITCH) -> np.ndarray:
    return _sinc_arrays(p, q, t, q_switch)[1]


def sinc_evaluate(x: GroupElement, q_switch: float = Q_SWITCH) -> SincEvaluation:
    value, branch = _sinc_arrays(x.p, x.q, x.t, q_switch)
    return SincEvaluation(x, float(value), str(branch))


def _overlap(h, p):
    """Endpoints of ``[-|h|/2, |h|/2] cap ([-|h|/2, |h|/2] - h p)``."""
    half = np.abs(h) / 2
    lo = np.maximum(-half, -half - h * p)
    hi = np.minimum(half, half - h * p)
    return lo, hi


@dataclass(frozen=True)
class InversionOracle:
    analytic_inner: complex
    numeric_inner: complex

    @property
    def gap(self) -> float:
        return abs(self.analytic_inner - self.numeric_inner)


def sinc_by_inversion(p, q, t, config: QuadratureConfig = QuadratureConfig()):
    """``S`` by quadrature of the inversion integral.

    ``S(p,q,t) = int_{-1/2}^{1/2} e^{-2 pi i h (t + pq/2)} I(h) dh`` with
    ``I(h) = int e^{-2 pi i q u} chi(u) chi(u + h p) du`` over the band
    window ``chi = chi_[-|h|/2, |h|/2]``. The outer integral uses composite
    Gauss-Legendre with a break at ``h = 0``. ``analytic_inner`` evaluates
    ``I`` in closed form, ``numeric_inner`` by Gauss-Legendre on the overlap.
    Accepts scalars or equal-shape arrays; returns an :class:`InversionOracle`
    whose fields have the broadcast shape.
    """
    p, q, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (p, q, t)))
    shape = p.shape
    p, q, t = p.reshape(-1, 1), q.reshape(-1, 1), t.reshape(-1, 1)
    hs, ws = composite_rule([-0.5, 0.0, 0.5], config)
    lo, hi = _overlap(hs[None, :], p)
    width = np.maximum(hi - lo, 0.0)
    outer = ws[None, :] * np.exp(-2j * np.pi * hs[None, :] * (t + p * q / 2))

    analytic = width * np.exp(-1j * np.pi * q * (lo + hi)) * np.sinc(q * width)

    u, v = gauss_legendre(0.0, 1.0, config.nodes_per_panel)
    nodes = lo[..., None] + width[..., None] * u  # (P, H, n)
    numeric = width * (np.exp(-2j * np.pi * q[..., None] * nodes) @ v)

    a = (outer * analytic).sum(axis=1).reshape(shape)
    b = (outer * numeric).sum(axis=1).reshape(shape)
    if not shape:
        a, b = complex(a), complex(b)
    return InversionOracle(a, b)


# -- field factories -------------------------------------------------------


def band_window(h: float, spec: GridSpec):
    """``eta_h = |h|^{-1/2} chi_[-|h|/2, |h|/2)``."""
    a = abs(h)
    return indicator(spec, -a / 2, a / 2, 1 / math.sqrt(a))


def sinc_field(config: QuadratureConfig = QuadratureConfig(), nodes=None, weights=None,
               samples_per_band: int = 64, span: float = 2.0) -> RankOneField:
    """Field ``h -> eta_h (x) eta_h`` on ``[-1/2, 1/2]``.

    By default the nodes are a composite Gauss-Legendre rule broken at ``0``.
    Explicit ``nodes`` (weights default to zero) give a field used only for
    fibre-wise checks.
    """
    if nodes is None:
        nodes, weights = composite_rule([-0.5, 0.0, 0.5], config)
    elif weights is None:
        weights = np.zeros(len(nodes))
    out = []
    for h, w in zip(nodes, weights):
        if abs(h) > 0.5:
            raise ValueError(f"node h={h} lies outside the band [-1/2, 1/2]")
        eta = band_window(h, node_grid(h, samples_per_band, span))
        out.append(FieldNode(h, w, (eta,), (eta,)))
    return RankOneField(0.5, out)


def half_band_field(d: int = 1, config: QuadratureConfig = QuadratureConfig(), nodes=None, weights=None,
                    samples_per_band: int = 64, span: float = 2.0) -> RankOneField:
    """Field ``h -> eta^h (x) eta^h`` on ``(0, 1/d]`` with ``eta^h = (2/h)^{1/2} chi_[0, h/2)``.

    Its fibre systems ``G(h, d, eta^h)`` miss ``chi_[h/2, h)`` entirely.
    """
    if nodes is None:
        nodes, weights = composite_rule([0.0, 1.0 / d], config)
    elif weights is None:
        weights = np.zeros(len(nodes))
    out = []
    for h, w in zip(nodes, weights):
        if not 0 < h <= 1.0 / d:
            raise ValueError(f"node h={h} lies outside (0, 1/d]")
        spec = node_grid(h, samples_per_band, span)
        eta = indicator(spec, 0.0, h / 2, math.sqrt(2 / h))
        out.append(FieldNode(h, w, (eta,), (eta,)))
    return RankOneField(1.0 / d, out)


# -- lattice sums ----------------------------------------------------------


class SampleCache:
    """Write-once store of ``f(gamma)`` over boxes of the integer lattice."""

    def __init__(self):
        self._store = {}

    def samples(self, F: RankOneField, radius: int):
        """Lattice indices, points and ``f`` values for ``|m|,|k|,|l| <= radius``."""
        key = id(F)
        hit = self._store.get(key)
        if hit is None or hit[0] is not F or hit[1] < radius:
            idx, pts = lattice_arrays(StandardLattice(1), radius)
            vals = inversion_evaluate_many(F, pts)
            hit = (F, radius, idx, pts, vals)
            self._store[key] = hit
        _, _, idx, pts, vals = hit
        inside = np.abs(idx).max(axis=1) <= radius
        return idx[inside], pts[inside], vals[inside]


_DEFAULT_CACHE = SampleCache()


@dataclass
class SamplingExpansionReport:
    points: np.ndarray
    radius: int
    reconstructed: np.ndarray
    reference: np.ndarray
    errors: np.ndarray = field(init=False)

    def __post_init__(self):
        # relative error; absolute where the reference vanishes
        diff = np.abs(self.reconstructed - self.reference)
        scale = np.abs(self.reference)
        self.errors = np.divide(diff, scale, out=diff.copy(), where=scale > 0)

    @property
    def max_relative_error(self) -> float:
        return float(self.errors.max()) if self.errors.size else 0.0


def _sinc_translates(pts, xs):
    """Matrix ``S(gamma_i^{-1} x_j)``."""
    gp, gq, gt = (-pts[:, i][:, None] for i in range(3))
    xp, xq, xt = (xs[:, i][None, :] for i in range(3))
    p, q, t = multiply_arrays((gp, gq, gt), (xp, xq, xt))
    return sinc_closed_form(p, q, t)


def sampling_expansion(F: RankOneField, xs, radius: int, cache: SampleCache | None = None,
                       reference=None) -> SamplingExpansionReport:
    """Partial sums ``sum_gamma f(gamma) S(gamma^{-1} x)`` over the box of ``radius``.

    ``f(gamma)`` comes from Fourier inversion of ``F``; the reference ``f(x)``
    does too unless given.
    """
    cache = _DEFAULT_CACHE if cache is None else cache
    xs = np.array([tuple(x) for x in ([xs] if isinstance(xs, GroupElement) else xs)], dtype=float)
    _, pts, vals = cache.samples(F, radius)
    keep = vals != 0
    recon = vals[keep] @ _sinc_translates(pts[keep], xs)
    if reference is None:
        reference = inversion_evaluate_many(F, xs)
    return SamplingExpansionReport(xs, radius, recon, np.asarray(reference, dtype=complex))


def expansion_test_points(F: RankOneField, count: int = 10, seed: int = 0, centre: GroupElement | None = None,
                          step: float = 1 / 8, reach: int = 8, floor: float = 0.02):
    """Seeded grid-aligned points near ``centre`` where ``|f| >= floor``.

    Candidates are ``centre * (a, b, c) * step`` with integer ``a, b, c`` in
    ``[-reach, reach]``; the relative error is meaningless where ``f``
    nearly vanishes, so such candidates are rejected.
    """
    centre = F.translation if centre is None else centre
    rng = np.random.default_rng(seed)
    chosen = []
    while len(chosen) < count:
        a, b, c = rng.integers(-reach, reach + 1, size=3) * step
        x = centre * GroupElement(a, b, c)
        if abs(inversion_evaluate_many(F, [x])[0]) >= floor:
            chosen.append(x)
    return chosen


def restriction_isometry_check(F: RankOneField, radius: int, cache: SampleCache | None = None):
    """``(sum_{|m|,|k|,|l| <= radius} |f(gamma)|^2, ||f||^2)`` on the integer lattice."""
    cache = _DEFAULT_CACHE if cache is None else cache
    _, _, vals = cache.samples(F, radius)
    return float(np.sum(np.abs(vals) ** 2)), parseval_check(F)


def reproducing_check(F: RankOneField, S: RankOneField, xs) -> np.ndarray:
    """``|f(x) - <f, lambda(x) S>|`` for each point, both sides Plancherel-side."""
    return np.abs(inversion_evaluate_many(F, xs) - hs_pairing_many(F, S, xs))


def idempotent_selfadjoint_check(S: RankOneField | None = None, grid: int = 5, extent: float = 1.0) -> dict:
    """Compare the closed form with ``<S, lambda(x) S>`` and with ``S(x^-1)`` on a cube grid."""
    S = sinc_field() if S is None else S
    axis = np.linspace(-extent, extent, grid)
    pts = np.array(np.meshgrid(axis, axis, axis, indexing="ij")).reshape(3, -1).T
    closed = sinc_closed_form(pts[:, 0], pts[:, 1], pts[:, 2])
    conv = hs_pairing_many(S, S, pts)
    mirrored = sinc_closed_form(-pts[:, 0], -pts[:, 1], -pts[:, 2])
    return {
        "points": len(pts),
        "convolution_deviation": float(np.abs(closed - conv).max()),
        "symmetry_deviation": float(np.abs(closed - mirrored).max()),
    }


def nontotality_counterexample(h: float, d: int = 1, radius: int = 8, samples_per_band: int = 64) -> dict:
    """Coefficients of ``chi_[h/2, h)`` against ``G(h, d, (2/h)^{1/2} chi_[0, h/2))``.

    Returns the largest magnitude (zero: the test vector misses every atom)
    and, for contrast, the ``k = m = 0`` coefficient of ``chi_[0, h/2)``.
    """
    if not 0 < h * d <= 1:
        raise ValueError("need 0 < h d <= 1")
    base = node_grid(h, samples_per_band)
    cells = round((radius + 2) * h / base.delta)
    spec = GridSpec(-cells * base.delta + base.delta / 2, base.delta, 2 * cells)
    window = indicator(spec, 0.0, h / 2, math.sqrt(2 / h))
    system = WHSystemSpec(h, d, window, (-radius, radius), (-radius, radius))
    far = analysis_coefficients(system, indicator(spec, h / 2, h))
    near = analysis_coefficients(system, indicator(spec, 0.0, h / 2))
    return {
        "max_coefficient": float(np.abs(far).max()),
        "control_coefficient": complex(near[radius, radius]),
    }


def no_onb_check(S: RankOneField | None = None, fibre_nodes=(-3 / 8, -1 / 4, -1 / 8, 1 / 8, 1 / 4, 3 / 8),
                 tol: float = 1e-9, seed: int = 0) -> dict:
    """Tight with constant 1 yet ``||S|| = 1/2``, so ``lambda(Gamma) S`` is not an ONB.

    A normalised tight frame is an orthonormal basis only if every element
    has norm 1; translates of ``S`` all have norm ``||S||``.
    """
    S = sinc_field() if S is None else S
    norm_sq = parseval_check(S)
    probe = sinc_field(nodes=np.asarray(fibre_nodes, dtype=float))
    reports = [fibre_criterion_check(probe, 1, h, seed=seed) for h in fibre_nodes]
    tight = all(r.is_tight(1.0, tol) for r in reports)
    return {
        "norm_squared": norm_sq,
        "tight_constant_one": tight,
        "ratio_min": min(r.tight_ratio_min for r in reports),
        "ratio_max": max(r.tight_ratio_max for r in reports),
        "onb": bool(tight and abs(norm_sq - 1.0) <= tol),
        "not_onb": bool(tight and norm_sq < 1.0 - tol),
    }


def sinc_table(p_values, q_values, t_values) -> list[dict]:
    """Rows ``{p, q, t, value, branch}`` over the product grid."""
    P, Q, T = np.meshgrid(p_values, q_values, t_values, indexing="ij")
    value, branch = _sinc_arrays(P, Q, T, Q_SWITCH)
    return [
        {"p": float(a), "q": float(b), "t": float(c), "value": float(v), "branch": str(s)}
        for a, b, c, v, s in zip(P.ravel(), Q.ravel(), T.ravel(), value.ravel(), branch.ravel())
    ]


def sinc_table_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["p", "q", "t", "value", "branch"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()
