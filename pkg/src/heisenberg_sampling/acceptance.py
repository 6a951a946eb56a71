"""Acceptance suite: eleven numbered checks with pinned tolerances.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the CLI
``report`` command and ``tests/test_acceptance.py`` both run them. Tolerances
live in :data:`DEFAULT_TOLERANCES` and may be overridden per run.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .fields import (
    field_from_json,
    field_to_json,
    fibre_criterion_check,
    fields_identical,
)
from .gabor import WHSystemSpec, range_orthogonality, tightness_ratio, window_norm_check
from .grid import GridSpec, indicator, norm, random_smooth_signals
from .group import GroupElement, multiply
from .plancherel import (
    MultiplicityFunction,
    multiplicity_condition_check,
    unbounded_witness,
)
from .quadrature import QuadratureConfig
from .sampling import (
    LATTICE_QUADRATURE,
    SampleCache,
    half_band_field,
    expansion_test_points,
    no_onb_check,
    nontotality_counterexample,
    parseval_check,
    reproducing_check,
    restriction_isometry_check,
    sampling_expansion,
    sinc_by_inversion,
    sinc_closed_form,
    sinc_field,
)
from .schrodinger import rho_apply, verify_phase_correspondence
from .superframes import (
    SuperframeSpec,
    balan_windows,
    density_gate,
    random_vector_signals,
    superframe_tightness,
    window_orthogonality,
)

DEFAULT_TOLERANCES = {
    "sinc_oracle": 1e-6,
    "sinc_runtime_s": 60.0,
    "exact_value": 1e-12,
    "tightness": 1e-9,
    "window_norm": 1e-10,
    "range_orthogonality": 1e-9,
    "reproducing": 1e-8,
    "isometry_rel": 0.02,
    "isometry_runtime_s": 120.0,
    "expansion_rel": 0.05,
    "structural": 1e-12,
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}"

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": self.seconds,
            "detail": self.detail,
        }


def _timed(number, name, fn, *args):
    start = time.perf_counter()
    passed, detail = fn(*args)
    return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - start)


def _fine_grid(n: int = 512, delta: float = 1 / 64) -> GridSpec:
    """Grid of ``n`` samples starting at ``-n delta / 2``; window edges fall on samples."""
    return GridSpec(-n * delta / 2, delta, n)


# -- 1 ---------------------------------------------------------------------


def _sinc_oracle(tol):
    start = time.perf_counter()
    axes = (np.linspace(-1, 1, 5), np.linspace(-2, 2, 5), np.linspace(-2, 2, 5))
    P, Q, T = (a.ravel() for a in np.meshgrid(*axes, indexing="ij"))
    off = Q != 0
    closed = sinc_closed_form(P, Q, T)
    oracle = sinc_by_inversion(P, Q, T, QuadratureConfig())
    gap_a = np.abs(closed - oracle.analytic_inner)
    gap_b = np.abs(closed - oracle.numeric_inner)
    seconds = time.perf_counter() - start
    detail = {
        "max_gap_analytic_inner": float(gap_a[off].max()),
        "max_gap_numeric_inner": float(gap_b[off].max()),
        "max_gap_on_q0_line": float(max(gap_a[~off].max(), gap_b[~off].max())),
        "max_imag": float(max(np.abs(oracle.analytic_inner.imag).max(), np.abs(oracle.numeric_inner.imag).max())),
        "seconds": seconds,
    }
    ok = max(detail["max_gap_analytic_inner"], detail["max_gap_numeric_inner"]) <= tol["sinc_oracle"]
    return ok and seconds <= tol["sinc_runtime_s"], detail


def criterion_sinc_oracle(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(1, "sinc closed form matches both inversion oracles", _sinc_oracle, tol)


# -- 2 ---------------------------------------------------------------------


def _exact_values(tol, seed):
    rng = np.random.default_rng(seed)
    s0 = sinc_closed_form(0, 0, 0)
    s1 = sinc_closed_form(0, 0, 1)
    p = rng.uniform(1, 5, 200) * rng.choice([-1, 1], 200)
    p[p == 1] = 1.5
    outside = sinc_closed_form(p, rng.uniform(-5, 5, 200), rng.uniform(-5, 5, 200))
    norm_sq = parseval_check(sinc_field())
    detail = {
        "S(0,0,0)": s0,
        "S(0,0,1)": s1,
        "max_|S|_outside": float(np.abs(outside).max()),
        "norm_squared": norm_sq,
        "norm": math.sqrt(norm_sq),
    }
    eps = tol["exact_value"]
    ok = (
        abs(s0 - 0.25) <= eps
        and abs(s1 + 1 / math.pi ** 2) <= eps
        and np.all(outside == 0)
        and abs(norm_sq - 0.25) <= eps
    )
    return ok, detail


def criterion_exact_values(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(2, "exact values and vanishing of S", _exact_values, tol, seed)


# -- 3 ---------------------------------------------------------------------


def _gabor(tol, seed):
    spec = _fine_grid()
    detail = {}
    ok = True
    for h, d in ((0.5, 1), (0.25, 2), (0.125, 4)):
        window = indicator(spec, 0.0, h, math.sqrt(d))
        system = WHSystemSpec.covering(h, d, window)
        tests = random_smooth_signals(spec, 10, np.random.default_rng(seed))
        report = tightness_ratio(system, tests)
        dev = window_norm_check(h, d, window)
        detail[f"h={h},d={d}"] = {**report.as_dict(), "window_norm_deviation": dev}
        ok &= report.is_tight(1.0, tol["tightness"]) and dev <= tol["window_norm"]
    return ok, detail


def criterion_gabor(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(3, "Weyl-Heisenberg tight frames and norm identity", _gabor, tol, seed)


# -- 4 ---------------------------------------------------------------------


def _superframe(tol, seed):
    spec = _fine_grid()
    h_vec, d = (0.25, 0.25), 2
    windows = balan_windows(h_vec, d, spec)
    sf = SuperframeSpec.covering(d, h_vec, windows)
    rng = np.random.default_rng(seed)
    report = superframe_tightness(sf, random_vector_signals(spec, 2, 10, rng))
    orth = window_orthogonality(sf)
    fs = random_smooth_signals(spec, 10, rng)
    ranges = max(
        abs(range_orthogonality(sf.component(0), sf.component(1), f1, f2))
        for f1, f2 in zip(fs[:5], fs[5:])
    )
    detail = {**report.as_dict(), "window_orthogonality": orth, "max_range_pairing": ranges}
    ok = report.is_tight(1.0, tol["tightness"]) and orth == 0 and ranges <= tol["range_orthogonality"]
    return ok, detail


def criterion_superframe(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(4, "adjacent-band superframe tightness and orthogonality", _superframe, tol, seed)


# -- 5 ---------------------------------------------------------------------


def _density(tol, seed):
    M = MultiplicityFunction.parse
    gates = {"(0.6),d=2": density_gate((0.6,), 2), "(1/4,1/4),d=2": density_gate((0.25, 0.25), 2)}
    v1 = multiplicity_condition_check(M("[-0.5,0.5]:1"), 1, 1)
    v2 = multiplicity_condition_check(M("[-2,2]:1"), 1, 1)
    v3 = multiplicity_condition_check(M("[-0.5,0.5]:2"), 1, 1)
    witness = unbounded_witness()
    rejected = {
        f"d={d},r={r}": not multiplicity_condition_check(witness, d, r).satisfied
        for d in (1, 2, 3)
        for r in (0.25, 0.5, 1.0, 2.0)
    }
    detail = {
        "gates": gates,
        "chi[-1/2,1/2]": v1.as_dict(),
        "chi[-2,2]": v2.as_dict(),
        "2chi[-1/2,1/2]": v3.as_dict(),
        "witness_rejected": rejected,
    }
    ok = (
        not gates["(0.6),d=2"]
        and gates["(1/4,1/4),d=2"]
        and v1.satisfied
        and not v2.satisfied
        and v3.satisfied
        and all(rejected.values())
    )
    return ok, detail


def criterion_density(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(5, "density gates and multiplicity criterion", _density, tol, seed)


# -- 6 ---------------------------------------------------------------------

FIBRE_NODES = (-3 / 8, -1 / 4, -1 / 8, 1 / 8, 1 / 4, 3 / 8)


def _fibre(tol, seed):
    probe = sinc_field(nodes=np.array(FIBRE_NODES))
    reports = {h: fibre_criterion_check(probe, 1, h, seed=seed) for h in FIBRE_NODES}
    nontotal = nontotality_counterexample(0.5, 1, radius=8)
    detail = {
        "fibres": {str(h): r.as_dict() for h, r in reports.items()},
        "nontotality_max_coefficient": nontotal["max_coefficient"],
    }
    ok = all(r.is_tight(1.0, tol["tightness"]) for r in reports.values())
    return ok and nontotal["max_coefficient"] == 0.0, detail


def criterion_fibre(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(6, "fibre criterion and nontotality counterexample", _fibre, tol, seed)


# -- 7 ---------------------------------------------------------------------


def aligned_points(count: int, seed: int, step: float = 1 / 8, reach: int = 12):
    """Seeded points with coordinates on the ``step`` lattice."""
    rng = np.random.default_rng(seed)
    return [GroupElement(*(rng.integers(-reach, reach + 1, 3) * step)) for _ in range(count)]


def _reproducing(tol, seed):
    S = sinc_field()
    xs = aligned_points(10, seed)
    detail = {}
    ok = True
    for label, f in (("S", S), ("lambda(1/2,1/2,1/2)S", S.translated(GroupElement(0.5, 0.5, 0.5)))):
        dev = float(reproducing_check(f, S, xs).max())
        detail[label] = dev
        ok &= dev <= tol["reproducing"]
    return ok, detail


def criterion_reproducing(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(7, "reproducing identity", _reproducing, tol, seed)


# -- 8 ---------------------------------------------------------------------


def _isometry(tol, seed):
    start = time.perf_counter()
    S = sinc_field(LATTICE_QUADRATURE)
    cache = SampleCache()
    radii = (4, 8, 16, 32)
    sums = {}
    for R in reversed(radii):  # the largest box fills the cache
        sums[R], reference = restriction_isometry_check(S, R, cache)
    series = [sums[R] for R in radii]
    seconds = time.perf_counter() - start
    rel = abs(series[-1] - reference) / reference
    detail = {"sums": dict(zip(map(str, radii), series)), "reference": reference,
              "relative_gap_at_32": rel, "seconds": seconds}
    monotone = all(a <= b for a, b in zip(series, series[1:]))
    return monotone and rel <= tol["isometry_rel"] and seconds <= tol["isometry_runtime_s"], detail


def criterion_isometry(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(8, "restriction isometry on the integer lattice", _isometry, tol, seed)


# -- 9 ---------------------------------------------------------------------

EXPANSION_SHIFT = GroupElement(0.5, -0.5, 0.5)


def _expansion(tol, seed):
    f = sinc_field(LATTICE_QUADRATURE).translated(EXPANSION_SHIFT)
    xs = expansion_test_points(f, 10, seed)
    cache = SampleCache()
    errors = {}
    for R in (16, 8, 4):
        errors[R] = sampling_expansion(f, xs, R, cache).max_relative_error
    series = [errors[R] for R in (4, 8, 16)]
    detail = {"max_relative_error": dict(zip(("4", "8", "16"), series)),
              "points": [list(x.as_tuple()) for x in xs]}
    monotone = all(b <= a for a, b in zip(series, series[1:]))
    return monotone and series[-1] <= tol["expansion_rel"], detail


def criterion_expansion(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(9, "sampling expansion convergence", _expansion, tol, seed)


# -- 10 --------------------------------------------------------------------


def _no_onb(tol, seed):
    report = no_onb_check(tol=tol["tightness"], seed=seed)
    ok = report["tight_constant_one"] and report["not_onb"] and abs(report["norm_squared"] - 0.25) <= tol["exact_value"]
    return ok, report


def criterion_no_onb(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(10, "tight with constant one but not an orthonormal basis", _no_onb, tol, seed)


# -- 11 --------------------------------------------------------------------


def _structural(tol, seed):
    rng = np.random.default_rng(seed)
    eps = tol["structural"]
    # group law on random reals: associativity holds up to rounding
    worst_assoc = 0.0
    for _ in range(200):
        a, b, c = (GroupElement(*rng.uniform(-4, 4, 3)) for _ in range(3))
        lhs, rhs = multiply(multiply(a, b), c), multiply(a, multiply(b, c))
        worst_assoc = max(worst_assoc, max(abs(u - v) for u, v in zip(lhs, rhs)))
    # representation property and unitarity on an aligned grid
    spec = _fine_grid(256)
    f = random_smooth_signals(spec, 1, rng)[0]
    h = 0.25
    worst_rep, worst_unit = 0.0, 0.0
    for _ in range(20):
        x, y = (GroupElement(rng.integers(-8, 9) / 4, *rng.uniform(-2, 2, 2)) for _ in range(2))
        lhs = rho_apply(h, multiply(x, y), f)
        rhs = rho_apply(h, x, rho_apply(h, y, f))
        worst_rep = max(worst_rep, float(np.abs(lhs.values - rhs.values).max()))
        worst_unit = max(worst_unit, abs(norm(rho_apply(h, x, f)) - norm(f)))
    window = indicator(spec, 0.0, h)
    phase = verify_phase_correspondence(h, 1, window, 2)
    S = sinc_field()
    roundtrips = all(
        fields_identical(F, field_from_json(field_to_json(F)))
        for F in (S, S.translated(GroupElement(0.5, -0.5, 0.5)), half_band_field())
    )
    detail = {
        "associativity": worst_assoc,
        "representation": worst_rep,
        "unitarity": worst_unit,
        "phase_correspondence": phase,
        "json_roundtrip_bit_exact": roundtrips,
    }
    ok = max(worst_assoc, worst_rep, worst_unit, phase) <= eps and roundtrips
    return ok, detail


def criterion_structural(tol=DEFAULT_TOLERANCES, seed=0):
    return _timed(11, "structural invariants", _structural, tol, seed)


CRITERIA = (
    criterion_sinc_oracle,
    criterion_exact_values,
    criterion_gabor,
    criterion_superframe,
    criterion_density,
    criterion_fibre,
    criterion_reproducing,
    criterion_isometry,
    criterion_expansion,
    criterion_no_onb,
    criterion_structural,
)


def merged_tolerances(overrides=None) -> dict:
    tol = dict(DEFAULT_TOLERANCES)
    for key, value in (overrides or {}).items():
        if key not in tol:
            raise KeyError(f"unknown tolerance {key!r}; known: {sorted(tol)}")
        tol[key] = float(value)
    return tol


def run_all(seed: int = 0, overrides=None, only=None) -> list[CriterionResult]:
    tol = merged_tolerances(overrides)
    chosen = CRITERIA if only is None else [CRITERIA[i - 1] for i in only]
    return [fn(tol, seed) for fn in chosen]
