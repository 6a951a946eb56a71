"""Finite-rank operator fields ``h -> sum_i psi_i^h (x) eta_i^h`` on the frequency axis.

A :class:`RankOneField` is the Plancherel-side description of a function on
the group: a finite set of quadrature nodes ``h`` (weights for ``dh``; the
Plancherel density ``|h|`` is applied separately) and, at each node, pairs of
grid signals. The operator ``psi (x) eta`` maps ``phi`` to ``<phi, eta> psi``.

Fibre vectors are read as step functions, constant on the cells of their
grid, and every pairing ``<a, rho_h(x) b>`` is evaluated exactly for such
functions (see :mod:`heisenberg_sampling._kernels_py`). A field may carry a
left translation ``x0``; its fibres are then ``rho_h(x0) F(h)``, kept
symbolic so that arbitrary quadrature nodes need not align with ``x0``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from .grid import AlignmentError, ALIGN_TOL, GridSignal, GridSpec, inner_product, norm_squared
from .group import IDENTITY, GroupElement, inverse, multiply, multiply_arrays
from .schrodinger import rho_apply
from .superframes import SuperframeSpec, random_vector_signals, superframe_tightness

#: tolerance for the orthonormality of the eta_i at each node
ORTHONORMAL_TOL = 1e-10

#: largest denominator for which a node counts as a dyadic rational
_DYADIC_LIMIT = 2 ** 20


def node_grid(h: float, samples_per_band: int = 64, span: float = 2.0) -> GridSpec:
    """Cell-centred grid on ``[-span |h|, span |h|)`` suited to the node ``h``.

    Dyadic ``h`` (denominator at most ``2**20``) get a power-of-two step with
    at least ``samples_per_band`` cells across ``|h|`` and ``|h|/2`` on a cell
    edge, so Weyl-Heisenberg systems ``G(h, d, .)`` with ``d`` a small power of
    two stay aligned. Other nodes get ``delta = |h| / samples_per_band``; any
    ``p`` that is a multiple of ``1/samples_per_band`` then shifts by whole cells.
    """
    if h == 0 or not math.isfinite(h):
        raise ValueError(f"node must be finite and nonzero, got {h}")
    a = abs(h)
    frac = Fraction(a)
    if frac.denominator <= _DYADIC_LIMIT and frac.denominator & (frac.denominator - 1) == 0:
        e = max(frac.denominator.bit_length(), math.ceil(math.log2(samples_per_band / a)))
        delta = 2.0 ** (-e)
    else:
        delta = a / samples_per_band
    n = round(2 * span * a / delta)
    return GridSpec(-span * a + delta / 2, delta, n)


@dataclass(frozen=True)
class FieldNode:
    h: float
    weight: float
    psi: tuple[GridSignal, ...]
    eta: tuple[GridSignal, ...]

    def __post_init__(self):
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "weight", float(self.weight))
        object.__setattr__(self, "psi", tuple(self.psi))
        object.__setattr__(self, "eta", tuple(self.eta))
        if self.h == 0:
            raise ValueError("field nodes must avoid h = 0")
        if len(self.psi) != len(self.eta):
            raise ValueError("need one psi per eta")
        specs = [f.spec for f in self.psi + self.eta]
        if specs and not all(s.matches(specs[0]) for s in specs[1:]):
            raise ValueError(f"node h={self.h}: all fibre vectors must share one grid")

    @property
    def rank(self) -> int:
        """Number of nonzero ``eta_i``."""
        return sum(1 for e in self.eta if np.any(e.values))

    @property
    def spec(self) -> GridSpec | None:
        return self.psi[0].spec if self.psi else None

    def gram_defect(self) -> float:
        """Largest entry of ``|<eta_i, eta_j> - delta_ij|`` over the nonzero etas."""
        etas = [e for e in self.eta if np.any(e.values)]
        worst = 0.0
        for i, a in enumerate(etas):
            for j, b in enumerate(etas):
                worst = max(worst, abs(inner_product(a, b) - (i == j)))
        return worst

    def hs_norm_squared(self) -> float:
        return sum(norm_squared(f) for f in self.psi)


@dataclass(frozen=True)
class RankOneField:
    H: float
    nodes: tuple[FieldNode, ...]
    translation: GroupElement = IDENTITY
    check_orthonormal: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "H", float(self.H))
        for node in self.nodes:
            if abs(node.h) > self.H * (1 + 1e-12):
                raise ValueError(f"node h={node.h} lies outside [-H, H] with H={self.H}")
            if self.check_orthonormal and node.gram_defect() > ORTHONORMAL_TOL:
                raise ValueError(f"node h={node.h}: eta vectors are not orthonormal")

    def __len__(self):
        return len(self.nodes)

    def translated(self, x: GroupElement) -> "RankOneField":
        """Fibres of ``lambda(x) f``: ``rho_h(x) F(h)``."""
        return replace(self, translation=multiply(x, self.translation), check_orthonormal=False)

    def scaled(self, c: complex) -> "RankOneField":
        nodes = tuple(replace(n, psi=tuple(f * c for f in n.psi)) for n in self.nodes)
        return replace(self, nodes=nodes, check_orthonormal=False)

    def materialize(self) -> "RankOneField":
        """Apply the pending translation to every ``psi``; needs ``h p`` aligned.

        Exact when the translation has ``q = 0``. Otherwise the modulation
        ``e^{2 pi i q u}`` is sampled at cell centres and the result is no
        longer a step function, so inversion differs from the symbolic
        translation by a cell-size discretisation error.
        """
        if self.translation == IDENTITY:
            return self
        x = self.translation
        nodes = tuple(
            replace(n, psi=tuple(rho_apply(n.h, x, f) for f in n.psi)) for n in self.nodes
        )
        return replace(self, nodes=nodes, translation=IDENTITY, check_orthonormal=False)

    def node_at(self, h: float) -> FieldNode:
        for node in self.nodes:
            if math.isclose(node.h, h, rel_tol=1e-12, abs_tol=1e-15):
                return node
        raise KeyError(f"no field node at h={h}")

    @cached_property
    def _packed(self):
        return _pack(self.nodes, [[(f, g, 1.0) for f, g in pairs] for pairs in _node_pairs(self.nodes)])


def _node_pairs(nodes):
    """Per node, the list of ``(psi_i, eta_i)`` pairs."""
    return [list(zip(n.psi, n.eta)) for n in nodes]


@dataclass
class _Packed:
    h: np.ndarray
    w: np.ndarray
    delta: np.ndarray
    x0: np.ndarray
    n_samples: np.ndarray
    pair_start: np.ndarray
    pair_offset: np.ndarray
    coef: np.ndarray
    a_flat: np.ndarray
    b_flat: np.ndarray
    a_lo: np.ndarray
    a_hi: np.ndarray
    b_lo: np.ndarray
    b_hi: np.ndarray


def _pack(nodes, pair_lists) -> _Packed:
    """Flatten per-node ``(a, b, coef)`` triples into the kernel layout.

    ``pair_lists[j]`` holds triples for node ``j``; a triple contributes
    ``coef * <a, rho_h(x) b>``. Nodes carrying no pairs keep their weight but
    contribute nothing.
    """
    h, w, delta, x0, n_samples, starts = [], [], [], [], [], [0]
    offsets, coefs, a_parts, b_parts, a_sup, b_sup = [], [], [], [], [], []
    pos = 0
    for node, triples in zip(nodes, pair_lists):
        spec = node.spec if node.spec is not None else GridSpec(0.0, 1.0, 1)
        h.append(node.h)
        w.append(node.weight)
        delta.append(spec.delta)
        x0.append(spec.x0)
        n_samples.append(spec.n)
        for a, b, c in triples:
            if not (a.spec.matches(spec) and b.spec.matches(spec)):
                raise ValueError(f"node h={node.h}: pair lives on a different grid")
            offsets.append(pos)
            coefs.append(c)
            a_parts.append(a.values)
            b_parts.append(b.values)
            a_sup.append(a.support())
            b_sup.append(b.support())
            pos += spec.n
        starts.append(len(offsets))
    cat = lambda parts: np.concatenate(parts) if parts else np.zeros(0, complex)  # noqa: E731
    sup = lambda s: np.array(s, dtype=np.int64).reshape(-1, 2)  # noqa: E731
    a_sup, b_sup = sup(a_sup), sup(b_sup)
    return _Packed(
        np.array(h, float), np.array(w, float), np.array(delta, float), np.array(x0, float),
        np.array(n_samples, np.int64), np.array(starts, np.int64), np.array(offsets, np.int64),
        np.array(coefs, complex), cat(a_parts), cat(b_parts),
        np.ascontiguousarray(a_sup[:, 0]), np.ascontiguousarray(a_sup[:, 1]),
        np.ascontiguousarray(b_sup[:, 0]), np.ascontiguousarray(b_sup[:, 1]),
    )


def _as_points(xs) -> np.ndarray:
    if isinstance(xs, GroupElement):
        xs = [xs]
    pts = np.array([tuple(x) for x in xs] if not isinstance(xs, np.ndarray) else xs, dtype=float)
    return np.ascontiguousarray(pts.reshape(-1, 3))


def _shift_table(packed: _Packed, p: np.ndarray):
    """Index of each point among the distinct ``p`` values, with shifts ``h p / delta``."""
    up, p_index = np.unique(p, return_inverse=True)
    ratio = np.outer(up, packed.h / packed.delta)
    shifts = np.rint(ratio)
    bad = np.abs(ratio - shifts) > ALIGN_TOL * np.maximum(1.0, np.abs(ratio))
    if np.any(bad):
        u, j = np.argwhere(bad)[0]
        raise AlignmentError(
            f"shift h*p = {packed.h[j] * up[u]!r} is not a multiple of the grid step "
            f"{packed.delta[j]!r} at node h={packed.h[j]!r}"
        )
    return np.ascontiguousarray(p_index.astype(np.int64)), np.ascontiguousarray(shifts.astype(np.int64))


def _run(packed: _Packed, pts: np.ndarray) -> np.ndarray:
    if len(pts) == 0:
        return np.zeros(0, complex)
    p_index, shifts = _shift_table(packed, pts[:, 0])
    return kernels.field_pairings(
        pts, p_index, shifts, packed.h, packed.w, packed.delta, packed.x0, packed.n_samples,
        packed.pair_start, packed.pair_offset, packed.coef, packed.a_flat, packed.b_flat,
        packed.a_lo, packed.a_hi, packed.b_lo, packed.b_hi,
    )


def _left(x: GroupElement, pts: np.ndarray) -> np.ndarray:
    """Rows ``x * pts[i]``."""
    if x == IDENTITY:
        return pts
    out = multiply_arrays(tuple(x), (pts[:, 0], pts[:, 1], pts[:, 2]))
    return np.ascontiguousarray(np.stack(out, axis=1))


def _right(pts: np.ndarray, x: GroupElement) -> np.ndarray:
    """Rows ``pts[i] * x``."""
    if x == IDENTITY:
        return pts
    out = multiply_arrays((pts[:, 0], pts[:, 1], pts[:, 2]), tuple(x))
    return np.ascontiguousarray(np.stack(out, axis=1))


def inversion_evaluate_many(F: RankOneField, xs) -> np.ndarray:
    """``f(x) = sum_h w |h| sum_i <psi_i, rho_h(x0^-1 x) eta_i>`` for each point."""
    pts = _left(inverse(F.translation), _as_points(xs))
    return _run(F._packed, pts)


def inversion_evaluate(F: RankOneField, x: GroupElement) -> complex:
    """Fourier inversion ``f(x) = int trace(F(h) rho_h(x)^*) |h| dh`` by quadrature."""
    return complex(inversion_evaluate_many(F, [x])[0])


def hs_pairing_many(F: RankOneField, G: RankOneField, xs) -> np.ndarray:
    """``<f, lambda(x) g> = sum_h w |h| <F(h), rho_h(x) G(h)>_HS`` for each point.

    Both fields must use the same nodes and node grids. With
    ``F(h) = sum_i psi_i (x) eta_i`` and ``G(h) = sum_j phi_j (x) zeta_j`` the
    Hilbert-Schmidt pairing is ``sum_{i,j} <psi_i, rho_h(x) phi_j> <zeta_j, eta_i>``.
    """
    if len(F.nodes) != len(G.nodes):
        raise ValueError("fields have different node sets")
    triples = []
    for a, b in zip(F.nodes, G.nodes):
        if not math.isclose(a.h, b.h, rel_tol=1e-12) or not math.isclose(a.weight, b.weight, rel_tol=1e-12):
            raise ValueError(f"node mismatch: h={a.h} vs h={b.h}")
        node = []
        for psi, eta in zip(a.psi, a.eta):
            for phi, zeta in zip(b.psi, b.eta):
                c = inner_product(zeta, eta)
                if c != 0:
                    node.append((psi, phi, c))
        triples.append(node)
    packed = _pack(F.nodes, triples)
    # <rho(a) psi, rho(x) rho(b) phi> = <psi, rho(a^-1 x b) phi>
    pts = _right(_left(inverse(F.translation), _as_points(xs)), G.translation)
    return _run(packed, pts)


def hs_pairing(F: RankOneField, G: RankOneField, x: GroupElement = IDENTITY) -> complex:
    return complex(hs_pairing_many(F, G, [x])[0])


def parseval_check(F: RankOneField) -> float:
    """``||f||^2 = sum_h w |h| sum_i ||psi_i^h||^2`` (translations are unitary)."""
    return float(sum(n.weight * abs(n.h) * n.hs_norm_squared() for n in F.nodes))


def fibre_windows(F: RankOneField, h: float) -> list[GridSignal]:
    """Windows ``sqrt|h| rho_h(x0) psi_i^h`` of the fibre system at node ``h``."""
    node = F.node_at(h)
    x = F.translation
    scale = math.sqrt(abs(node.h))
    out = []
    for f in node.psi:
        if x != IDENTITY:
            f = rho_apply(node.h, x, f)
        out.append(f * scale)
    return out


def fibre_criterion_check(F: RankOneField, d: int, h: float, test=None, seed=0, n_test: int = 10, pad: float = 4.0):
    """Tightness of the Weyl-Heisenberg superframe attached to the fibre at ``h``.

    The orbit of ``sqrt|h| psi_i^h`` under ``rho_h`` of the reduced lattice
    ``(m, dk, dmk/2)`` coincides, up to unimodular phases, with the system
    ``e^{2 pi i d k x} g(x + h m)``; the phases do not change coefficient
    magnitudes, so the fibre condition is a superframe tightness test with
    ``rank`` copies of ``h``. Windows are placed on a grid widened by ``pad``
    band widths on each side; test vectors default to ``n_test`` seeded
    smooth signals.
    """
    windows = fibre_windows(F, h)
    if not windows:
        raise ValueError(f"node h={h} carries no fibre vectors")
    spec = windows[0].spec
    extra = round(pad * abs(h) / spec.delta)
    wide = GridSpec(spec.x0 - extra * spec.delta, spec.delta, spec.n + 2 * extra)
    windows = [g.extend(wide) for g in windows]
    superspec = SuperframeSpec.covering(d, (float(h),) * len(windows), windows)
    if test is None:
        test = random_vector_signals(wide, len(windows), n_test, seed)
    return superframe_tightness(superspec, test)


# -- serialisation ---------------------------------------------------------


def _encode(values: np.ndarray) -> list[float]:
    return np.column_stack([values.real, values.imag]).ravel().tolist()


def _decode(data, spec: GridSpec) -> GridSignal:
    arr = np.asarray(data, dtype=float).reshape(-1, 2)
    return GridSignal(spec, arr[:, 0] + 1j * arr[:, 1])


def _grid_dict(spec: GridSpec) -> dict:
    return {"x0": spec.x0, "delta": spec.delta, "n": spec.n}


def field_to_dict(F: RankOneField) -> dict:
    """JSON-ready document; nodes whose grid differs from the first carry their own."""
    specs = [n.spec for n in F.nodes if n.spec is not None]
    top = specs[0] if specs else GridSpec(0.0, 1.0, 1)
    nodes = []
    for n in F.nodes:
        entry = {
            "h": n.h,
            "weight": n.weight,
            "pairs": [{"psi": _encode(a.values), "eta": _encode(b.values)} for a, b in zip(n.psi, n.eta)],
        }
        if n.spec is not None and n.spec != top:
            entry["grid"] = _grid_dict(n.spec)
        nodes.append(entry)
    doc = {"H": F.H, "nodes": nodes, "grid": _grid_dict(top)}
    if F.translation != IDENTITY:
        doc["translation"] = list(F.translation.as_tuple())
    return doc


def field_from_dict(doc: dict) -> RankOneField:
    try:
        top = GridSpec(**doc["grid"])
        nodes = []
        for entry in doc["nodes"]:
            spec = GridSpec(**entry["grid"]) if "grid" in entry else top
            pairs = entry.get("pairs", [])
            nodes.append(
                FieldNode(
                    entry["h"],
                    entry["weight"],
                    [_decode(p["psi"], spec) for p in pairs],
                    [_decode(p["eta"], spec) for p in pairs],
                )
            )
        x = GroupElement(*doc["translation"]) if "translation" in doc else IDENTITY
        return RankOneField(doc["H"], nodes, x, check_orthonormal=False)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed field document: {exc}") from exc


def field_to_json(F: RankOneField) -> str:
    return json.dumps(field_to_dict(F))


def field_from_json(text: str) -> RankOneField:
    return field_from_dict(json.loads(text))


def fields_identical(F: RankOneField, G: RankOneField) -> bool:
    """Bit-level equality of all node data and of the pending translation."""
    if F.H != G.H or F.translation != G.translation or len(F.nodes) != len(G.nodes):
        return False
    for a, b in zip(F.nodes, G.nodes):
        if a.h != b.h or a.weight != b.weight or len(a.psi) != len(b.psi):
            return False
        for f, g in zip(a.psi + a.eta, b.psi + b.eta):
            if f.spec != g.spec or not np.array_equal(f.values, g.values):
                return False
    return True
