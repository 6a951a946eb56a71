"""Schrödinger representations acting on grid signals, and Weyl-Heisenberg atoms."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .grid import GridSignal, norm, modulate, translate
from .group import GroupElement, reduced_lattice_elements


@dataclass(frozen=True)
class WHAtomIndex:
    k: int  # modulation index
    m: int  # translation index


def rho_apply(h: float, x: GroupElement, f: GridSignal) -> GridSignal:
    """``[rho_h(p,q,t) f](u) = e^{2 pi i h t} e^{2 pi i q u} e^{pi i h p q} f(u + h p)``.

    ``u`` is the grid coordinate of the output sample and ``h*p`` must be a
    whole number of grid steps.
    """
    if h == 0:
        raise ValueError("Schrödinger representations need h != 0")
    g = modulate(translate(f, h * x.p), x.q)
    phase = cmath.exp(2j * np.pi * h * x.t + 1j * np.pi * h * x.p * x.q)
    return g * phase


def wh_atom(alpha: float, beta: float, idx: WHAtomIndex, g: GridSignal) -> GridSignal:
    """``g_{k,m}(x) = e^{2 pi i beta k x} g(x + alpha m)``."""
    return modulate(translate(g, alpha * idx.m), beta * idx.k)


def orbit_phase(h: float, d: int, m: int, k: int) -> complex:
    """Phase relating ``rho_h(m, dk, dmk/2) g`` to the atom ``g_{k,m}`` of G(h, d, g).

    Both the central coordinate ``dmk/2`` and the ``e^{pi i h p q}`` factor
    contribute ``e^{pi i h m d k}``, so the total is ``e^{2 pi i h m d k}``.
    """
    return cmath.exp(2j * np.pi * h * m * d * k)


def verify_phase_correspondence(h: float, d: int, g: GridSignal, radius: int) -> float:
    """Largest ``||rho_h(gamma) g - phase * g_{k,m}||`` over the reduced lattice."""
    worst = 0.0
    for point in reduced_lattice_elements(d, radius):
        orbit = rho_apply(h, point.element, g)
        atom = wh_atom(h, d, WHAtomIndex(point.k, point.m), g)
        worst = max(worst, norm(orbit - atom * orbit_phase(h, d, point.m, point.k)))
    return worst
