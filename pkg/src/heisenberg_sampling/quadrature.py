"""Composite Gauss-Legendre rules with mandatory panel breaks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureConfig:
    nodes_per_panel: int = 64
    panels_per_interval: int = 1

    def __post_init__(self):
        if self.nodes_per_panel < 1 or self.panels_per_interval < 1:
            raise ValueError("quadrature needs at least one node and one panel")


@lru_cache(maxsize=32)
def _reference_rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(a: float, b: float, n: int):
    x, w = _reference_rule(n)
    half = (b - a) / 2
    return a + half * (x + 1), half * w


def composite_rule(breaks, config: QuadratureConfig = QuadratureConfig()):
    """Nodes and weights for ``integral over [breaks[0], breaks[-1]]``.

    Each interval between consecutive ``breaks`` is split into
    ``panels_per_interval`` equal panels carrying ``nodes_per_panel`` nodes.
    """
    breaks = np.unique(np.asarray(breaks, dtype=float))
    nodes, weights = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        edges = np.linspace(a, b, config.panels_per_interval + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            x, w = gauss_legendre(lo, hi, config.nodes_per_panel)
            nodes.append(x)
            weights.append(w)
    if not nodes:
        return np.empty(0), np.empty(0)
    return np.concatenate(nodes), np.concatenate(weights)
