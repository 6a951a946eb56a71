"""Pure-numpy reference for the pairing kernel.

``field_pairings`` returns, for every evaluation point ``x = (p, q, t)``::

    sum_j w_j |h_j| sum_{i in node j} coef_i <a_i, rho_{h_j}(x) b_i>

where ``a_i`` and ``b_i`` are step functions constant on the grid cells of
node ``j`` (samples at cell midpoints). For such functions the pairing is
exact: the modulation integrates over each cell to
``delta * sinc(q delta) * e^{-2 pi i q x_n}``. ``shifts[u, j]`` is the
integer translation ``h_j p / delta_j`` for the distinct ``p`` numbered
``u``; ``p_index`` maps points to those rows.
"""

import numpy as np


def field_pairings(points, p_index, shifts, h, w, delta, x0, n_samples, pair_start, pair_offset,
                   coef, a_flat, b_flat, a_lo, a_hi, b_lo, b_hi):
    points = np.asarray(points, dtype=float)
    out = np.zeros(len(points), dtype=complex)
    if len(points) == 0:
        return out
    p, q, t = points[:, 0], points[:, 1], points[:, 2]
    uq, q_index = np.unique(q, return_inverse=True)
    n_rows = shifts.shape[0]
    for j in range(len(h)):
        n = int(n_samples[j])
        x = x0[j] + delta[j] * np.arange(n)
        table = np.zeros((n_rows, len(uq)), dtype=complex)
        hit = np.zeros(n_rows, dtype=bool)
        kernel = None
        for i in range(pair_start[j], pair_start[j + 1]):
            a = a_flat[pair_offset[i]: pair_offset[i] + n]
            b = b_flat[pair_offset[i]: pair_offset[i] + n]
            for u in range(n_rows):
                s = int(shifts[u, j])
                lo = max(a_lo[i], b_lo[i] - s)
                hi = min(a_hi[i], b_hi[i] - s)
                if lo >= hi:
                    continue
                if kernel is None:
                    kernel = np.exp(-2j * np.pi * np.outer(uq, x))
                hit[u] = True
                v = a[lo:hi] * np.conj(b[lo + s: hi + s])
                table[u] += coef[i] * (kernel[:, lo:hi] @ v)
        if not hit.any():
            continue
        sel = np.flatnonzero(hit[p_index])
        qs = q[sel]
        factor = w[j] * abs(h[j]) * delta[j] * np.sinc(qs * delta[j])
        phase = np.exp(-2j * np.pi * h[j] * (t[sel] + p[sel] * qs / 2))
        out[sel] += factor * phase * table[p_index[sel], q_index[sel]]
    return out
