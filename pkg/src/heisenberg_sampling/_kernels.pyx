# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairing kernel; see ``_kernels_py`` for the reference version."""

import numpy as np

from libc.math cimport M_PI, cos, fabs, sin


cdef inline double _sinc(double x) nogil:
    cdef double y = M_PI * x
    if fabs(y) < 1e-8:
        return 1.0 - y * y / 6.0
    return sin(y) / y


cdef inline double complex _expi(double phi) nogil:
    return cos(phi) + 1j * sin(phi)


def field_pairings(
    double[:, ::1] points,
    long[::1] p_index,
    long[:, ::1] shifts,
    double[::1] h,
    double[::1] w,
    double[::1] delta,
    double[::1] x0,
    long[::1] n_samples,
    long[::1] pair_start,
    long[::1] pair_offset,
    double complex[::1] coef,
    double complex[::1] a_flat,
    double complex[::1] b_flat,
    long[::1] a_lo,
    long[::1] a_hi,
    long[::1] b_lo,
    long[::1] b_hi,
):
    cdef Py_ssize_t P = points.shape[0]
    cdef Py_ssize_t J = h.shape[0]
    out = np.zeros(P, dtype=complex)
    if P == 0:
        return out
    # the inner sums depend on x only through (p, q): evaluate them once per
    # distinct pair, then apply the t-dependent phase per point
    q_arr = np.asarray(points[:, 1])
    uq, q_index = np.unique(q_arr, return_inverse=True)
    keys, key_index = np.unique(np.asarray(p_index) * len(uq) + q_index, return_inverse=True)
    cdef long[::1] key_u = np.ascontiguousarray(keys // len(uq), dtype=np.int64)
    cdef double[::1] key_q = np.ascontiguousarray(uq[keys % len(uq)])
    cdef long[::1] point_key = np.ascontiguousarray(key_index.ravel(), dtype=np.int64)
    table_arr = np.zeros((len(keys), J), dtype=complex)
    hit_arr = np.zeros((len(keys), J), dtype=np.uint8)
    cdef double complex[:, ::1] table = table_arr
    cdef unsigned char[:, ::1] hits = hit_arr
    cdef double complex[::1] res = out
    cdef Py_ssize_t K = len(keys)
    cdef Py_ssize_t a, k, j, i, n, lo, hi, base
    cdef long s
    cdef double p, q, t, dq
    cdef double complex acc, node_acc, pair_acc, cur, step
    with nogil:
        for k in range(K):
            dq = -2.0 * M_PI * key_q[k]
            for j in range(J):
                s = shifts[key_u[k], j]
                node_acc = 0
                for i in range(pair_start[j], pair_start[j + 1]):
                    lo = a_lo[i]
                    if b_lo[i] - s > lo:
                        lo = b_lo[i] - s
                    hi = a_hi[i]
                    if b_hi[i] - s < hi:
                        hi = b_hi[i] - s
                    if lo >= hi:
                        continue
                    hits[k, j] = 1
                    step = _expi(dq * delta[j])
                    cur = _expi(dq * (x0[j] + lo * delta[j]))
                    base = pair_offset[i]
                    pair_acc = 0
                    for n in range(lo, hi):
                        pair_acc = pair_acc + a_flat[base + n] * b_flat[base + n + s].conjugate() * cur
                        cur = cur * step
                    node_acc = node_acc + coef[i] * pair_acc
                table[k, j] = node_acc
        for a in range(P):
            p = points[a, 0]
            q = points[a, 1]
            t = points[a, 2]
            k = point_key[a]
            acc = 0
            for j in range(J):
                if hits[k, j]:
                    acc = acc + (
                        w[j] * fabs(h[j]) * delta[j] * _sinc(q * delta[j])
                        * _expi(-2.0 * M_PI * h[j] * (t + p * q / 2.0))
                        * table[k, j]
                    )
            res[a] = acc
    return out
