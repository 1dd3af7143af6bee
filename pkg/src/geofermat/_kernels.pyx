# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled weighted-distance kernels.

Each kernel evaluates ``sum_i w[i] * d(p, verts[i])`` for every row ``p`` of
``pts``.  Signatures and results match :mod:`geofermat._kernels_py`.
"""

import numpy as np
from libc.math cimport sqrt, atan2, log1p


def planar_objective(const double[:, ::1] pts, const double[:, ::1] verts, const double[::1] w):
    cdef Py_ssize_t n = pts.shape[0], m = verts.shape[0], i, j
    cdef double dx, dy, acc
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        acc = 0.0
        for j in range(m):
            dx = pts[i, 0] - verts[j, 0]
            dy = pts[i, 1] - verts[j, 1]
            acc += w[j] * sqrt(dx * dx + dy * dy)
        o[i] = acc
    return out


def sphere_objective(const double[:, ::1] pts, const double[:, ::1] verts, const double[::1] w, double R):
    cdef Py_ssize_t n = pts.shape[0], m = verts.shape[0], i, j
    cdef double cx, cy, cz, dot, acc
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        acc = 0.0
        for j in range(m):
            cx = pts[i, 1] * verts[j, 2] - pts[i, 2] * verts[j, 1]
            cy = pts[i, 2] * verts[j, 0] - pts[i, 0] * verts[j, 2]
            cz = pts[i, 0] * verts[j, 1] - pts[i, 1] * verts[j, 0]
            dot = pts[i, 0] * verts[j, 0] + pts[i, 1] * verts[j, 1] + pts[i, 2] * verts[j, 2]
            acc += w[j] * R * atan2(sqrt(cx * cx + cy * cy + cz * cz), dot)
        o[i] = acc
    return out


def hyperboloid_objective(const double[:, ::1] pts, const double[:, ::1] verts, const double[::1] w, double R):
    cdef Py_ssize_t n = pts.shape[0], m = verts.shape[0], i, j
    cdef double dx, dy, dz, c2, x, acc
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        acc = 0.0
        for j in range(m):
            dx = pts[i, 0] - verts[j, 0]
            dy = pts[i, 1] - verts[j, 1]
            dz = pts[i, 2] - verts[j, 2]
            c2 = dx * dx + dy * dy - dz * dz
            if c2 < 0.0:
                c2 = 0.0
            # asinh in log1p form: libm asinh is markedly slower, equally accurate
            x = sqrt(c2) / (2.0 * R)
            acc += w[j] * 2.0 * R * log1p(x + x * x / (1.0 + sqrt(1.0 + x * x)))
        o[i] = acc
    return out
