# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: dyad assembly over arrays and the polyline crossing sweep.

Same algorithms and outputs as ``_kernels_py``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, NAN

cnp.import_array()


def dyad_units(zA, zB, double l1, double l2, int sign):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] a = np.ascontiguousarray(np.asarray(zA, dtype=complex).ravel())
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] b = np.ascontiguousarray(np.asarray(zB, dtype=complex).ravel())
    cdef Py_ssize_t n = a.shape[0], k
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] units = np.empty(n, dtype=complex)
    cdef cnp.ndarray[cnp.npy_bool, ndim=1, cast=True] ok = np.empty(n, dtype=bool)
    cdef double inv4 = 1.0 / (4.0 * l1 * l1)
    cdef double base = l2 * l2 - l1 * l1
    cdef double hx, hy, hh, c, disc, root
    for k in range(n):
        hx = 2.0 * l1 * (b[k].real - a[k].real)
        hy = 2.0 * l1 * (b[k].imag - a[k].imag)
        hh = hx * hx + hy * hy
        c = base - hh * inv4
        disc = hh - c * c
        if disc < 0.0 or hh == 0.0:
            units[k].real = NAN
            units[k].imag = NAN
            ok[k] = False
            continue
        root = sign * sqrt(disc)
        units[k].real = (-c * hx - root * hy) / hh
        units[k].imag = (-c * hy + root * hx) / hh
        ok[k] = True
    return units, ok


def polyline_crossings(x, y, bint closed=True):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(x, dtype=float)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ys = np.ascontiguousarray(y, dtype=float)
    cdef Py_ssize_t npts = xs.shape[0]
    cdef Py_ssize_t nseg = npts if closed else npts - 1
    cdef Py_ssize_t k, k2, a, b, i, j, lo, hi
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x0 = np.empty(nseg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y0 = np.empty(nseg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dx = np.empty(nseg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dy = np.empty(nseg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xmin = np.empty(nseg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xmax = np.empty(nseg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ymin = np.empty(nseg)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ymax = np.empty(nseg)
    cdef double den, qx, qy, s, u
    for k in range(nseg):
        k2 = (k + 1) % npts
        x0[k] = xs[k]
        y0[k] = ys[k]
        dx[k] = xs[k2] - xs[k]
        dy[k] = ys[k2] - ys[k]
        xmin[k] = xs[k] if xs[k] < xs[k2] else xs[k2]
        xmax[k] = xs[k] if xs[k] > xs[k2] else xs[k2]
        ymin[k] = ys[k] if ys[k] < ys[k2] else ys[k2]
        ymax[k] = ys[k] if ys[k] > ys[k2] else ys[k2]
    cdef cnp.ndarray[cnp.intp_t, ndim=1] order = np.argsort(xmin, kind="stable")
    out = []
    for a in range(nseg):
        i = order[a]
        for b in range(a + 1, nseg):
            j = order[b]
            if xmin[j] > xmax[i]:
                break
            if ymin[j] > ymax[i] or ymin[i] > ymax[j]:
                continue
            if i < j:
                lo = i
                hi = j
            else:
                lo = j
                hi = i
            if hi - lo == 1 or (closed and lo == 0 and hi == nseg - 1):
                continue
            den = dx[lo] * dy[hi] - dy[lo] * dx[hi]
            if den == 0.0:
                continue
            qx = x0[hi] - x0[lo]
            qy = y0[hi] - y0[lo]
            s = (qx * dy[hi] - qy * dx[hi]) / den
            u = (qx * dy[lo] - qy * dx[lo]) / den
            if 0.0 <= s < 1.0 and 0.0 <= u < 1.0:
                out.append((lo, hi, s, u))
    out.sort()
    return np.array(out, dtype=float).reshape(-1, 4)
