"""Pure-Python reference implementations of the hot kernels.

Mirrors ``_kernels.pyx`` exactly (same algorithms, same outputs); it is used
when the compiled extension is unavailable and as the benchmark baseline.
"""
from __future__ import annotations

import math

import numpy as np


def dyad_units(zA, zB, l1: float, l2: float, sign: int):
    """Joint direction ``e^{i phi1}`` for arrays of guide points.

    Returns ``(units, ok)``; where the dyad cannot be assembled ``ok`` is
    False and the unit is NaN.
    """
    zA = np.asarray(zA, dtype=complex).ravel()
    zB = np.asarray(zB, dtype=complex).ravel()
    n = zA.shape[0]
    units = np.empty(n, dtype=complex)
    ok = np.empty(n, dtype=bool)
    inv4 = 1.0 / (4.0 * l1 * l1)
    base = l2 * l2 - l1 * l1
    for k in range(n):
        hx = 2.0 * l1 * (zB[k].real - zA[k].real)
        hy = 2.0 * l1 * (zB[k].imag - zA[k].imag)
        hh = hx * hx + hy * hy
        c = base - hh * inv4
        disc = hh - c * c
        if disc < 0.0 or hh == 0.0:
            units[k] = complex(math.nan, math.nan)
            ok[k] = False
            continue
        root = sign * math.sqrt(disc)
        # (-c + i root) / conj(h) = (-c + i root) * h / |h|^2
        units[k] = complex((-c * hx - root * hy) / hh, (-c * hy + root * hx) / hh)
        ok[k] = True
    return units, ok


def polyline_crossings(x, y, closed: bool = True):
    """All proper crossings between non-adjacent segments of a polyline.

    Segments are swept in order of their left end; each pair is tested once.
    Returns an ``(m, 4)`` array of rows ``(i, j, s, u)`` with ``i < j`` and
    local segment parameters ``s, u`` in ``[0, 1)``.
    """
    x = np.ascontiguousarray(x, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    npts = x.shape[0]
    nseg = npts if closed else npts - 1
    x0 = [0.0] * nseg
    y0 = [0.0] * nseg
    dx = [0.0] * nseg
    dy = [0.0] * nseg
    xmin = [0.0] * nseg
    xmax = [0.0] * nseg
    ymin = [0.0] * nseg
    ymax = [0.0] * nseg
    for k in range(nseg):
        k2 = (k + 1) % npts
        x0[k], y0[k] = x[k], y[k]
        dx[k], dy[k] = x[k2] - x[k], y[k2] - y[k]
        xmin[k], xmax[k] = min(x[k], x[k2]), max(x[k], x[k2])
        ymin[k], ymax[k] = min(y[k], y[k2]), max(y[k], y[k2])
    order = sorted(range(nseg), key=lambda k: xmin[k])
    out = []
    for a in range(nseg):
        i = order[a]
        for b in range(a + 1, nseg):
            j = order[b]
            if xmin[j] > xmax[i]:
                break
            if ymin[j] > ymax[i] or ymin[i] > ymax[j]:
                continue
            lo, hi = (i, j) if i < j else (j, i)
            if hi - lo == 1 or (closed and lo == 0 and hi == nseg - 1):
                continue
            den = dx[lo] * dy[hi] - dy[lo] * dx[hi]
            if den == 0.0:
                continue
            qx, qy = x0[hi] - x0[lo], y0[hi] - y0[lo]
            s = (qx * dy[hi] - qy * dx[hi]) / den
            u = (qx * dy[lo] - qy * dx[lo]) / den
            if 0.0 <= s < 1.0 and 0.0 <= u < 1.0:
                out.append((lo, hi, s, u))
    out.sort()
    return np.array(out, dtype=float).reshape(-1, 4)
