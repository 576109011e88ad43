"""Envelopes of one-parameter curve families and support functions of convex curves."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .curve import TWO_PI, ParametricCurve, _fd, enclosed_area
from .errors import NoBracket, NoEnvelopePoint
from .geom_core import qvp, sp
from .numerics import find_root_1d


class NotConvexWarning(UserWarning):
    """Support-function round trip did not reproduce the curve."""


@dataclass(frozen=True)
class CurveFamily:
    """Family ``z(t, lam)``; each fixed ``t`` gives one member curve in ``lam``."""

    func: Callable[[float, float], complex]
    z_t: Optional[Callable[[float, float], complex]] = None
    z_lam: Optional[Callable[[float, float], complex]] = None
    t_domain: tuple[float, float] = (0.0, TWO_PI)
    lam_domain: tuple[float, float] = (-1e3, 1e3)
    affine: bool = False
    closed: bool = False

    def partial_t(self, t: float, lam: float) -> complex:
        if self.z_t is not None:
            return complex(self.z_t(t, lam))
        return complex(_fd(lambda s: self.func(s, lam), t, max(1.0, abs(t))))

    def partial_lam(self, t: float, lam: float) -> complex:
        if self.z_lam is not None:
            return complex(self.z_lam(t, lam))
        return complex(_fd(lambda s: self.func(t, s), lam, max(1.0, abs(lam))))

    def bracket(self, t: float, lam: float) -> float:
        return qvp(self.partial_t(t, lam), self.partial_lam(t, lam))


def _lam_affine(fam: CurveFamily, t: float) -> float:
    b0, b1 = fam.bracket(t, 0.0), fam.bracket(t, 1.0)
    slope = b1 - b0
    if abs(slope) <= 1e-14 * max(1.0, abs(b0), abs(b1)):
        raise NoEnvelopePoint(t, "envelope condition has no solution for this member")
    return -b0 / slope


def _lam_scan(fam: CurveFamily, t: float, seed: Optional[float], scan: int = 400) -> float:
    lo, hi = fam.lam_domain
    grid = np.linspace(lo, hi, scan + 1)
    vals = np.array([fam.bracket(t, float(g)) for g in grid])
    roots = []
    for k in range(scan):
        if vals[k] == 0.0:
            roots.append(float(grid[k]))
        elif vals[k] * vals[k + 1] < 0.0:
            try:
                roots.append(find_root_1d(lambda s: fam.bracket(t, s), (grid[k], grid[k + 1])))
            except NoBracket:
                pass
    if not roots:
        raise NoEnvelopePoint(t, "no root of the envelope condition in the parameter range")
    ref = seed if seed is not None else 0.5 * (lo + hi)
    return min(roots, key=lambda r: abs(r - ref))


def envelope_parameter(fam: CurveFamily, t: float, seed: Optional[float] = None) -> float:
    """Member parameter ``lam(t)`` on the envelope (root of ``[z_t, z_lam]``)."""
    if fam.affine:
        return _lam_affine(fam, t)
    return _lam_scan(fam, t, seed)


def envelope_general(fam: CurveFamily, branch_seed: Optional[float] = None) -> ParametricCurve:
    """Envelope ``t -> z(t, lam(t))``; non-affine families pick the root nearest ``branch_seed``."""

    def point(t):
        return complex(fam.func(t, envelope_parameter(fam, t, branch_seed)))

    return ParametricCurve(point, domain=fam.t_domain, closed=fam.closed, name="envelope")


@dataclass(frozen=True)
class TracedEnvelope:
    params: np.ndarray
    lams: np.ndarray
    points: np.ndarray
    branch_switches: tuple[int, ...]


def trace_envelope(fam: CurveFamily, ts, seed: Optional[float] = None,
                   jump_tol: float = 0.25) -> TracedEnvelope:
    """Continuation along ``ts``: each solve is seeded with the previous ``lam``.

    Jumps larger than ``jump_tol`` times the parameter range are reported in
    ``branch_switches`` (sample indices) instead of being smoothed over.
    """
    ts = np.asarray(ts, dtype=float)
    lams = np.empty_like(ts)
    switches = []
    prev = seed
    span = fam.lam_domain[1] - fam.lam_domain[0]
    for k, t in enumerate(ts):
        lam = envelope_parameter(fam, float(t), prev)
        if prev is not None and k > 0 and abs(lam - prev) > jump_tol * span:
            switches.append(k)
        lams[k] = prev = lam
    pts = np.array([fam.func(float(t), float(l)) for t, l in zip(ts, lams)], dtype=complex)
    return TracedEnvelope(ts, lams, pts, tuple(switches))


def tangency_residual(fam: CurveFamily, t: float, lam: float) -> float:
    """Normalized ``|[z_t, z_lam]|``; zero on the envelope."""
    a, b = fam.partial_t(t, lam), fam.partial_lam(t, lam)
    return abs(qvp(a, b)) / max(abs(a) * abs(b), 1e-300)


def line_family(support: Callable[[float], float], support_d1: Optional[Callable] = None) -> CurveFamily:
    """Lines ``(a(phi) + i lam) e^{i phi}`` written in Hesse form."""

    def z(phi, lam):
        return (support(phi) + 1j * lam) * np.exp(1j * phi)

    z_t = None
    if support_d1 is not None:
        z_t = lambda phi, lam: (support_d1(phi) + 1j * (support(phi) + 1j * lam)) * np.exp(1j * phi)  # noqa: E731
    return CurveFamily(z, z_t, lambda phi, lam: 1j * np.exp(1j * phi), affine=True, closed=True)


def normal_family(c: ParametricCurve) -> CurveFamily:
    """Normals ``z(t) + lam i z'(t)`` of a curve; their envelope is the evolute."""
    return CurveFamily(
        lambda t, lam: c.derivative(t, 0) + lam * 1j * c.derivative(t, 1),
        lambda t, lam: c.derivative(t, 1) + lam * 1j * c.derivative(t, 2),
        lambda t, lam: 1j * c.derivative(t, 1),
        c.domain, affine=True, closed=c.closed,
    )


def sliding_segment_family(length: float) -> CurveFamily:
    """Segment of fixed length with its ends gliding on the two axes."""
    return CurveFamily(
        lambda p, lam: length * math.sin(p) + lam * length * (1j * math.cos(p) - math.sin(p)),
        lambda p, lam: length * math.cos(p) + lam * length * (-1j * math.sin(p) - math.cos(p)),
        lambda p, lam: length * (1j * math.cos(p) - math.sin(p)),
        (0.0, TWO_PI), (0.0, 1.0), affine=True, closed=True,
    )


@dataclass(frozen=True)
class SupportFunction:
    """Support function ``a(phi)`` with derivatives; ``d2``/``d3`` optional."""

    value: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Optional[Callable[[float], float]] = None
    d3: Optional[Callable[[float], float]] = None
    knots: tuple[float, ...] = ()

    def __call__(self, phi):
        return self.value(phi)

    def convexity(self, phi: float) -> float:
        """``a + a''``: positive where the envelope is convex (the curvature radius)."""
        if self.d2 is None:
            raise ValueError("second derivative not available")
        return self.value(phi) + self.d2(phi)


def envelope_from_support(a: SupportFunction) -> ParametricCurve:
    """``phi -> (a + i a') e^{i phi}``."""
    vec = _accepts_arrays(a.value) and _accepts_arrays(a.d1)

    def z(phi):
        return (a.value(phi) + 1j * a.d1(phi)) * np.exp(1j * phi)

    d1 = d2 = None
    if a.d2 is not None:
        d1 = lambda phi: 1j * (a.value(phi) + a.d2(phi)) * np.exp(1j * phi)  # noqa: E731
        if a.d3 is not None:
            d2 = lambda phi: (1j * (a.d1(phi) + a.d3(phi)) - (a.value(phi) + a.d2(phi))) * np.exp(1j * phi)  # noqa: E731
    return ParametricCurve(z, d1, d2, None, (0.0, TWO_PI), True, a.knots, vectorized=vec,
                           name="support envelope")


def _accepts_arrays(fn) -> bool:
    try:
        out = fn(np.zeros(2))
    except Exception:
        return False
    return np.shape(out) == (2,)


def astroid_support(length: float) -> SupportFunction:
    """``a(phi) = length/2 * sin(2 phi)``, the sliding-segment family."""
    h = 0.5 * length
    return SupportFunction(
        lambda p: h * np.sin(2 * p),
        lambda p: 2 * h * np.cos(2 * p),
        lambda p: -4 * h * np.sin(2 * p),
        lambda p: -8 * h * np.cos(2 * p),
    )


def constant_support(radius: float) -> SupportFunction:
    return SupportFunction(lambda p: radius + 0 * p, lambda p: 0 * p, lambda p: 0 * p, lambda p: 0 * p)


def _support_argmax(c: ParametricCurve, phi: float, samples: int) -> float:
    ts = c.sample_params(samples, 0.37)
    direction = complex(math.cos(phi), math.sin(phi))
    heights = sp(c.points(ts), direction)
    k = int(np.argmax(heights))
    h = c.period / samples
    slope = lambda t: sp(c.derivative(t, 1), direction)  # noqa: E731
    a, b = ts[k] - h, ts[k] + h
    if slope(a) > 0.0 > slope(b):
        return find_root_1d(slope, (a, b))
    return float(ts[k])


def support_of_convex(c: ParametricCurve, phi: float, samples: int = 720) -> float:
    """``max_t <z(t), e^{i phi}>`` by coarse sampling plus a stationary-point polish."""
    t = _support_argmax(c, phi, samples)
    return sp(c.derivative(t, 0), complex(math.cos(phi), math.sin(phi)))


def support_function_of(c: ParametricCurve, samples: int = 720) -> SupportFunction:
    """Support function of a closed convex curve; ``a'`` from the touching point."""

    def value(phi):
        return support_of_convex(c, float(phi), samples)

    def d1(phi):
        t = _support_argmax(c, float(phi), samples)
        return sp(c.derivative(t, 0), 1j * complex(math.cos(phi), math.sin(phi)))

    return SupportFunction(value, d1)


def check_support_roundtrip(c: ParametricCurve, samples: int = 90, tol: float = 1e-6) -> float:
    """Deviation between ``c`` and the envelope of its support lines; warns when above ``tol``."""
    sf = support_function_of(c)
    env = envelope_from_support(sf)
    worst = 0.0
    ts = c.sample_params(2048)
    trace = c.points(ts)
    h = c.period / 2048
    for phi in np.linspace(0.0, TWO_PI, samples, endpoint=False):
        p = env(float(phi))
        k = int(np.argmin(np.abs(trace - p)))
        res = minimize_scalar(lambda t: abs(c.derivative(t, 0) - p), bounds=(ts[k] - h, ts[k] + h),
                              method="bounded", options={"xatol": 1e-13})
        worst = max(worst, float(res.fun))
    # reverse direction: a dent is never touched by a support line, so each
    # curve point must be extreme along its own outward normal
    outward = -1j if enclosed_area(c) > 0 else 1j
    for t in c.sample_params(samples, 0.11):
        d = c.derivative(t, 1)
        if abs(d) == 0.0:
            continue
        normal = outward * d / abs(d)
        phi = math.atan2(normal.imag, normal.real)
        worst = max(worst, support_of_convex(c, phi) - sp(c.derivative(t, 0), normal))
    if worst > tol * c.scale():
        warnings.warn(f"support round trip deviates by {worst:.3g}", NotConvexWarning, stacklevel=2)
    return worst
