"""Disc cams with translating flat-face, swinging flat-face and swinging roller followers.

The cam turns positively about the origin ``A0``.  Contours are built in the
cam's own frame by inverting the follower motion, so every contour runs
clockwise and its signed area is negative.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import kernels
from .curve import (
    TWO_PI,
    ParametricCurve,
    SelfIntersection,
    arc_length,
    curvature,
    enclosed_area,
    parallel_curve,
    self_intersections,
)
from .envelope import CurveFamily
from .errors import FollowerSingular, NoBracket, SingularPoint
from .geom_core import qvp, rotor_jet, sp
from .numerics import MotionLaw, find_root_1d, find_root_2d, integrate

FOLLOWER_TOL = 1e-9
DWELL_TOL = 1e-8


def _moving_intervals(law) -> list[tuple[float, float]]:
    if hasattr(law, "moving_intervals"):
        return law.moving_intervals()
    return [(0.0, TWO_PI)]


def _law_knots(law) -> tuple[float, ...]:
    return tuple(k for k in getattr(law, "knots", ()) if 0.0 < k < TWO_PI)


def _stationary_points(fn: Callable[[float], float], intervals, per_interval: int = 400) -> list[float]:
    """Sign changes of ``fn`` inside each interval, polished by Brent."""
    roots = []
    for a, b in intervals:
        grid = np.linspace(a, b, per_interval + 1)[1:-1]
        vals = [fn(float(g)) for g in grid]
        for k in range(len(grid) - 1):
            if vals[k] == 0.0:
                roots.append(float(grid[k]))
            elif vals[k] * vals[k + 1] < 0.0:
                roots.append(find_root_1d(fn, (grid[k], grid[k + 1])))
    return roots


# ---------------------------------------------------------------------------
# translating flat-face follower


@dataclass(frozen=True)
class TranslatingFlatFaceCam:
    """Base-circle radius ``r0`` and stroke law ``r``; ``p = r0 + r`` is the support function."""

    r0: float
    r: MotionLaw

    def support(self, phi: float) -> tuple[float, float, float, float]:
        v, d1, d2, d3 = self.r.derivs(phi)
        return self.r0 + v, d1, d2, d3

    def curvature_radius(self, phi: float) -> float:
        """Signed radius ``p + p''``; negative where the contour is undercut."""
        p, _, p2, _ = self.support(phi)
        return p + p2


def tff_contour(cam: TranslatingFlatFaceCam, phi: float) -> tuple[complex, complex]:
    """Contour point in cam coordinates and the contact point on the follower face."""
    p, p1, _, _ = cam.support(phi)
    contact = complex(p, -p1)
    return contact * cmath.exp(-1j * phi), contact


def tff_curve(cam: TranslatingFlatFaceCam) -> ParametricCurve:
    def z(phi):
        return tff_contour(cam, phi)[0]

    def z1(phi):
        p, _, p2, _ = cam.support(phi)
        return -1j * (p + p2) * cmath.exp(-1j * phi)

    def z2(phi):
        p, p1, p2, p3 = cam.support(phi)
        return (-1j * (p1 + p3) - (p + p2)) * cmath.exp(-1j * phi)

    return ParametricCurve(z, z1, z2, None, (0.0, TWO_PI), True, _law_knots(cam.r), name="flat-face cam")


def tff_line_family(cam: TranslatingFlatFaceCam) -> CurveFamily:
    """Follower face positions ``(p + i lam) e^{-i phi}`` seen from the cam."""

    def z(phi, lam):
        return (cam.support(phi)[0] + 1j * lam) * cmath.exp(-1j * phi)

    def z_t(phi, lam):
        p, p1, _, _ = cam.support(phi)
        return (p1 + lam - 1j * p) * cmath.exp(-1j * phi)

    return CurveFamily(z, z_t, lambda phi, lam: 1j * cmath.exp(-1j * phi), affine=True, closed=True)


@dataclass(frozen=True)
class RadiusExtreme:
    phi: float
    radius: float


@dataclass(frozen=True)
class TffMetrics:
    perimeter: float
    signed_area: float
    area: float
    rho_min: RadiusExtreme
    rho_max: RadiusExtreme
    curvature: Callable[[float], float] = field(repr=False)


def _radius_candidates(cam: TranslatingFlatFaceCam) -> list[RadiusExtreme]:
    law = cam.r
    stationary = _stationary_points(lambda t: law.d1(t) + law.d3(t), _moving_intervals(law))
    knots = list(getattr(law, "knots", (0.0,)))
    mids = [0.5 * (a + b) for a, b in zip(knots[:-1], knots[1:])]
    return [RadiusExtreme(t, cam.curvature_radius(t)) for t in (*stationary, *knots, *mids)]


def tff_metrics(cam: TranslatingFlatFaceCam, tol: float = 1e-12) -> TffMetrics:
    """Perimeter ``int p``, area ``-1/2 int (p^2 - p'^2)`` and the curvature-radius extremes."""
    knots = _law_knots(cam.r)
    perimeter = integrate(lambda t: cam.support(t)[0], 0.0, TWO_PI, knots, tol)

    def area_density(t):
        p, p1, _, _ = cam.support(t)
        return -0.5 * (p * p - p1 * p1)

    signed = integrate(area_density, 0.0, TWO_PI, knots, tol)
    cands = _radius_candidates(cam)
    return TffMetrics(
        perimeter,
        signed,
        abs(signed),
        min(cands, key=lambda c: c.radius),
        max(cands, key=lambda c: c.radius),
        lambda t: -1.0 / cam.curvature_radius(t),
    )


def cusp_thresholds(r: MotionLaw) -> list[RadiusExtreme]:
    """For every local minimum of ``r + r''`` below zero: the base radius at which it touches zero.

    Each entry carries the location and the corresponding ``r0``; any smaller
    ``r0`` turns that minimum into a pair of cusps.
    """
    law = r
    d1 = lambda t: law.d1(t) + law.d3(t)  # noqa: E731
    out = []
    for t in _stationary_points(d1, _moving_intervals(law)):
        h = 1e-4
        if d1(t - h) < 0.0 < d1(t + h):
            value = law(t) + law.d2(t)
            if value < 0.0:
                out.append(RadiusExtreme(t, -value))
    return sorted(out, key=lambda e: e.phi)


@dataclass(frozen=True)
class UndercutReport:
    """``kind`` is ``convex``, ``cusp`` (zeros without sign change) or ``loop``.

    ``touch_points`` are tangential zeros of ``p + p''``; ``cusps`` are sign
    changes.  For a loop, ``crossing`` is the self-intersection that cuts it
    off and ``reduced_stroke`` is the stroke the follower actually performs.
    """

    kind: str
    cusps: tuple[float, ...]
    touch_points: tuple[float, ...]
    crossing: Optional[SelfIntersection]
    reduced_stroke: Optional[Callable[[float], float]] = field(default=None, repr=False)


def tff_undercut(cam: TranslatingFlatFaceCam, touch_tol: float = 1e-6, samples: int = 4096) -> UndercutReport:
    rho = cam.curvature_radius
    cusps = _stationary_points(rho, [(0.0, TWO_PI)], per_interval=samples)
    law = cam.r
    touches = [
        e.phi for e in _radius_candidates(cam)
        if abs(e.radius) <= touch_tol * max(1.0, cam.r0)
        and all(abs(e.phi - c) > 1e-6 for c in cusps)
    ]
    touches = sorted(set(round(t, 12) for t in touches))
    if not cusps:
        kind = "cusp" if touches else "convex"
        return UndercutReport(kind, (), tuple(touches), None)
    contour = tff_curve(cam)
    crossing = _loop_crossing(contour, cusps)
    z_a = contour(crossing.t_a)

    def reduced(phi):
        t = phi % TWO_PI
        if crossing.t_a <= t <= crossing.t_b:
            return (z_a * cmath.exp(1j * t)).real - cam.r0
        return law(t)

    return UndercutReport("loop", tuple(cusps), tuple(touches), crossing, reduced)


def _loop_crossing(contour: ParametricCurve, cusps: Sequence[float]) -> SelfIntersection:
    # the loop is the crossing whose parameter interval encloses a cusp pair
    first, last = cusps[0], cusps[1] if len(cusps) > 1 else cusps[0]
    candidates = [
        x for x in self_intersections(contour, 4096)
        if x.t_a < first and last < x.t_b
    ]
    if not candidates:
        raise SingularPoint("undercut without a detectable self-intersection")
    return min(candidates, key=lambda x: x.t_b - x.t_a)


# ---------------------------------------------------------------------------
# swinging flat-face follower


@dataclass(frozen=True)
class SwingingFlatFaceCam:
    """Follower pivot ``zB0``, face offset ``a`` from the pivot, base angle ``psi0``."""

    zB0: complex
    psi0: float
    a: float
    psi: MotionLaw


@dataclass(frozen=True)
class SffState:
    z: complex
    lam: float
    lam1: float
    lam2: float
    kappa: float
    z1: complex = 0j
    z2: complex = 0j


def _sff_terms(cam: SwingingFlatFaceCam, phi: float):
    psi, d1, d2, d3 = cam.psi.derivs(phi)
    gap = 1.0 - d1
    if abs(gap) <= FOLLOWER_TOL:
        raise FollowerSingular(f"psi' = 1 at phi = {phi}")
    e = cmath.exp(1j * (cam.psi0 + psi))
    cross = qvp(cam.zB0, e)
    dot = sp(cam.zB0, e)
    lam = cross / gap
    lam1 = d1 / gap * dot + d2 / gap**2 * cross
    lam2 = (1.0 + d1) * d2 / gap**2 * dot + (d3 / gap**2 + 2.0 * d2 * d2 / gap**3 - d1 * d1 / gap) * cross
    return psi, d1, d2, gap, lam, lam1, lam2


def _sff_jet(cam: SwingingFlatFaceCam, phi: float):
    psi, d1, d2, gap, lam, lam1, lam2 = _sff_terms(cam, phi)
    rot = cmath.exp(1j * (cam.psi0 + psi - phi))
    spin = cmath.exp(-1j * phi)
    z = cam.zB0 * spin + (cam.a + 1j * lam) * rot
    z1 = -1j * cam.zB0 * spin + (gap * lam - 1j * (cam.a * gap - lam1)) * rot
    z2 = -cam.zB0 * spin + (
        2 * gap * lam1 - d2 * lam - cam.a * gap**2 + 1j * (lam2 - gap**2 * lam + cam.a * d2)
    ) * rot
    return z, z1, z2, lam, lam1, lam2


def sff_contour(cam: SwingingFlatFaceCam, phi: float) -> SffState:
    z, z1, z2, lam, lam1, lam2 = _sff_jet(cam, phi)
    speed = abs(z1)
    if speed <= 1e-12 * max(1.0, abs(z)):
        raise SingularPoint(f"contour cusp at phi = {phi}")
    return SffState(z, lam, lam1, lam2, qvp(z1, z2) / speed**3, z1, z2)


def sff_curve(cam: SwingingFlatFaceCam) -> ParametricCurve:
    return ParametricCurve(
        lambda t: _sff_jet(cam, t)[0],
        lambda t: _sff_jet(cam, t)[1],
        lambda t: _sff_jet(cam, t)[2],
        None, (0.0, TWO_PI), True, _law_knots(cam.psi), name="swinging flat-face cam",
    )


def total_curvature(c: ParametricCurve, tol: float = 1e-12) -> float:
    """``int kappa |z'| dt``, i.e. the net turning of the tangent."""

    def density(t):
        z1, z2 = c.derivative(t, 1), c.derivative(t, 2)
        return qvp(z1, z2) / abs(z1) ** 2

    return integrate(density, *c.domain, knots=c.inner_knots(), tol=tol)


# ---------------------------------------------------------------------------
# swinging roller follower


@dataclass(frozen=True)
class RollerCam:
    """Follower pivot ``zB0`` (cam pivot at the origin), arm ``l``, roller radius ``rho``."""

    zB0: complex
    psi0: float
    l: float  # noqa: E741
    rho: float
    psi: MotionLaw


def roller_center(cam: RollerCam, phi: float) -> complex:
    """Roller centre in frame coordinates."""
    return cam.zB0 + cam.l * cmath.exp(1j * (cam.psi0 + cam.psi(phi)))


def _roller_jet(cam: RollerCam, phi: float) -> tuple[complex, complex, complex, complex]:
    psi, d1, d2, d3 = cam.psi.derivs(phi)
    arm = rotor_jet(cmath.exp(1j * (cam.psi0 + psi - phi)), d1 - 1.0, d2, d3)
    spin = cmath.exp(-1j * phi)
    pivot = (spin, -1j * spin, -spin, 1j * spin)
    return tuple(cam.zB0 * s + cam.l * a for s, a in zip(pivot, arm))  # type: ignore[return-value]


def roller_center_curve(cam: RollerCam) -> ParametricCurve:
    """Path of the roller centre relative to the cam (pitch curve)."""
    return ParametricCurve(
        lambda t: _roller_jet(cam, t)[0],
        lambda t: _roller_jet(cam, t)[1],
        lambda t: _roller_jet(cam, t)[2],
        lambda t: _roller_jet(cam, t)[3],
        (0.0, TWO_PI), True, _law_knots(cam.psi), name="roller centre curve",
    )


def roller_contour_curve(cam: RollerCam) -> ParametricCurve:
    """Inner parallel of the pitch curve at distance ``rho``."""
    return parallel_curve(roller_center_curve(cam), -cam.rho)


@dataclass(frozen=True)
class RollerState:
    zB: complex
    zB1: complex
    zB2: complex
    zK: complex
    kappa_B: float
    kappa_K: float

    def contour_radius(self, rho: float) -> float:
        """Curvature radius of the contour, ``|1/kappa_B + rho|``."""
        if self.kappa_B == 0.0:
            return math.inf
        return abs(1.0 / self.kappa_B + rho)


def roller_curves(cam: RollerCam, phi: float) -> RollerState:
    zB, zB1, zB2, _ = _roller_jet(cam, phi)
    speed = abs(zB1)
    if speed <= 1e-12 * max(1.0, abs(zB)):
        raise SingularPoint(f"pitch curve cusp at phi = {phi}")
    kappa_B = qvp(zB1, zB2) / speed**3
    zK = zB - 1j * cam.rho * zB1 / speed
    stretch = abs(1.0 + cam.rho * kappa_B)
    kappa_K = kappa_B / stretch if stretch > 0.0 else math.inf
    return RollerState(zB, zB1, zB2, zK, kappa_B, kappa_K)


@dataclass(frozen=True)
class RollerMetrics:
    length_B: float
    length_K: float
    area_B: float
    area_K: float
    convex_offset: bool

    def theorem_length(self, rho: float) -> float:
        return self.length_B - TWO_PI * rho

    def theorem_area(self, rho: float) -> float:
        return self.area_B + rho * self.length_B - math.pi * rho * rho


def roller_metrics(cam: RollerCam, tol: float = 1e-12, samples: int = 2048) -> RollerMetrics:
    """Lengths and signed areas of pitch and contour curve, all by direct quadrature.

    ``convex_offset`` reports whether ``kappa_B >= -1/rho`` held on a sample
    grid, the condition under which the closed-form relations apply.
    """
    pitch = roller_center_curve(cam)
    contour = roller_contour_curve(cam)
    knots = pitch.inner_knots()

    def stretch(t):
        z1, z2 = pitch.derivative(t, 1), pitch.derivative(t, 2)
        kappa = qvp(z1, z2) / abs(z1) ** 3
        return abs(1.0 + cam.rho * kappa) * abs(z1)

    length_K = integrate(stretch, 0.0, TWO_PI, knots, tol)
    ts = pitch.sample_params(samples, 0.37)
    z1, z2 = pitch.points(ts, 1), pitch.points(ts, 2)
    kappa = qvp(z1, z2) / np.abs(z1) ** 3
    return RollerMetrics(
        arc_length(pitch, tol=tol),
        length_K,
        enclosed_area(pitch, tol),
        enclosed_area(contour, tol),
        bool(np.all(1.0 + cam.rho * kappa >= 0.0)),
    )


def transmission_angle(cam: RollerCam, phi: float) -> float:
    """Angle in ``[0, pi]`` between follower normal at ``B`` and the relative velocity of ``B``."""
    psi, d1, _, _ = cam.psi.derivs(phi)
    speed = abs(_roller_jet(cam, phi)[1])
    if speed <= 1e-12:
        raise SingularPoint(f"roller centre at rest relative to the cam at phi = {phi}")
    ang = cam.psi0 + psi
    num = cam.l * (d1 - 1.0) - cam.zB0.real * math.cos(ang) - cam.zB0.imag * math.sin(ang)
    return math.acos(max(-1.0, min(1.0, num / speed)))


def transmission_angle_complex(cam: RollerCam, phi: float) -> float:
    psi, d1, _, _ = cam.psi.derivs(phi)
    e = cmath.exp(1j * (cam.psi0 + psi))
    rel = 1j * cam.l * (d1 - 1.0) * e - 1j * cam.zB0
    speed = abs(rel)
    if speed <= 1e-12:
        raise SingularPoint(f"roller centre at rest relative to the cam at phi = {phi}")
    return math.acos(max(-1.0, min(1.0, sp(1j * e, rel) / speed)))


def transmission_extremes(cam: RollerCam, samples: int = 3600) -> tuple[RadiusExtreme, RadiusExtreme]:
    """Minimum and maximum of the transmission angle as ``(phi, mu)`` pairs."""
    ts = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    mus = np.array([transmission_angle(cam, float(t)) for t in ts])
    h = TWO_PI / samples
    out = []
    for sign, k in ((1.0, int(np.argmin(mus))), (-1.0, int(np.argmax(mus)))):
        res = minimize_scalar(lambda t: sign * transmission_angle(cam, t),
                              bounds=(ts[k] - h, ts[k] + h), method="bounded",
                              options={"xatol": 1e-11})
        out.append(RadiusExtreme(float(res.x) % TWO_PI, sign * float(res.fun)))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# cam-pivot regions for a prescribed minimum transmission angle


def _a0_lambda(law, phi: float, l: float, mu: float, side: int, rotation: int) -> tuple[float, float, float, float]:  # noqa: E741
    psi, d1, d2, _ = law.derivs(phi)
    if abs(d1) < DWELL_TOL:
        raise FollowerSingular(f"follower at rest at phi = {phi}")
    lam = -l * ((1.0 - rotation * d1) * math.cos(mu) + side * rotation * d2 / d1 * math.sin(mu))
    return psi, d1, d2, lam


def a0_envelope_point(zB0: complex, psi0: float, l: float, law, mu: float, side: int,  # noqa: E741
                      phi: float, rotation: int = 1) -> complex:
    """Point of the envelope ``C_{side*mu}`` generated at follower position ``phi``."""
    psi, d1, _, lam = _a0_lambda(law, phi, l, mu, side, rotation)
    return zB0 + (l * (1.0 - rotation * d1) + lam * cmath.exp(1j * side * mu)) * cmath.exp(1j * (psi0 + psi))


def a0_line_family(zB0: complex, psi0: float, l: float, law, mu: float, side: int,  # noqa: E741
                   interval: tuple[float, float], rotation: int = 1) -> CurveFamily:
    """Limit lines for the cam pivot, one per follower position, inclined by ``side*mu``."""

    def z(phi, lam):
        psi, d1, _, _ = law.derivs(phi)
        return zB0 + (l * (1.0 - rotation * d1) + lam * cmath.exp(1j * side * mu)) * cmath.exp(1j * (psi0 + psi))

    def z_t(phi, lam):
        psi, d1, d2, _ = law.derivs(phi)
        e = cmath.exp(1j * (psi0 + psi))
        inner = l * (1.0 - rotation * d1) + lam * cmath.exp(1j * side * mu)
        return (-rotation * l * d2 + 1j * d1 * inner) * e

    def z_lam(phi, lam):
        return cmath.exp(1j * (psi0 + law(phi) + side * mu))

    return CurveFamily(z, z_t, z_lam, interval, affine=True)


@dataclass(frozen=True)
class EnvelopeBranch:
    side: int
    interval: tuple[float, float]
    params: np.ndarray = field(repr=False)
    points: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class PivotCandidate:
    """Intersection of ``C_{+mu}`` (at ``phi_plus``) and ``C_{-mu}`` (at ``phi_minus``)."""

    point: complex
    phi_plus: float
    phi_minus: float
    kind: str = ""
    max_radius: float = math.nan
    mu_range: tuple[float, float] = (math.nan, math.nan)


@dataclass(frozen=True)
class A0Regions:
    branches: tuple[EnvelopeBranch, ...]
    candidates: tuple[PivotCandidate, ...]
    dwell_gaps: tuple[tuple[float, float], ...]

    def admissible(self) -> tuple[PivotCandidate, ...]:
        return tuple(c for c in self.candidates if c.kind)


def _branch(zB0, psi0, l, law, mu, side, interval, rotation, samples) -> EnvelopeBranch:  # noqa: E741
    a, b = interval
    ts = np.linspace(a, b, samples + 2)[1:-1]
    keep, pts = [], []
    for t in ts:
        if abs(law.d1(float(t))) < DWELL_TOL:
            continue
        keep.append(float(t))
        pts.append(a0_envelope_point(zB0, psi0, l, law, mu, side, float(t), rotation))
    return EnvelopeBranch(side, interval, np.array(keep), np.array(pts, dtype=complex))


def _branch_crossings(p: EnvelopeBranch, m: EnvelopeBranch, clip: float) -> list[tuple[float, float]]:
    # join both polylines into one open path; crossings between the two parts are the ones wanted
    n = len(p.points)
    zs = np.concatenate([p.points, m.points])
    zs = np.where(np.abs(zs) > clip, zs / np.abs(zs) * clip, zs)
    hits = kernels.polyline_crossings(zs.real, zs.imag, False)
    out = []
    for i, j, s, u in hits:
        i, j = int(i), int(j)
        if i < n - 1 and j >= n:
            ta = p.params[i] + s * (p.params[i + 1] - p.params[i])
            tb = m.params[j - n] + u * (m.params[j - n + 1] - m.params[j - n])
            out.append((float(ta), float(tb)))
    return out


def cam_for_pivot(a0: complex, zB0: complex, psi0: float, l: float, rho: float, law) -> RollerCam:  # noqa: E741
    """Roller cam obtained by placing the cam pivot at ``a0`` (frame coordinates)."""
    return RollerCam(zB0 - a0, psi0, l, rho, law)


def _classify(cand: complex, zB0, psi0, l, law, mu, rotation, tol) -> str:  # noqa: E741
    cam = RollerCam(zB0 - cand, psi0, l, 0.0, law)
    lo, hi = transmission_extremes(cam, 720)
    if lo.radius < mu - tol or hi.radius > math.pi - mu + tol:
        return ""
    # P: the pivot distance shrinks while the follower swings with the cam
    probe = [t for a, b in _moving_intervals(law) for t in np.linspace(a, b, 9)[1:-1]]
    trend = 0.0
    for t in probe:
        zb = roller_center(cam, float(t)) - 0j
        v = 1j * l * law.d1(float(t)) * cmath.exp(1j * (psi0 + law(float(t))))
        trend += rotation * np.sign(law.d1(float(t))) * sp(zb, v) / max(abs(zb), 1e-300)
    return "P" if trend < 0.0 else "F"


def a0_regions(zB0: complex, psi0: float, l: float, law, mu: float, rho: float = 0.0,  # noqa: E741
               samples: int = 1200, rotation: int = 1, clip: float = 1e4,
               mu_tol: float = 1e-6) -> A0Regions:
    """Envelopes bounding the admissible cam-pivot positions and their intersections.

    ``rotation = -1`` handles a negatively turning cam (the roles of the
    regions swap).  Positions where the follower rests are skipped; each
    rise or return segment gives one branch per side.  Intersections whose
    cam keeps ``mu <= transmission angle <= pi - mu`` are labelled ``P`` or
    ``F`` and carry the maximum contour radius for roller radius ``rho``.
    """
    intervals = _moving_intervals(law)
    gaps = []
    knots = list(getattr(law, "knots", (0.0, TWO_PI)))
    for a, b in zip(knots[:-1], knots[1:]):
        if (a, b) not in intervals:
            gaps.append((a, b))
    branches = [
        _branch(zB0, psi0, l, law, mu, side, iv, rotation, samples)
        for side in (1, -1) for iv in intervals
    ]
    plus = [b for b in branches if b.side == 1]
    minus = [b for b in branches if b.side == -1]

    def residual(x):
        d = (a0_envelope_point(zB0, psi0, l, law, mu, 1, x[0], rotation)
             - a0_envelope_point(zB0, psi0, l, law, mu, -1, x[1], rotation))
        return np.array([d.real, d.imag]) / l

    found: list[PivotCandidate] = []
    for p in plus:
        for m in minus:
            for guess in _branch_crossings(p, m, clip):
                try:
                    t_plus, t_minus = find_root_2d(residual, guess, tol=1e-13)
                except Exception:
                    continue
                if not (p.interval[0] < t_plus < p.interval[1] and m.interval[0] < t_minus < m.interval[1]):
                    continue
                point = a0_envelope_point(zB0, psi0, l, law, mu, 1, t_plus, rotation)
                if any(abs(point - f.point) < 1e-7 * l for f in found):
                    continue
                kind = _classify(point, zB0, psi0, l, law, mu, rotation, mu_tol)
                radius, mu_rng = math.nan, (math.nan, math.nan)
                if kind:
                    cam = cam_for_pivot(point, zB0, psi0, l, rho, law)
                    radius = max_contour_radius(cam)
                    lo, hi = transmission_extremes(cam)
                    mu_rng = (lo.radius, hi.radius)
                found.append(PivotCandidate(point, float(t_plus), float(t_minus), kind, radius, mu_rng))
    found.sort(key=lambda c: (c.kind == "", c.kind, c.phi_plus))
    return A0Regions(tuple(branches), tuple(found), tuple(gaps))


def max_contour_radius(cam: RollerCam, samples: int = 3600) -> float:
    """Largest distance of the cam contour from the pivot, ``max |z_B| - rho``."""
    ts = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    dist = np.array([abs(roller_center(cam, float(t))) for t in ts])
    k = int(np.argmax(dist))
    h = TWO_PI / samples
    res = minimize_scalar(lambda t: -abs(roller_center(cam, t)), bounds=(ts[k] - h, ts[k] + h),
                          method="bounded", options={"xatol": 1e-11})
    return -float(res.fun) - cam.rho


__all__ = [
    "A0Regions", "EnvelopeBranch", "PivotCandidate", "RadiusExtreme", "RollerCam", "RollerMetrics",
    "RollerState", "SffState", "SwingingFlatFaceCam", "TffMetrics", "TranslatingFlatFaceCam",
    "UndercutReport", "a0_envelope_point", "a0_line_family", "a0_regions", "cam_for_pivot",
    "cusp_thresholds", "max_contour_radius", "roller_center", "roller_center_curve",
    "roller_contour_curve", "roller_curves", "roller_metrics", "sff_contour", "sff_curve",
    "tff_contour", "tff_curve", "tff_line_family", "tff_metrics", "tff_undercut",
    "total_curvature", "transmission_angle", "transmission_angle_complex", "transmission_extremes",
]
