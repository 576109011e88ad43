"""Plane motion of a moving frame: poles, centrodes, Bresse circles and Ball's point.

The frame is described by its origin ``z_Omega(phi)`` and its angle
``theta(phi)``; a frame point with coordinates ``zeta`` sits at
``z_Omega + zeta * e^{i theta}``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import KinematicsError, PoleAtInfinity, Undefined
from .geom_core import qvp, rotor_jet, sp

Jet = tuple[complex, complex, complex, complex]
RealJet = tuple[float, float, float, float]
TRANSLATION_TOL = 1e-10


@dataclass(frozen=True)
class MotionState:
    origin: Jet
    theta: RealJet
    rotor: Jet

    @property
    def w1(self) -> float:
        return self.theta[1]

    @property
    def w2(self) -> float:
        return self.theta[2]

    @property
    def w3(self) -> float:
        return self.theta[3]


@dataclass(frozen=True)
class PlanarMotion:
    """``origin(phi)`` returns the jet of ``z_Omega``; ``angle(phi)`` returns ``(theta, theta', theta'', theta''')``."""

    origin: Callable[[float], Jet]
    angle: Callable[[float], RealJet]

    def state(self, phi: float) -> MotionState:
        th = tuple(float(v) for v in self.angle(phi))
        z = tuple(complex(v) for v in self.origin(phi))
        return MotionState(z, th, rotor_jet(cmath.exp(1j * th[0]), th[1], th[2], th[3]))  # type: ignore[arg-type]

    def point_jet(self, zeta: complex, phi: float) -> Jet:
        s = self.state(phi)
        return tuple(o + zeta * e for o, e in zip(s.origin, s.rotor))  # type: ignore[return-value]

    def frame_coordinates(self, z: complex, phi: float) -> complex:
        """``zeta`` of the frame point currently at ``z``."""
        s = self.state(phi)
        return (z - s.origin[0]) / s.rotor[0]


def _chain(inner: RealJet, outer_at: Callable[[float], Sequence]) -> list:
    """Faa di Bruno to third order for ``g(f(t))``."""
    f0, f1, f2, f3 = inner
    g0, g1, g2, g3 = outer_at(f0)
    return [g0, g1 * f1, g2 * f1**2 + g1 * f2, g3 * f1**3 + 3 * g2 * f1 * f2 + g1 * f3]


def reparametrize(m: PlanarMotion, f: Callable[[float], RealJet]) -> PlanarMotion:
    """Same motion with ``phi = f(t)``; ``f(t)`` returns ``(phi, f', f'', f''')``."""
    return PlanarMotion(
        lambda t: tuple(_chain(f(t), m.origin)),  # type: ignore[arg-type]
        lambda t: tuple(_chain(f(t), m.angle)),  # type: ignore[arg-type]
    )


def rotation_about(center: complex, rate: float = 1.0) -> PlanarMotion:
    """Uniform rotation of the frame about a fixed point."""
    return PlanarMotion(
        lambda p: (center, 0j, 0j, 0j),
        lambda p: (rate * p, rate, 0.0, 0.0),
    )


def rolling_motion(origin_radius: float = 1.0, rate: float = 2.0) -> PlanarMotion:
    """Frame origin on a circle ``r e^{i phi}`` while the frame turns at ``rate``."""
    return PlanarMotion(
        lambda p: tuple(origin_radius * (1j) ** k * cmath.exp(1j * p) for k in range(4)),  # type: ignore[arg-type]
        lambda p: (rate * p, rate, 0.0, 0.0),
    )


def _require_rotation(s: MotionState) -> None:
    if abs(s.w1) < TRANSLATION_TOL:
        raise PoleAtInfinity("instantaneous translation: theta' = 0")


def pole(m: PlanarMotion, phi: float, order: int = 1) -> complex:
    """``n``-th pole ``z_Omega - (eps / eps^(n)) z_Omega^(n)`` for ``n`` in 1..3."""
    if order not in (1, 2, 3):
        raise ValueError("pole order must be 1, 2 or 3")
    s = m.state(phi)
    _require_rotation(s)
    den = s.rotor[order]
    if abs(den) < TRANSLATION_TOL:
        raise PoleAtInfinity(f"pole of order {order} is at infinity")
    return s.origin[0] - s.rotor[0] / den * s.origin[order]


def poles(m: PlanarMotion, phi: float) -> tuple[complex, complex, complex]:
    return pole(m, phi, 1), pole(m, phi, 2), pole(m, phi, 3)


def centrodes(m: PlanarMotion, phi: float) -> tuple[complex, complex]:
    """Current points of the fixed centrode and of the moving centrode (frame coordinates)."""
    s = m.state(phi)
    _require_rotation(s)
    lever = 1j * s.origin[1] / s.w1
    return s.origin[0] + lever, lever * s.rotor[0].conjugate()


def pole_velocity(m: PlanarMotion, phi: float) -> complex:
    """``u = dz_P1/dphi`` from the frame jets."""
    s = m.state(phi)
    _require_rotation(s)
    return ((s.w2 + 1j * s.w1**2) * s.origin[1] - s.w1 * s.origin[2]) / (1j * s.w1**2)


def pole_velocity_from_poles(m: PlanarMotion, phi: float) -> complex:
    """``u = (theta'' + i theta'^2) / theta' * (P2 - P1)``."""
    s = m.state(phi)
    p1, p2 = pole(m, phi, 1), pole(m, phi, 2)
    return (s.w2 + 1j * s.w1**2) / s.w1 * (p2 - p1)


def pole_acceleration(m: PlanarMotion, phi: float) -> complex:
    """``d^2 z_P1 / dphi^2`` expressed through the three poles."""
    s = m.state(phi)
    e0, e1, e2, e3 = s.rotor
    p1, p2, p3 = poles(m, phi)
    return (e2 / e0 - 2 * e2**2 / e1**2) * (p2 - p1) + e3 / e1 * (p3 - p1)


@dataclass(frozen=True)
class CircleReport:
    kind: str
    center: Optional[complex]
    radius: Optional[float]
    reason: str = ""

    @property
    def defined(self) -> bool:
        return self.center is not None


CIRCLE_KINDS = ("inflection", "stationary", "zero_normal_jerk", "zero_tangential_jerk")


def characteristic_circles(m: PlanarMotion, phi: float) -> dict[str, CircleReport]:
    """Inflection (k1), stationary (k2), zero-normal jerk (k3) and zero-tangential jerk (k4) circles."""
    s = m.state(phi)
    _require_rotation(s)
    w1, w2, w3 = s.w1, s.w2, s.w3
    p1 = pole(m, phi, 1)
    u = pole_velocity(m, phi)
    out: dict[str, CircleReport] = {
        "inflection": CircleReport("inflection", p1 - 0.5j * u / w1, abs(u) / (2 * abs(w1))),
    }
    if abs(w2) < TRANSLATION_TOL:
        out["stationary"] = CircleReport("stationary", None, None, "theta'' = 0")
        out["zero_normal_jerk"] = CircleReport("zero_normal_jerk", None, None, "theta'' = 0")
    else:
        out["stationary"] = CircleReport("stationary", p1 + 0.5 * (w1 / w2) * u, 0.5 * abs(w1 / w2) * abs(u))
    jerk = w3 - w1**3
    try:
        p3 = pole(m, phi, 3)
    except PoleAtInfinity as exc:
        p3 = None
        reason = str(exc)
    if p3 is not None and abs(w2) >= TRANSLATION_TOL:
        c3 = 0.5 * (p1 + p3 + 1j * jerk / (3 * w1 * w2) * (p1 - p3))
        r3sq = (w1**6 + 9 * w1**2 * w2**2 - 2 * w1**3 * w3 + w3**2) / (36 * w1**2 * w2**2) * abs(p1 - p3) ** 2
        out["zero_normal_jerk"] = CircleReport("zero_normal_jerk", c3, math.sqrt(r3sq))
    elif p3 is None:
        out["zero_normal_jerk"] = CircleReport("zero_normal_jerk", None, None, reason)
    if p3 is None:
        out["zero_tangential_jerk"] = CircleReport("zero_tangential_jerk", None, None, reason)
    elif abs(jerk) < TRANSLATION_TOL:
        out["zero_tangential_jerk"] = CircleReport("zero_tangential_jerk", None, None, "theta''' = theta'^3")
    else:
        c4 = 0.5 * (p1 + p3 - 1j * 3 * w1 * w2 / jerk * (p1 - p3))
        r4sq = (w1**6 + 9 * w1**2 * w2**2 - 2 * w1**3 * w3 + w3**2) / (4 * jerk**2) * abs(p1 - p3) ** 2
        out["zero_tangential_jerk"] = CircleReport("zero_tangential_jerk", c4, math.sqrt(r4sq))
    return out


def inflection_residual(m: PlanarMotion, phi: float, z: complex) -> float:
    """``F(z) = [z - P1, (theta'' + i theta'^2)(z - P2)]``; zero on the inflection circle."""
    s = m.state(phi)
    p1, p2 = pole(m, phi, 1), pole(m, phi, 2)
    return float(qvp(z - p1, (s.w2 + 1j * s.w1**2) * (z - p2)))


def normal_jerk_residual(m: PlanarMotion, phi: float, z: complex) -> float:
    """``[eps'(z - P1), eps'''(z - P3)]``; zero on the zero-normal jerk circle."""
    s = m.state(phi)
    p1, p3 = pole(m, phi, 1), pole(m, phi, 3)
    return float(qvp(s.rotor[1] * (z - p1), s.rotor[3] * (z - p3)))


def cubic_residual(m: PlanarMotion, phi: float, z) -> float:
    """``G(z)``: zero exactly on the cubic of stationary curvature (``z`` may be an array)."""
    s = m.state(phi)
    _, e1, e2, e3 = s.rotor
    p1, p2, p3 = poles(m, phi)
    a = e1 * (z - p1)
    b = e2 * (z - p2)
    c = e3 * (z - p3)
    return 3.0 * qvp(a, b) * sp(a, b) - s.w1**2 * np.abs(z - p1) ** 2 * qvp(a, c)


def cubic_contour(m: PlanarMotion, phi: float, lower_left: complex, upper_right: complex,
                  resolution: int = 400) -> list[np.ndarray]:
    """Zero set of :func:`cubic_residual` in a window, as complex polylines."""
    import contourpy

    xs = np.linspace(lower_left.real, upper_right.real, resolution)
    ys = np.linspace(lower_left.imag, upper_right.imag, resolution)
    gx, gy = np.meshgrid(xs, ys)
    vals = cubic_residual(m, phi, gx + 1j * gy)
    gen = contourpy.contour_generator(gx, gy, vals)
    return [seg[:, 0] + 1j * seg[:, 1] for seg in gen.lines(0.0)]


def balls_point(m: PlanarMotion, phi: float) -> complex:
    """Second intersection of the inflection and zero-normal jerk circles, via their radical line."""
    circles = characteristic_circles(m, phi)
    k1, k3 = circles["inflection"], circles["zero_normal_jerk"]
    if not k3.defined:
        raise Undefined(f"zero-normal jerk circle undefined: {k3.reason}")
    z1, z3, r1, r3 = k1.center, k3.center, k1.radius, k3.radius
    dz = z1 - z3
    if abs(dz) < 1e-12 * max(1.0, abs(z1)):
        raise Undefined("inflection and zero-normal jerk circles are concentric")
    zs = (abs(z1) ** 2 - abs(z3) ** 2 - r1**2 + r3**2 + z1.conjugate() * z3 - z1 * z3.conjugate()) / (2 * dz.conjugate())
    return 2 * zs - pole(m, phi, 1)


def balls_point_by_intersection(m: PlanarMotion, phi: float) -> complex:
    """Cross-check: circle-circle intersection of k1 and k3, taking the point away from P1."""
    circles = characteristic_circles(m, phi)
    k1, k3 = circles["inflection"], circles["zero_normal_jerk"]
    if not k3.defined:
        raise Undefined(k3.reason)
    d = k3.center - k1.center
    dist = abs(d)
    along = (k1.radius**2 - k3.radius**2 + dist**2) / (2 * dist)
    h = math.sqrt(max(k1.radius**2 - along**2, 0.0))
    base = k1.center + along * d / dist
    cands = (base + 1j * h * d / dist, base - 1j * h * d / dist)
    p1 = pole(m, phi, 1)
    return max(cands, key=lambda c: abs(c - p1))


def pole2_reparametrized(m: PlanarMotion, phi: float, f1: float, f2: float) -> complex:
    """Second pole after ``phi = f(t)``, given ``f'`` and ``f''`` at the current instant."""
    s = m.state(phi)
    z0, z1, z2, _ = s.origin
    num = z2 * f1**2 + z1 * f2
    den = 1j * (s.w2 * f1**2 + s.w1 * f2) - s.w1**2 * f1**2
    return z0 - num / den


def motion_sweep_rows(m: PlanarMotion, phis) -> list[dict]:
    """Per-angle table of poles, pole velocity, circle data and Ball's point."""
    rows = []
    for phi in phis:
        row: dict = {"phi": float(phi)}
        try:
            p1, p2, p3 = poles(m, float(phi))
            row.update(P1=p1, P2=p2, P3=p3, u=pole_velocity(m, float(phi)))
            for kind, rep in characteristic_circles(m, float(phi)).items():
                row[f"{kind}_center"] = rep.center
                row[f"{kind}_radius"] = rep.radius
            row["ball"] = balls_point(m, float(phi))
        except KinematicsError as exc:
            row["note"] = str(exc)
        rows.append(row)
    return rows
