"""Polygon profiles (Pn curves) for shaft-hub connections.

A Pn curve has support function ``R - e cos(n phi)``; odd ``n`` gives curves
of constant width ``2R``.  The curve is traced by a three-bar chain whose
bars turn at the rates ``1``, ``-(n-1)`` and ``n+1``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curve import TWO_PI, ParametricCurve
from .errors import DomainError, NoConvergence
from .numerics import find_root_1d

SMOOTH = "PnG_smooth"
CUSPS = "PnG_with_cusps"
SELF_INTERSECTING = "self_intersecting"


@dataclass(frozen=True)
class PnProfile:
    R: float
    e: float
    n: int

    def __post_init__(self):
        if not self.R > 0 or self.e < 0 or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"invalid profile parameters R={self.R}, e={self.e}, n={self.n}")

    @property
    def is_png(self) -> bool:
        """True when the curve is free of self-intersections (cusps allowed)."""
        return self.n == 1 or self.e <= self.R / (self.n**2 - 1)

    def support(self, phi):
        return self.R - self.e * np.cos(self.n * phi)

    def width(self, phi):
        """Distance between the two supporting lines normal to direction ``phi``."""
        return self.support(phi) + self.support(phi + math.pi)


def pn_point(p: PnProfile, phi: float) -> tuple[complex, complex]:
    """Point and tangent vector at crank angle ``phi``."""
    n, e = p.n, p.e
    spin = cmath.exp(1j * phi)
    z = spin * (p.R - e * math.cos(n * phi) + 1j * n * e * math.sin(n * phi))
    z1 = 1j * spin * (p.R + (n * n - 1) * e * math.cos(n * phi))
    return z, z1


def pn_curve(p: PnProfile) -> ParametricCurve:
    n, e, R = p.n, p.e, p.R
    k = n * n - 1

    def z(t):
        return np.exp(1j * t) * (R - e * np.cos(n * t) + 1j * n * e * np.sin(n * t))

    def z1(t):
        return 1j * np.exp(1j * t) * (R + k * e * np.cos(n * t))

    def z2(t):
        return np.exp(1j * t) * (-(R + k * e * np.cos(n * t)) - 1j * n * k * e * np.sin(n * t))

    def z3(t):
        s, c = np.sin(n * t), np.cos(n * t)
        return np.exp(1j * t) * (-1j * (R + k * e * c) + 2 * n * k * e * s - 1j * n * n * k * e * c)

    return ParametricCurve(z, z1, z2, z3, (0.0, TWO_PI), True, vectorized=True, name=f"P{n}")


@dataclass(frozen=True)
class ProfileMetrics:
    area: float
    length: Optional[float]
    constant_width: bool
    width_range: tuple[float, float]


def profile_area(p: PnProfile) -> float:
    """Signed area; with self-intersections the small loops count negatively."""
    return math.pi * p.R**2 - 0.5 * math.pi * (p.n**2 - 1) * p.e**2


def profile_metrics(p: PnProfile, samples: int = 720) -> ProfileMetrics:
    """Closed-form area; length ``2 pi R`` for PnG profiles (``None`` otherwise)."""
    ts = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    w = p.width(ts)
    constant = p.n % 2 == 1 and float(np.max(np.abs(w - 2 * p.R))) < 1e-12 * max(1.0, p.R)
    length = TWO_PI * p.R if p.is_png else None
    return ProfileMetrics(profile_area(p), length, constant, (float(w.min()), float(w.max())))


def validity_check(p: PnProfile) -> str:
    if p.n == 1 or p.e == 0.0:
        return SMOOTH
    bound = (p.n**2 - 1) * p.e
    if math.isclose(p.R, bound, rel_tol=1e-12):
        return CUSPS
    return SMOOTH if p.R > bound else SELF_INTERSECTING


@dataclass(frozen=True)
class GeneratorBars:
    """Bar lengths of the generating chain and the pitch radii of the two gear pairs."""

    l2: float
    l3: float
    l4: float
    rho1: float
    rho2: float
    rho3: float
    rho4: float
    rates: tuple[int, int, int]

    def point(self, phi: float) -> complex:
        n = self.rates[2] - 1
        return (
            self.l2 * cmath.exp(1j * phi)
            + self.l3 * cmath.exp(1j * (math.pi - (n - 1) * phi))
            + self.l4 * cmath.exp(1j * (n + 1) * phi)
        )

    def joints(self, phi: float) -> tuple[complex, complex, complex]:
        """Joint positions ``A``, ``B`` and tracing point ``C``."""
        n = self.rates[2] - 1
        a = self.l2 * cmath.exp(1j * phi)
        b = a + self.l3 * cmath.exp(1j * (math.pi - (n - 1) * phi))
        return a, b, b + self.l4 * cmath.exp(1j * (n + 1) * phi)


def generator_bars(p: PnProfile) -> GeneratorBars:
    """Bars ``R``, ``(n+1)e/2``, ``(n-1)e/2``; the first gear pair is undefined for ``n = 1``."""
    n = p.n
    l3 = 0.5 * (n + 1) * p.e
    rho3 = p.R / (n - 1) if n > 1 else math.inf
    rho1 = n * rho3 if n > 1 else math.inf
    return GeneratorBars(p.R, l3, 0.5 * (n - 1) * p.e, rho1, 2 * l3, rho3, l3, (1, -(n - 1), n + 1))


def tool_ellipse_path(p: PnProfile, tool_radius: float) -> ParametricCurve:
    """Tool centre path in the frame of a rotating workpiece; runs ``n`` times per turn."""
    if tool_radius < 0:
        raise DomainError("tool radius must be non-negative")
    n, e = p.n, p.e
    centre = p.R + tool_radius
    return ParametricCurve(
        lambda t: centre - e * np.cos(n * t) + 1j * n * e * np.sin(n * t),
        lambda t: n * e * np.sin(n * t) + 1j * n * n * e * np.cos(n * t),
        lambda t: n * n * e * np.cos(n * t) - 1j * n**3 * e * np.sin(n * t),
        lambda t: -(n**3) * e * np.sin(n * t) - 1j * n**4 * e * np.cos(n * t),
        (0.0, TWO_PI), True, vectorized=True, name="tool ellipse",
    )


def hypotrochoid_point(p: PnProfile, tool_radius: float, phi: float) -> complex:
    """Same ellipse, traced by a circle of radius ``rho4`` rolling inside one of radius ``rho2``."""
    bars = generator_bars(p)
    t = p.n * phi
    hub = (p.R + tool_radius) + (bars.rho2 - bars.rho4) * cmath.exp(1j * (math.pi - t))
    return hub + bars.l4 * cmath.exp(1j * t)


def _tool_offset(p: PnProfile, tool_radius: float, psi: float) -> complex:
    # unit tangent in closed form: it stays defined at the cusps of the limiting PnG case
    z, _ = pn_point(p, psi)
    speed = p.R + (p.n**2 - 1) * p.e * math.cos(p.n * psi)
    tangent = 1j * cmath.exp(1j * psi) * (1.0 if speed >= 0 else -1.0)
    return z - 1j * tool_radius * tangent


def cnc_linear_toolpath(p: PnProfile, tool_radius: float, phi: float,
                        seed: Optional[float] = None) -> tuple[float, float, float]:
    """Contact parameter, tool abscissa and shifted abscissa for a tool gliding on the x-axis."""
    if tool_radius <= 0:
        raise DomainError("tool radius must be positive")
    rot = cmath.exp(-1j * phi)

    def im_part(psi):
        return (_tool_offset(p, tool_radius, psi) * rot).imag

    guess = phi if seed is None else seed
    try:
        psi = find_root_1d(im_part, guess)
    except NoConvergence:
        step = 0.5 / p.n
        psi = find_root_1d(im_part, (guess - step, guess + step))
    x = (_tool_offset(p, tool_radius, psi) * rot).real
    return psi, x, x - p.R - tool_radius


def cnc_sweep(p: PnProfile, tool_radius: float, phis) -> np.ndarray:
    """Rows ``(phi, f_r, x_r, shifted x_r)``, each solve warm-started from the previous one."""
    rows, seed = [], None
    for phi in phis:
        psi, x, xs = cnc_linear_toolpath(p, tool_radius, float(phi), seed)
        rows.append((float(phi), psi, x, xs))
        seed = psi + (phis[1] - phis[0] if len(phis) > 1 else 0.0)
    return np.array(rows)


@dataclass(frozen=True)
class ReuleauxComparison:
    profile_area: float
    reuleaux_area: float
    profile_larger: bool


def reuleaux_area(width: float) -> float:
    R = 0.5 * width
    return math.pi * R**2 - (2 * math.sqrt(3) - math.pi) * R**2


def reuleaux_compare(p: PnProfile) -> ReuleauxComparison:
    if p.n % 2 == 0:
        raise DomainError("only odd n gives a curve of constant width")
    a, a_star = profile_area(p), reuleaux_area(2 * p.R)
    return ReuleauxComparison(a, a_star, a > a_star)


def equal_area_eccentricity(R: float, n: int) -> float:
    """Eccentricity at which the Pn curve encloses the Reuleaux-triangle area."""
    return R * math.sqrt(2 * (2 * math.sqrt(3) - math.pi) / (math.pi * (n * n - 1)))


def rabinowitz() -> PnProfile:
    return PnProfile(9.0, 1.0, 3)


def blend_parameters(p: PnProfile, arc_radius: float, samples: int = 1440) -> tuple[float, ...]:
    """Parameters where the Pn curve meets the circle ``|z| = arc_radius``.

    These are the junctions for replacing the outer parts of the curve by
    circular arcs; an empty tuple means the circle misses the curve.
    """
    ts = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    f = lambda t: abs(pn_point(p, t)[0]) - arc_radius  # noqa: E731
    vals = [f(float(t)) for t in ts]
    roots = []
    for k in range(samples):
        a, b = float(ts[k]), float(ts[k]) + TWO_PI / samples
        fa, fb = vals[k], vals[(k + 1) % samples]
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0.0:
            roots.append(find_root_1d(f, (a, b)) % TWO_PI)
    return tuple(sorted(roots))


__all__ = [
    "CUSPS", "SELF_INTERSECTING", "SMOOTH", "GeneratorBars", "PnProfile", "ProfileMetrics",
    "ReuleauxComparison", "blend_parameters", "cnc_linear_toolpath", "cnc_sweep",
    "equal_area_eccentricity", "generator_bars", "hypotrochoid_point", "pn_curve", "pn_point",
    "profile_area", "profile_metrics", "rabinowitz", "reuleaux_area", "reuleaux_compare",
    "tool_ellipse_path", "validity_check",
]
