"""Dyad solver and the four-bar and five-bar linkages built from it.

A dyad is two bars of lengths ``l1`` and ``l2`` joined at ``C`` whose free
ends follow guide points ``A`` and ``B``.  Guides are passed as jets
``(z, z', z'', z''')`` evaluated at the drive angle.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .curve import TWO_PI, Loop, ParametricCurve, SelfIntersection, loop_decomposition, self_intersections
from .errors import DomainError, StretchedSingular, Unassemblable
from .geom_core import qvp, rotor_jet, sp
from .numerics import AffineLaw, MotionLaw

Jet = tuple[complex, complex, complex, complex]
SINGULAR_TOL = 1e-9


def fixed_jet(z: complex) -> Jet:
    return (complex(z), 0j, 0j, 0j)


def crank_jet(pivot: complex, length: float, phi: float, phase: float = 0.0) -> Jet:
    """Point ``pivot + length e^{i (phi + phase)}`` driven at unit rate."""
    e = length * cmath.exp(1j * (phi + phase))
    return (pivot + e, 1j * e, -e, -1j * e)


@dataclass(frozen=True)
class DyadSolution:
    unit: complex
    phi1: float
    d1: float
    d2: float
    d3: float
    singular: bool = False


def _dyad_terms(l1: float, l2: float, zA: Jet, zB: Jet):
    h = [2.0 * l1 * (b - a) for a, b in zip(zA, zB)]
    k = 2.0 * l1 * l1
    c = l2 * l2 - l1 * l1 - abs(h[0]) ** 2 / (2.0 * k)
    c1 = -sp(h[0], h[1]) / k
    c2 = -(sp(h[1], h[1]) + sp(h[0], h[2])) / k
    c3 = -(3.0 * sp(h[1], h[2]) + sp(h[0], h[3])) / k
    return h, (c, c1, c2, c3)


def solve_dyad(l1: float, l2: float, zA: Jet, zB: Jet, branch: int, strict: bool = True) -> DyadSolution:
    """Direction of bar ``AC`` and the derivatives of its angle.

    ``branch`` (+1 or -1) picks the assembly variant.  At stretched or folded
    poses the derivative denominators vanish: ``strict`` raises
    :class:`StretchedSingular`, otherwise the derivatives come back NaN with
    ``singular`` set.
    """
    if not (l1 > 0 and l2 > 0):
        raise DomainError("bar lengths must be positive")
    if branch not in (1, -1):
        raise DomainError("branch must be +1 or -1")
    (h, h1, h2, h3), (c, c1, c2, c3) = _dyad_terms(l1, l2, zA, zB)
    hh = abs(h) ** 2
    disc = hh - c * c
    if hh == 0.0:
        raise Unassemblable("guide points coincide")
    if disc < 0.0:
        if disc < -1e-12 * hh:
            raise Unassemblable(f"dyad cannot close (|h|^2 - c^2 = {disc:.6g})")
        disc = 0.0
    unit = (-c + branch * 1j * math.sqrt(disc)) / h.conjugate()
    unit /= abs(unit)
    phi1 = cmath.phase(unit)
    den = qvp(h, unit)
    if abs(den) < SINGULAR_TOL * abs(h):
        if strict:
            raise StretchedSingular("dyad is stretched or folded; angle derivatives are unbounded")
        return DyadSolution(unit, phi1, math.nan, math.nan, math.nan, True)
    d1 = (sp(h1, unit) + c1) / den
    d2 = (sp(h2 - d1 * d1 * h, unit) - 2.0 * d1 * qvp(h1, unit) + c2) / den
    d3 = (sp(h3 - 3.0 * d1 * d1 * h1 - 3.0 * d1 * d2 * h, unit)
          - qvp(3.0 * d1 * h2 + 3.0 * d2 * h1 - d1**3 * h, unit) + c3) / den
    return DyadSolution(complex(unit), float(phi1), float(d1), float(d2), float(d3))


def dyad_unit_law_of_cosines(l1: float, l2: float, zA: complex, zB: complex, branch: int) -> complex:
    """Same joint direction via the angle at ``A`` from the law of cosines."""
    zab = zB - zA
    dist = abs(zab)
    if dist == 0.0:
        raise Unassemblable("guide points coincide")
    cos_a = (l1 * l1 - l2 * l2 + dist * dist) / (2.0 * l1 * dist)
    if abs(cos_a) > 1.0 + 1e-12:
        raise Unassemblable("dyad cannot close")
    cos_a = max(-1.0, min(1.0, cos_a))
    return zab / dist * complex(cos_a, branch * math.sqrt(1.0 - cos_a * cos_a))


def dyad_joint(l1: float, zA: complex, sol: DyadSolution) -> complex:
    return zA + l1 * sol.unit


def dyad_units_batch(l1: float, l2: float, zA, zB, branch: int) -> tuple[np.ndarray, np.ndarray]:
    """Joint directions for arrays of guide positions (no derivatives)."""
    return kernels.dyad_units(zA, zB, l1, l2, branch)


def unwrap_angles(phis: Sequence[float]) -> np.ndarray:
    """Nearest-continuation unwrapping of an angle trace."""
    return np.unwrap(np.asarray(phis, dtype=float))


# ---- five-bar --------------------------------------------------------------


@dataclass(frozen=True)
class FiveBarConfig:
    """Five-bar linkage with coupled cranks.

    Crank 2 (length ``l2``) turns about the origin by ``phi``; crank 5 turns
    about ``l1 e^{i frame_angle}`` by ``psi(phi)``.  The coupler point K sits
    on bar 3 at distance ``l6`` and angle ``delta`` from joint A.
    """

    l1: float
    frame_angle: float
    l2: float
    l3: float
    l4: float
    l5: float
    l6: float
    delta: float
    psi: MotionLaw | AffineLaw
    branch: int = 1

    def __post_init__(self):
        for name in ("l1", "l2", "l3", "l4", "l5"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if self.l6 < 0:
            raise DomainError("l6 must be non-negative")


def _fivebar_dyad(cfg: FiveBarConfig, phi: float) -> tuple[Jet, DyadSolution]:
    zA = crank_jet(0j, cfg.l2, phi)
    p, p1, p2, p3 = cfg.psi.derivs(phi)
    e = cfg.l5 * cmath.exp(1j * p)
    zB = (
        cfg.l1 * cmath.exp(1j * cfg.frame_angle) + e,
        1j * p1 * e,
        (1j * p2 - p1 * p1) * e,
        (1j * p3 - 3.0 * p1 * p2 - 1j * p1**3) * e,
    )
    return zA, solve_dyad(cfg.l3, cfg.l4, zA, zB, cfg.branch)


def fivebar_coupler(cfg: FiveBarConfig, phi: float) -> Jet:
    """``(zK, zK', zK'', zK''')`` at crank angle ``phi``."""
    zA, sol = _fivebar_dyad(cfg, phi)
    arm = cfg.l6 * cmath.exp(1j * cfg.delta)
    rot = rotor_jet(sol.unit, sol.d1, sol.d2, sol.d3)
    return tuple(a + arm * r for a, r in zip(zA, rot))  # type: ignore[return-value]


def fivebar_curve(cfg: FiveBarConfig) -> ParametricCurve:
    knots = tuple(getattr(cfg.psi, "knots", ()))
    return ParametricCurve(
        lambda t: fivebar_coupler(cfg, t)[0],
        lambda t: fivebar_coupler(cfg, t)[1],
        lambda t: fivebar_coupler(cfg, t)[2],
        lambda t: fivebar_coupler(cfg, t)[3],
        (0.0, TWO_PI), True, knots, name="five-bar coupler curve",
    )


def fivebar_curve_fast(cfg: FiveBarConfig, phis) -> np.ndarray:
    """Coupler points for an array of angles through the batch dyad kernel."""
    phis = np.asarray(phis, dtype=float)
    zA = cfg.l2 * np.exp(1j * phis)
    psi = np.array([cfg.psi(float(p)) for p in phis])
    zB = cfg.l1 * np.exp(1j * cfg.frame_angle) + cfg.l5 * np.exp(1j * psi)
    units, ok = kernels.dyad_units(zA, zB, cfg.l3, cfg.l4, cfg.branch)
    if not np.all(ok):
        raise Unassemblable(f"dyad cannot close at {int(np.count_nonzero(~ok))} sample(s)")
    return zA + cfg.l6 * np.exp(1j * cfg.delta) * units


@dataclass(frozen=True)
class LoopAreas:
    signed_total: float
    loops: tuple[Loop, ...]
    absolute_total: float
    crossings: tuple[SelfIntersection, ...]


def coupler_loop_areas(cfg: FiveBarConfig, crossings: Optional[Sequence[SelfIntersection]] = None,
                       tol: float = 1e-12) -> LoopAreas:
    """Signed total and per-loop areas of the coupler curve.

    Loops are ordered by the smallest parameter at which one of their arcs
    starts.
    """
    c = fivebar_curve(cfg)
    if crossings is None:
        crossings = self_intersections(c)
    loops = loop_decomposition(c, crossings, tol)
    signed = sum(lp.area for lp in loops)
    return LoopAreas(signed, tuple(loops), sum(abs(lp.area) for lp in loops), tuple(crossings))


def fivebar_area_integral(cfg: FiveBarConfig, tol: float = 1e-12) -> float:
    """Signed area from the reduced integrand ``l2^2 + l2 l6 (phi3'+1) <e^{i(phi-delta)}, e^{i phi3}> + l6^2 phi3'``."""
    from .numerics import integrate

    def integrand(phi):
        _, sol = _fivebar_dyad(cfg, phi)
        return 0.5 * (cfg.l2**2 + cfg.l2 * cfg.l6 * (sol.d1 + 1.0)
                      * sp(cmath.exp(1j * (phi - cfg.delta)), sol.unit) + cfg.l6**2 * sol.d1)

    return integrate(integrand, 0.0, TWO_PI, knots=tuple(getattr(cfg.psi, "knots", ())), tol=tol)


# ---- four-bar --------------------------------------------------------------


@dataclass(frozen=True)
class FourBarConfig:
    """Crank ``A0A`` (driven by ``phi``), coupler ``AB`` and rocker ``B0B``."""

    crank_pivot: complex
    crank_length: float
    coupler_length: float
    rocker_length: float
    rocker_pivot: complex
    branch: int = 1

    def __post_init__(self):
        if not (self.crank_length > 0 and self.coupler_length > 0 and self.rocker_length > 0):
            raise DomainError("bar lengths must be positive")


def fourbar_state(cfg: FourBarConfig, phi: float) -> tuple[Jet, DyadSolution]:
    zA = crank_jet(cfg.crank_pivot, cfg.crank_length, phi)
    sol = solve_dyad(cfg.coupler_length, cfg.rocker_length, zA, fixed_jet(cfg.rocker_pivot), cfg.branch)
    return zA, sol


def fourbar_motion(cfg: FourBarConfig):
    """Coupler plane as a moving frame: origin at A, angle of ``AB``."""
    from .motion import PlanarMotion

    def origin(phi):
        return fourbar_state(cfg, phi)[0]

    def angle(phi):
        sol = fourbar_state(cfg, phi)[1]
        return (sol.phi1, sol.d1, sol.d2, sol.d3)

    return PlanarMotion(origin, angle)


def fourbar_coupler_point(cfg: FourBarConfig, zeta: complex, phi: float) -> Jet:
    """Jet of the coupler point with frame coordinates ``zeta``."""
    zA, sol = fourbar_state(cfg, phi)
    rot = rotor_jet(sol.unit, sol.d1, sol.d2, sol.d3)
    return tuple(a + zeta * r for a, r in zip(zA, rot))  # type: ignore[return-value]


def fourbar_coupler_curve(cfg: FourBarConfig, zeta: complex,
                          domain: tuple[float, float] = (0.0, TWO_PI)) -> ParametricCurve:
    closed = abs(domain[1] - domain[0] - TWO_PI) < 1e-12
    return ParametricCurve(*(
        (lambda k: (lambda t: fourbar_coupler_point(cfg, zeta, t)[k]))(k) for k in range(4)
    ), domain=domain, closed=closed, name="four-bar coupler curve")
