"""Complex-plane primitives: products, lines, circles and triangle centers.

Points and vectors are plain Python ``complex`` values (or numpy complex
arrays for the vectorised helpers).  Two real bilinear forms do most of the
work:

* the scalar product ``<z1, z2> = Re(conj(z1) z2) = x1 x2 + y1 y2``
* the quasi vector product ``[z1, z2] = Im(conj(z1) z2) = x1 y2 - y1 x2``
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTriangle, DomainError, ParallelLines

Complex2 = complex

DEGENERACY_TOL = 1e-12


def _require_finite(*values) -> None:
    for v in values:
        if not np.all(np.isfinite(v)):
            raise DomainError(f"non-finite input {v!r}")


def scalar_product(z1, z2):
    """Return ``<z1, z2> = x1 x2 + y1 y2``; works elementwise on arrays."""
    _require_finite(z1, z2)
    return (np.conj(z1) * z2).real if isinstance(z1, np.ndarray) or isinstance(z2, np.ndarray) \
        else (z1.conjugate() * z2).real


def quasi_vector_product(z1, z2):
    """Return ``[z1, z2] = x1 y2 - y1 x2`` (signed parallelogram area)."""
    _require_finite(z1, z2)
    return (np.conj(z1) * z2).imag if isinstance(z1, np.ndarray) or isinstance(z2, np.ndarray) \
        else (z1.conjugate() * z2).imag


# short aliases used throughout the package; no finiteness check (hot paths)
def sp(z1, z2):
    return (np.conj(z1) * z2).real


def qvp(z1, z2):
    return (np.conj(z1) * z2).imag


def nested_qvp(z1: complex, z2: complex, z3: complex) -> float:
    """``[z1, [z2, z3]]`` with the inner real value read as a complex number."""
    return quasi_vector_product(complex(z1), complex(quasi_vector_product(z2, z3)))


def nested_qvp_expanded(z1: complex, z2: complex, z3: complex) -> float:
    """Real expansion ``<z1,z2> x3 - <z1,z3> x2`` of :func:`nested_qvp`."""
    return scalar_product(z1, z2) * z3.real - scalar_product(z1, z3) * z2.real


def normalize_angle(phi: float) -> float:
    """Map an angle to the principal interval (-pi, pi]."""
    a = math.remainder(phi, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    return a


def angle_between(z1: complex, z2: complex) -> float:
    """Unsigned angle in [0, pi] between two nonzero vectors."""
    _require_finite(z1, z2)
    if z1 == 0 or z2 == 0:
        raise DomainError("angle with the zero vector is undefined")
    return math.atan2(abs(quasi_vector_product(z1, z2)), scalar_product(z1, z2))


def directed_angle(z1: complex, z2: complex) -> float:
    """Signed angle in (-pi, pi] turning ``z1`` onto ``z2``."""
    _require_finite(z1, z2)
    return normalize_angle(math.atan2(quasi_vector_product(z1, z2), scalar_product(z1, z2)))


def projection(z: complex, onto: complex) -> complex:
    """Orthogonal projection of ``z`` on the direction of ``onto``."""
    _require_finite(z, onto)
    n2 = abs(onto) ** 2
    if n2 == 0:
        raise DomainError("projection onto the zero vector")
    return scalar_product(z, onto) / n2 * onto


@dataclass(frozen=True)
class Line:
    """Straight line stored in Hesse normal form ``<z, e^{i phi}> = a``.

    ``support`` is kept non-negative and ``normal_angle`` lies in (-pi, pi].
    The point-and-direction view is derived from it.
    """

    support: float
    normal_angle: float

    def __post_init__(self):
        _require_finite(self.support, self.normal_angle)
        a, phi = self.support, self.normal_angle
        if a < 0:
            a, phi = -a, phi + math.pi
        object.__setattr__(self, "support", float(a))
        object.__setattr__(self, "normal_angle", normalize_angle(phi))

    @classmethod
    def from_point_direction(cls, point: complex, direction: complex) -> "Line":
        _require_finite(point, direction)
        if abs(direction) == 0:
            raise DomainError("line direction must be nonzero")
        normal = -1j * direction / abs(direction)
        return cls(scalar_product(point, normal), cmath.phase(normal))

    @classmethod
    def through(cls, p: complex, q: complex) -> "Line":
        return cls.from_point_direction(p, q - p)

    @property
    def normal(self) -> complex:
        return cmath.exp(1j * self.normal_angle)

    @property
    def direction(self) -> complex:
        return 1j * self.normal

    @property
    def foot(self) -> complex:
        """Point of the line closest to the origin."""
        return self.support * self.normal

    def point(self, lam: float) -> complex:
        """Parametrisation ``(a + i lam) e^{i phi}``."""
        return (self.support + 1j * lam) * self.normal

    def bracket_constant(self) -> float:
        """Constant ``c`` of the form ``[z, t] = c`` with unit direction ``t``."""
        return quasi_vector_product(self.foot, self.direction)


def intersect_lines(g1: Line, g2: Line) -> complex:
    """Intersection of two lines via ``z = (c2 t1 - c1 t2) / [t1, t2]``."""
    t1, t2 = g1.direction, g2.direction
    c1, c2 = g1.bracket_constant(), g2.bracket_constant()
    den = quasi_vector_product(t1, t2)
    if abs(den) <= DEGENERACY_TOL * abs(t1) * abs(t2):
        raise ParallelLines("lines are parallel")
    return (c2 * t1 - c1 * t2) / den


def point_line_distance(z: complex, g: Line) -> float:
    """Signed distance; positive when ``z`` and the origin are on different sides."""
    _require_finite(z)
    return scalar_product(z, g.normal) - g.support


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        _require_finite(self.center, self.radius)
        if self.radius < 0:
            raise DomainError("circle radius must be non-negative")

    def contains(self, z: complex, tol: float = 1e-9) -> bool:
        return abs(abs(z - self.center) - self.radius) <= tol * max(1.0, self.radius)


def _triangle_check(z1: complex, z2: complex) -> float:
    _require_finite(z1, z2)
    area2 = quasi_vector_product(z1, z2)
    if abs(area2) <= DEGENERACY_TOL * abs(z1) * abs(z2) or z1 == 0 or z2 == 0:
        raise DegenerateTriangle("points are collinear")
    return area2


def circumcircle(z1: complex, z2: complex, origin: complex = 0j) -> Circle:
    """Circle through ``origin``, ``z1`` and ``z2``."""
    a, b = z1 - origin, z2 - origin
    area2 = _triangle_check(a, b)
    center = 1j * (a * abs(b) ** 2 - b * abs(a) ** 2) / (2.0 * area2)
    return Circle(center + origin, abs(center))


def incircle(z1: complex, z2: complex, origin: complex = 0j) -> Circle:
    """Inscribed circle of the triangle ``origin``, ``z1``, ``z2``."""
    a, b = z1 - origin, z2 - origin
    area2 = _triangle_check(a, b)
    la, lb, lc = abs(a), abs(b), abs(b - a)
    perimeter = la + lb + lc
    center = (a * lb + b * la) / perimeter
    return Circle(center + origin, abs(area2) / perimeter)


def inscribed_angle_residuals(z: complex, z1: complex, z2: complex, gamma: float) -> tuple[float, float]:
    """Residuals ``[(z-z1) e^{i gamma}, z-z2]`` and ``[z-z1, (z-z2) e^{i gamma}]``.

    Each vanishes on one circle through ``z1`` and ``z2`` whose chord is seen
    under the angle ``gamma``; only the predicate form is provided.
    """
    rot = cmath.exp(1j * gamma)
    return (
        quasi_vector_product((z - z1) * rot, z - z2),
        quasi_vector_product(z - z1, (z - z2) * rot),
    )


def law_of_cosines_side(b: float, c: float, alpha: float) -> float:
    """Side opposite the angle ``alpha`` enclosed by sides ``b`` and ``c``."""
    return math.sqrt(max(b * b + c * c - 2.0 * b * c * math.cos(alpha), 0.0))


def rotor_jet(unit: complex, d1: float, d2: float, d3: float) -> tuple[complex, complex, complex, complex]:
    """``e^{i theta}`` and its first three derivatives from ``theta'``, ``theta''``, ``theta'''``."""
    return (
        unit,
        1j * d1 * unit,
        (1j * d2 - d1 * d1) * unit,
        (1j * d3 - 3.0 * d1 * d2 - 1j * d1**3) * unit,
    )
