"""Parametric plane curves and their differential geometry.

A curve is a map ``t -> z(t)`` into the complex plane with up to three
analytic derivatives.  Missing derivatives fall back to Richardson-refined
central differences; such curves report ``reduced_accuracy``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .errors import NoBracket, NotClosed, SingularPoint
from .geom_core import qvp, sp
from .numerics import find_root_1d, find_root_2d, integrate

TWO_PI = 2.0 * math.pi
DEFAULT_SAMPLES = 2048
# samples sit at (k + SAMPLE_OFFSET) * h so symmetric features never land on a node
SAMPLE_OFFSET = 0.37


def _fd(fn: Callable, t: float, scale: float) -> complex:
    # Richardson-extrapolated central difference is fourth order, so eps**(1/5)
    # balances truncation against roundoff; nested calls stay near 1e-9
    h = np.finfo(float).eps ** 0.2 * scale
    d_h = (fn(t + h) - fn(t - h)) / (2 * h)
    d_h2 = (fn(t + h / 2) - fn(t - h / 2)) / h
    return (4 * d_h2 - d_h) / 3


@dataclass(frozen=True)
class ParametricCurve:
    """Evaluable curve with optional analytic derivatives.

    ``func`` and the derivative callables take a real parameter; when
    ``vectorized`` is set they also accept numpy arrays.
    """

    func: Callable
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    d3: Optional[Callable] = None
    domain: tuple[float, float] = (0.0, TWO_PI)
    closed: bool = False
    knots: tuple[float, ...] = ()
    vectorized: bool = False
    name: str = ""

    def __call__(self, t):
        return self.func(t)

    @property
    def period(self) -> float:
        return self.domain[1] - self.domain[0]

    @property
    def reduced_accuracy(self) -> bool:
        return self.d1 is None or self.d2 is None or self.d3 is None

    def derivative(self, t: float, order: int = 1) -> complex:
        if order == 0:
            return complex(self.func(t))
        analytic = (self.d1, self.d2, self.d3)[order - 1]
        if analytic is not None:
            return complex(analytic(t))
        lower = lambda s: self.derivative(s, order - 1)  # noqa: E731
        return complex(_fd(lower, t, max(1.0, abs(t))))

    def jet(self, t: float) -> tuple[complex, complex, complex, complex]:
        return tuple(self.derivative(t, k) for k in range(4))  # type: ignore[return-value]

    def points(self, ts, order: int = 0) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        fn = self.func if order == 0 else (self.d1, self.d2, self.d3)[order - 1]
        if self.vectorized and fn is not None:
            return np.broadcast_to(np.asarray(fn(ts), dtype=complex), ts.shape).copy()
        return np.array([self.derivative(float(t), order) for t in ts.ravel()], dtype=complex).reshape(ts.shape)

    def sample_params(self, n: int = DEFAULT_SAMPLES, offset: float = 0.0) -> np.ndarray:
        t0, t1 = self.domain
        if self.closed:
            return t0 + (np.arange(n) + offset) * (self.period / n)
        return np.linspace(t0, t1, n)

    def sample(self, n: int = DEFAULT_SAMPLES) -> tuple[np.ndarray, np.ndarray]:
        ts = self.sample_params(n)
        return ts, self.points(ts)

    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.points(self.sample_params(64))))))

    def inner_knots(self) -> tuple[float, ...]:
        t0, t1 = self.domain
        return tuple(k for k in self.knots if t0 < k < t1)

    def check_closed(self, tol: float = 1e-9) -> bool:
        t0, t1 = self.domain
        return abs(self.func(t1) - self.func(t0)) <= tol * self.scale()

    def reversed(self) -> "ParametricCurve":
        """Same trace with opposite orientation, ``t -> t0 + t1 - t``."""
        t0, t1 = self.domain
        s = t0 + t1
        f, d1, d2, d3 = self.func, self.d1, self.d2, self.d3
        return replace(
            self,
            func=lambda t: f(s - t),
            d1=None if d1 is None else (lambda t: -d1(s - t)),
            d2=None if d2 is None else (lambda t: d2(s - t)),
            d3=None if d3 is None else (lambda t: -d3(s - t)),
            knots=tuple(sorted(s - k for k in self.knots)),
            name=f"{self.name} reversed".strip(),
        )

    def restricted(self, a: float, b: float) -> "ParametricCurve":
        return replace(self, domain=(a, b), closed=False)


@dataclass(frozen=True)
class OsculatingCircle:
    center: complex
    radius: float
    curvature: float


# ---- metrics ---------------------------------------------------------------


def _split_points(c: ParametricCurve, a: float, b: float) -> list[float]:
    lo, hi = min(a, b), max(a, b)
    return [k for k in c.knots if lo < k < hi]


def sector_area(c: ParametricCurve, a: float, b: float, tol: float = 1e-12) -> float:
    """``1/2 * integral of [z, z'] dt`` over ``[a, b]`` (no closedness needed)."""
    integrand = lambda t: 0.5 * qvp(c.derivative(t, 0), c.derivative(t, 1))  # noqa: E731
    return integrate(integrand, a, b, knots=_split_points(c, a, b), tol=tol)


def enclosed_area(c: ParametricCurve, tol: float = 1e-12) -> float:
    """Signed area; a self-intersecting curve gives the signed sum of its loops."""
    if not c.closed:
        raise NotClosed("enclosed area needs a closed curve")
    return sector_area(c, *c.domain, tol=tol)


def arc_length(c: ParametricCurve, t0: Optional[float] = None, t1: Optional[float] = None,
               tol: float = 1e-12) -> float:
    a = c.domain[0] if t0 is None else t0
    b = c.domain[1] if t1 is None else t1
    return integrate(lambda t: abs(c.derivative(t, 1)), a, b, knots=_split_points(c, a, b), tol=tol)


def _regular_speed(z1: complex, z: complex) -> float:
    speed = abs(z1)
    if speed <= 1e-12 * max(1.0, abs(z)):
        raise SingularPoint(f"curve is not regular here (|z'| = {speed:.3g})")
    return speed


def curvature(c: ParametricCurve, t: float) -> tuple[float, Optional[OsculatingCircle]]:
    """Oriented curvature and osculating circle; the circle is None where kappa = 0."""
    z, z1, z2, _ = (c.derivative(t, k) for k in range(4))
    speed = _regular_speed(z1, z)
    kappa = qvp(z1, z2) / speed**3
    if kappa == 0.0:
        return 0.0, None
    center = z + 1j / kappa * z1 / speed
    return kappa, OsculatingCircle(center, 1.0 / abs(kappa), kappa)


def curvature_values(c: ParametricCurve, ts) -> np.ndarray:
    z1, z2 = c.points(ts, 1), c.points(ts, 2)
    return qvp(z1, z2) / np.abs(z1) ** 3


def kappa_prime_numerator(z1, z2, z3):
    """Sign-carrying numerator of d(kappa)/dt; divide by ``|z'|^5``."""
    return np.abs(z1) ** 2 * qvp(z1, z3) - 3.0 * qvp(z1, z2) * sp(z1, z2)


def kappa_prime(c: ParametricCurve, t: float) -> float:
    z, z1, z2, z3 = c.jet(t)
    speed = _regular_speed(z1, z)
    return float(kappa_prime_numerator(z1, z2, z3)) / speed**5


def unit_tangent(c: ParametricCurve, t: float) -> complex:
    z1 = c.derivative(t, 1)
    return z1 / _regular_speed(z1, c.derivative(t, 0))


# ---- derived curves --------------------------------------------------------


def evolute(c: ParametricCurve) -> ParametricCurve:
    """Locus of curvature centres; points with kappa = 0 or |z'| = 0 come out as NaN."""

    def centre(t):
        z, z1, z2 = c.derivative(t, 0), c.derivative(t, 1), c.derivative(t, 2)
        cross = qvp(z1, z2)
        if cross == 0.0 or z1 == 0:
            return complex(math.nan, math.nan)
        return z + 1j * z1 * abs(z1) ** 2 / cross

    def centre_d1(t):
        z, z1, z2, z3 = c.jet(t)
        cross = qvp(z1, z2)
        if cross == 0.0 or z1 == 0:
            return complex(math.nan, math.nan)
        speed = abs(z1)
        kappa = cross / speed**3
        dk = float(kappa_prime_numerator(z1, z2, z3)) / speed**5
        # d/dt of (i/kappa) T is -(kappa'/kappa^2) i T since T' = kappa |z'| i T
        return -dk / kappa**2 * 1j * z1 / speed

    return ParametricCurve(centre, centre_d1, None, None, c.domain, c.closed, c.knots,
                           name=f"evolute of {c.name}".strip())


def is_singular_sample(z: complex) -> bool:
    return not np.isfinite(z)


def involute(c: ParametricCurve, start: float) -> ParametricCurve:
    """Involute unwound from ``c(start)``: ``z - T * s(start, t)``."""

    def point(t):
        z1 = c.derivative(t, 1)
        tangent = z1 / _regular_speed(z1, c.derivative(t, 0))
        return c.derivative(t, 0) - tangent * arc_length(c, start, t)

    def point_d1(t):
        z1, z2 = c.derivative(t, 1), c.derivative(t, 2)
        speed = _regular_speed(z1, c.derivative(t, 0))
        kappa = qvp(z1, z2) / speed**3
        return -kappa * speed * 1j * (z1 / speed) * arc_length(c, start, t)

    return ParametricCurve(point, point_d1, None, None, c.domain, False, c.knots,
                           name=f"involute of {c.name}".strip())


def parallel_curve(c: ParametricCurve, offset: float) -> ParametricCurve:
    """Offset by ``offset`` along the left normal ``i T``."""

    def point(t):
        z, z1 = c.derivative(t, 0), c.derivative(t, 1)
        return z + 1j * offset * z1 / _regular_speed(z1, z)

    def point_d1(t):
        z1, z2 = c.derivative(t, 1), c.derivative(t, 2)
        kappa = qvp(z1, z2) / abs(z1) ** 3
        return z1 * (1.0 - offset * kappa)

    def point_d2(t):
        z, z1, z2, z3 = c.jet(t)
        speed = _regular_speed(z1, z)
        kappa = qvp(z1, z2) / speed**3
        dk = float(kappa_prime_numerator(z1, z2, z3)) / speed**5
        return z2 * (1.0 - offset * kappa) - offset * dk * z1

    return ParametricCurve(point, point_d1, point_d2, None, c.domain, c.closed, c.knots,
                           name=f"parallel of {c.name}".strip())


# ---- critical points and crossings -----------------------------------------


@dataclass(frozen=True)
class CriticalPoints:
    vertices: tuple[float, ...]
    inflections: tuple[float, ...]


def _sign_change_roots(fn: Callable[[float], float], ts: np.ndarray, values: np.ndarray,
                       wrap: Optional[float]) -> list[float]:
    roots = []
    pairs = [(ts[k], ts[k + 1], values[k], values[k + 1]) for k in range(len(ts) - 1)]
    if wrap is not None:
        pairs.append((ts[-1], ts[0] + wrap, values[-1], values[0]))
    for a, b, fa, fb in pairs:
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0.0:
            try:
                roots.append(find_root_1d(fn, (a, b)))
            except NoBracket:
                continue
    return roots


def _dedupe_params(values: Sequence[float], domain: tuple[float, float], closed: bool,
                   tol: float) -> tuple[float, ...]:
    t0, t1 = domain
    period = t1 - t0
    out: list[float] = []
    for v in values:
        if closed:
            v = t0 + (v - t0) % period
        if all(min(abs(v - w), period - abs(v - w) if closed else math.inf) > tol for w in out):
            out.append(v)
    return tuple(sorted(out))


def critical_points(c: ParametricCurve, samples: int = DEFAULT_SAMPLES) -> CriticalPoints:
    """Vertices (zeros of kappa') and inflections (sign changes of kappa)."""
    ts = c.sample_params(samples, SAMPLE_OFFSET if c.closed else 0.0)
    z1, z2, z3 = c.points(ts, 1), c.points(ts, 2), c.points(ts, 3)
    cross = qvp(z1, z2)
    numer = kappa_prime_numerator(z1, z2, z3)
    wrap = c.period if c.closed else None
    tol = 1e-9 * c.period

    def cross_at(t):
        return qvp(c.derivative(t, 1), c.derivative(t, 2))

    def numer_at(t):
        _, a1, a2, a3 = c.jet(t)
        return float(kappa_prime_numerator(a1, a2, a3))

    inflections = _sign_change_roots(cross_at, ts, cross, wrap)
    # constant curvature (circles): kappa' is pure round-off noise, no vertices
    kappa = cross / np.abs(z1) ** 3
    dk = numer / np.abs(z1) ** 5
    if np.max(np.abs(dk)) <= 1e-9 * max(1.0, float(np.max(np.abs(kappa)))):
        vertices: list[float] = []
    else:
        vertices = _sign_change_roots(numer_at, ts, numer, wrap)
    return CriticalPoints(
        _dedupe_params(vertices, c.domain, c.closed, tol),
        _dedupe_params(inflections, c.domain, c.closed, tol),
    )


@dataclass(frozen=True)
class SelfIntersection:
    t_a: float
    t_b: float
    point: complex


def self_intersections(c: ParametricCurve, samples: int = DEFAULT_SAMPLES,
                       tol: float = 1e-12) -> list[SelfIntersection]:
    """Coarse polyline sweep followed by a 2-D Newton polish of ``z(ta) = z(tb)``."""
    ts = c.sample_params(samples, SAMPLE_OFFSET if c.closed else 0.0)
    zs = c.points(ts)
    hits = kernels.polyline_crossings(zs.real, zs.imag, c.closed)
    n = len(ts)
    step = c.period / samples if c.closed else (ts[1] - ts[0])
    scale = c.scale()

    def residual(p):
        d = c.derivative(p[0], 0) - c.derivative(p[1], 0)
        return np.array([d.real, d.imag]) / scale

    found: list[SelfIntersection] = []
    t0, t1 = c.domain
    for i, j, s, u in hits:
        guess = (ts[int(i)] + s * step, ts[int(j)] + u * step)
        if not c.closed and int(j) == n - 1:
            guess = (guess[0], min(guess[1], t1))
        try:
            ta, tb = find_root_2d(residual, guess, tol=tol)
        except Exception:
            ta, tb = guess
        if c.closed:
            ta, tb = t0 + (ta - t0) % c.period, t0 + (tb - t0) % c.period
        if ta > tb:
            ta, tb = tb, ta
        gap = min(abs(tb - ta), c.period - abs(tb - ta)) if c.closed else abs(tb - ta)
        if gap < 1e-6 * c.period:
            continue
        if any(abs(ta - f.t_a) < 1e-8 * c.period and abs(tb - f.t_b) < 1e-8 * c.period for f in found):
            continue
        found.append(SelfIntersection(float(ta), float(tb), complex(c.derivative(ta, 0))))
    return sorted(found, key=lambda f: f.t_a)


@dataclass(frozen=True)
class Loop:
    arcs: tuple[tuple[float, float], ...]
    area: float


def loop_decomposition(c: ParametricCurve, crossings: Optional[Sequence[SelfIntersection]] = None,
                       tol: float = 1e-12) -> list[Loop]:
    """Split a closed curve into loops at its self-intersections.

    The crossing parameters cut the curve into arcs.  A loop follows an arc
    to its end crossing, jumps to that crossing's partner parameter and
    continues until it returns to its start.
    """
    if not c.closed:
        raise NotClosed("loop decomposition needs a closed curve")
    if crossings is None:
        crossings = self_intersections(c)
    t0, period = c.domain[0], c.period
    if not crossings:
        return [Loop(((t0, t0 + period),), enclosed_area(c, tol))]
    partner: dict[float, float] = {}
    for x in crossings:
        partner[x.t_a] = x.t_b
        partner[x.t_b] = x.t_a
    cuts = sorted(partner)
    nxt = {cuts[k]: (cuts[(k + 1) % len(cuts)], k + 1 == len(cuts)) for k in range(len(cuts))}
    used: set[float] = set()
    loops: list[Loop] = []
    for start in cuts:
        if start in used:
            continue
        arcs, area, cur = [], 0.0, start
        while cur not in used:
            used.add(cur)
            end, wraps = nxt[cur]
            stop = end + period if wraps else end
            arcs.append((cur, stop))
            area += sector_area(c, cur, stop, tol)
            cur = partner[end]
        loops.append(Loop(tuple(arcs), area))
    return sorted(loops, key=lambda lp: min(a for a, _ in lp.arcs))


def export_csv(c: ParametricCurve, path, samples: int = 512) -> None:
    """Write ``t, x, y, kappa`` rows; kappa is blank where undefined."""
    ts = c.sample_params(samples)
    zs = c.points(ts)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "x", "y", "kappa"])
        for t, z in zip(ts, zs):
            try:
                k = repr(curvature(c, float(t))[0])
            except SingularPoint:
                k = ""
            w.writerow([repr(float(t)), repr(z.real), repr(z.imag), k])


# ---- builders --------------------------------------------------------------


def circle(radius: float, center: complex = 0j) -> ParametricCurve:
    return epicycles([(radius, 1)], offset=center, name="circle")


def ellipse(a: float, b: float) -> ParametricCurve:
    """``a cos t + i b sin t``."""
    return ParametricCurve(
        lambda t: a * np.cos(t) + 1j * b * np.sin(t),
        lambda t: -a * np.sin(t) + 1j * b * np.cos(t),
        lambda t: -a * np.cos(t) - 1j * b * np.sin(t),
        lambda t: a * np.sin(t) - 1j * b * np.cos(t),
        (0.0, TWO_PI), True, vectorized=True, name="ellipse",
    )


def epicycles(terms: Sequence[tuple[complex, float]], offset: complex = 0j,
              name: str = "epicycles") -> ParametricCurve:
    """Finite sum ``offset + sum(c_k e^{i n_k t})`` with integer or real ``n_k``."""
    coeffs = np.array([complex(c) for c, _ in terms])
    freqs = np.array([float(n) for _, n in terms])

    def make(order):
        factor = coeffs * (1j * freqs) ** order

        def fn(t):
            t_arr = np.asarray(t, dtype=float)
            val = np.sum(factor * np.exp(1j * np.multiply.outer(t_arr, freqs)), axis=-1)
            val = val + (offset if order == 0 else 0)
            return complex(val) if np.ndim(val) == 0 else val

        return fn

    closed = bool(np.all(np.abs(freqs - np.round(freqs)) < 1e-15))
    return ParametricCurve(make(0), make(1), make(2), make(3), (0.0, TWO_PI), closed,
                           vectorized=True, name=name)


def gerono(a: float = 1.0) -> ParametricCurve:
    """Figure-eight ``a (cos t + i sin(2t)/2)``."""
    return epicycles(
        [(a / 2, 1), (a / 2, -1), (a / 4, 2), (-a / 4, -2)], name="gerono lemniscate"
    )


def limacon(inner: float = 1.0, outer: float = -1.0) -> ParametricCurve:
    """``inner e^{it} + outer e^{2it}``; defaults give ``e^{it} - e^{2it}``."""
    return epicycles([(inner, 1), (outer, 2)], name="limacon")


def circle_involute(radius: float, cusp_angle: float = 0.0, domain=(0.0, TWO_PI)) -> ParametricCurve:
    """``r (1 - i t) e^{i (t + alpha)}`` unwound from ``r e^{i alpha}``."""
    rot = np.exp(1j * cusp_angle)
    return ParametricCurve(
        lambda t: radius * (1 - 1j * t) * np.exp(1j * t) * rot,
        lambda t: radius * t * np.exp(1j * t) * rot,
        lambda t: radius * (1 + 1j * t) * np.exp(1j * t) * rot,
        lambda t: radius * (2j - t) * np.exp(1j * t) * rot,
        domain, False, vectorized=True, name="circle involute",
    )
