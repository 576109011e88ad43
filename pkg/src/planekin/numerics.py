"""Numerical toolbox: quadrature, root finding, derivative checks and motion laws.

Quadrature and 1D root finding delegate to scipy (QUADPACK's adaptive
Gauss-Kronrod rule and Brent's bracketed method).  The 2D damped Newton
solver and the motion-law machinery are local.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate as _integrate
from scipy import optimize as _optimize
from scipy import special as _special

from .errors import BadPartition, DomainError, NoBracket, NoConvergence, SingularJacobian

TWO_PI = 2.0 * math.pi
DEFAULT_TOL = 1e-12
MAX_ITER = 200


# ---------------------------------------------------------------------------
# quadrature


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    knots: Iterable[float] = (),
    tol: float = 1e-12,
    rel_tol: float = 1e-13,
    limit: int = 400,
) -> float:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    The interval is split at every knot inside ``(a, b)`` so that piecewise
    smooth integrands are only ever integrated over smooth pieces.
    """
    if b < a:
        return -integrate(f, b, a, knots, tol, rel_tol, limit)
    if b == a:
        return 0.0
    cuts = sorted({float(k) for k in knots if a < k < b})
    edges = [a, *cuts, b]
    pieces = len(edges) - 1
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("error", _integrate.IntegrationWarning)
            try:
                val, _err = _integrate.quad(
                    f, lo, hi, epsabs=tol / pieces, epsrel=rel_tol, limit=limit
                )
            except _integrate.IntegrationWarning as exc:
                val = _accept_roundoff(f, lo, hi, tol / pieces, rel_tol, limit, exc)
        total += val
    return total


def _accept_roundoff(f, lo, hi, abs_tol, rel_tol, limit, exc) -> float:
    # quadpack flags roundoff when the tolerance sits at machine precision;
    # keep the value if its own error estimate is still negligible
    if "roundoff" not in str(exc):
        raise NoConvergence(f"quadrature on [{lo}, {hi}] did not converge: {exc}") from exc
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _integrate.IntegrationWarning)
        val, err = _integrate.quad(f, lo, hi, epsabs=abs_tol, epsrel=rel_tol, limit=limit)
    if err > max(1e3 * abs_tol, 1e-10 * abs(val)):
        raise NoConvergence(f"quadrature on [{lo}, {hi}] did not converge: {exc}") from exc
    return val


def integrate_complex(f: Callable[[float], complex], a: float, b: float, knots: Iterable[float] = (), tol: float = 1e-12) -> complex:
    knots = tuple(knots)
    re = integrate(lambda t: f(t).real, a, b, knots, tol)
    im = integrate(lambda t: f(t).imag, a, b, knots, tol)
    return complex(re, im)


# ---------------------------------------------------------------------------
# root finding


def find_root_1d(
    f: Callable[[float], float],
    bracket_or_guess,
    tol: float = DEFAULT_TOL,
    maxiter: int = MAX_ITER,
) -> float:
    """Root of a scalar function.

    ``bracket_or_guess`` is either a pair ``(lo, hi)`` with a sign change,
    solved by Brent's method (bisection-safeguarded secant / inverse quadratic
    interpolation), or a single starting value for a secant iteration.
    """
    if isinstance(bracket_or_guess, (tuple, list)) and len(bracket_or_guess) == 2:
        lo, hi = map(float, bracket_or_guess)
        flo, fhi = f(lo), f(hi)
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        if np.sign(flo) == np.sign(fhi):
            raise NoBracket(f"no sign change on [{lo}, {hi}]")
        try:
            return float(_optimize.brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=maxiter))
        except RuntimeError as exc:
            raise NoConvergence(str(exc)) from exc
    x0 = float(bracket_or_guess)
    try:
        root, info = _optimize.newton(f, x0, tol=tol, maxiter=maxiter, full_output=True, disp=False)
    except (RuntimeError, OverflowError, ZeroDivisionError) as exc:
        raise NoConvergence(str(exc)) from exc
    if not info.converged or not np.isfinite(root):
        raise NoConvergence(f"secant iteration from {x0} failed: {info.flag}")
    return float(root)


def find_root_2d(
    F: Callable[[np.ndarray], np.ndarray],
    guess: Sequence[float],
    tol: float = DEFAULT_TOL,
    maxiter: int = MAX_ITER,
) -> np.ndarray:
    """Damped Newton iteration for ``F(x) = 0`` with ``x`` in R^2.

    The Jacobian comes from central differences; each step is halved until
    the residual norm decreases.
    """
    x = np.asarray(guess, dtype=float).copy()
    fx = np.asarray(F(x), dtype=float)
    for _ in range(maxiter):
        norm = float(np.hypot(*fx))
        if norm < tol:
            return x
        J = np.empty((2, 2))
        for k in range(2):
            h = 1e-7 * max(1.0, abs(x[k]))
            e = np.zeros(2)
            e[k] = h
            J[:, k] = (np.asarray(F(x + e)) - np.asarray(F(x - e))) / (2 * h)
        det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        if not np.isfinite(det) or abs(det) <= 1e-14 * max(1.0, np.abs(J).max() ** 2):
            raise SingularJacobian(f"singular Jacobian at {x}")
        step = np.linalg.solve(J, -fx)
        damping = 1.0
        while True:
            trial = x + damping * step
            ft = np.asarray(F(trial), dtype=float)
            if np.all(np.isfinite(ft)) and np.hypot(*ft) < norm:
                break
            damping *= 0.5
            if damping < 1e-10:
                # no descent possible: accept if already at round-off level
                if norm < max(tol, 1e-9):
                    return x
                raise NoConvergence(f"line search failed at {x} (|F|={norm:.3e})")
        x, fx = trial, ft
        if np.hypot(*(damping * step)) < 1e-15 * max(1.0, np.hypot(*x)) and np.hypot(*fx) < max(tol, 1e-9):
            return x
    if float(np.hypot(*fx)) < max(tol, 1e-9):
        return x
    raise NoConvergence(f"no convergence after {maxiter} iterations (|F|={np.hypot(*fx):.3e})")


# ---------------------------------------------------------------------------
# derivative validation


def fd_check(
    f: Callable[[float], complex | float],
    fprime: Callable[[float], complex | float],
    samples: Iterable[float],
) -> float:
    """Largest relative deviation between ``fprime`` and a central difference of ``f``.

    The step is ``cbrt(eps) * max(1, |t|)``; the scale is ``max(1, |fprime(t)|)``.
    """
    h0 = np.cbrt(np.finfo(float).eps)
    worst = 0.0
    for t in samples:
        h = h0 * max(1.0, abs(t))
        fd = (f(t + h) - f(t - h)) / (2.0 * h)
        d = fprime(t)
        worst = max(worst, abs(d - fd) / max(1.0, abs(d)))
    return worst


# ---------------------------------------------------------------------------
# regularized incomplete beta and the motion-law primitives


def reg_inc_beta(x: float, p: float, q: float) -> float:
    """Regularized incomplete beta function ``I(x; p, q)``."""
    if not (0.0 <= x <= 1.0) or p <= 0 or q <= 0 or not all(map(math.isfinite, (x, p, q))):
        raise DomainError(f"reg_inc_beta undefined for x={x}, p={p}, q={q}")
    return float(_special.betainc(p, q, x))


def _falling(a: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= a - j
    return out


def _power_derivs(x: float, a: float, b: float, order: int) -> float:
    """``order``-th derivative of ``x^a (1-x)^b`` by the Leibniz rule."""
    total = 0.0
    for k in range(order + 1):
        fa = _falling(a, k)
        fb = _falling(b, order - k)
        if fa == 0.0 or fb == 0.0:
            continue
        term = math.comb(order, k) * fa * x ** (a - k) * fb * (1.0 - x) ** (b - (order - k))
        if order - k:
            term *= (-1) ** (order - k)
        total += term
    return total


def beta_rise(x: float, a: float, b: float) -> tuple[float, float, float, float]:
    """``f_{a,b}(x) = I(x; a+1, b+1)`` and its first three derivatives."""
    x = min(max(x, 0.0), 1.0)
    norm = 1.0 / _special.beta(a + 1.0, b + 1.0)
    return (
        reg_inc_beta(x, a + 1.0, b + 1.0),
        norm * _power_derivs(x, a, b, 0),
        norm * _power_derivs(x, a, b, 1),
        norm * _power_derivs(x, a, b, 2),
    )


def sine_rise(x: float, a: float) -> tuple[float, float, float, float]:
    """``g_a(x) = I(sin^2(pi x / 2); (a+1)/2, (a+1)/2)`` with three derivatives.

    Using ``s(1-s) = sin^2(pi x)/4`` the derivative collapses to
    ``C sin(pi x)^a`` with ``C = (pi/2) 4^{(1-a)/2} / B(p, p)``.
    """
    x = min(max(x, 0.0), 1.0)
    p = 0.5 * (a + 1.0)
    s = math.sin(0.5 * math.pi * x) ** 2
    c = 0.5 * math.pi * 4.0 ** ((1.0 - a) / 2.0) / _special.beta(p, p)
    sn, cs = math.sin(math.pi * x), math.cos(math.pi * x)
    sn = max(sn, 0.0)
    d1 = c * sn**a
    d2 = c * a * math.pi * sn ** (a - 1.0) * cs if a != 0 else 0.0
    if a == 0:
        d3 = 0.0
    elif a == 1:
        d3 = -c * math.pi**2 * sn
    else:
        d3 = c * a * math.pi**2 * ((a - 1.0) * sn ** (a - 2.0) * cs * cs - sn**a)
    return reg_inc_beta(s, p, p), d1, d2, d3


def sin4_lobe(x: float) -> tuple[float, float, float, float]:
    """``sin^4(pi x)`` on ``[0, 1]``: a symmetric rise and return with three derivatives."""
    w = math.pi
    # 3/8 - cos(2 pi x)/2 + cos(4 pi x)/8
    v = 0.375 - 0.5 * math.cos(2 * w * x) + 0.125 * math.cos(4 * w * x)
    d1 = w * math.sin(2 * w * x) - 0.5 * w * math.sin(4 * w * x)
    d2 = 2 * w * w * math.cos(2 * w * x) - 2 * w * w * math.cos(4 * w * x)
    d3 = -4 * w**3 * math.sin(2 * w * x) + 8 * w**3 * math.sin(4 * w * x)
    return v, d1, d2, d3


SEGMENT_KINDS = ("dwell", "rise_beta", "return_beta", "rise_sine", "return_sine", "sin4_lobe")


@dataclass(frozen=True)
class Segment:
    """One piece of a motion law.

    ``amplitude`` is the level change for rise/return kinds and the peak
    height for ``sin4_lobe``; ``params`` carries ``(a, b)`` for beta kinds and
    ``(a,)`` for sine kinds.
    """

    kind: str
    span: float
    amplitude: float = 0.0
    params: tuple = ()


def _segment_shape(seg: Segment, x: float) -> tuple[float, float, float, float]:
    if seg.kind in ("rise_beta", "return_beta"):
        a, b = seg.params
        v = beta_rise(x, a, b)
    elif seg.kind in ("rise_sine", "return_sine"):
        (a,) = seg.params
        v = sine_rise(x, a)
    elif seg.kind == "sin4_lobe":
        return sin4_lobe(x)
    else:
        return 0.0, 0.0, 0.0, 0.0
    return v


@dataclass(frozen=True)
class MotionLaw:
    """2π-periodic piecewise transfer function with derivatives to order 3.

    Rise and return segments move between levels; ``value`` is continuous
    and, with the shipped shapes, C² across every knot.
    """

    segments: tuple[Segment, ...]
    start_level: float = 0.0
    knots: tuple[float, ...] = field(init=False)
    _levels: tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        for s in self.segments:
            if s.kind not in SEGMENT_KINDS:
                raise BadPartition(f"unknown segment kind {s.kind!r}")
            if not s.span > 0:
                raise BadPartition("segment spans must be positive")
        total = sum(s.span for s in self.segments)
        if abs(total - TWO_PI) > 1e-9:
            raise BadPartition(f"segment spans sum to {total}, expected 2*pi")
        knots, levels, acc, level = [0.0], [], 0.0, self.start_level
        for s in self.segments:
            levels.append(level)
            if s.kind.startswith("rise"):
                level += s.amplitude
            elif s.kind.startswith("return"):
                level -= s.amplitude
            acc += s.span
            knots.append(acc)
        if abs(level - self.start_level) > 1e-12 * max(1.0, abs(level)):
            raise BadPartition("motion law does not return to its start level")
        knots[-1] = TWO_PI
        object.__setattr__(self, "knots", tuple(knots))
        object.__setattr__(self, "_levels", tuple(levels))

    def derivs(self, phi: float) -> tuple[float, float, float, float]:
        """``(value, d1, d2, d3)`` at ``phi`` (radians, any real)."""
        t = phi % TWO_PI
        idx = int(np.searchsorted(self.knots, t, side="right")) - 1
        idx = min(max(idx, 0), len(self.segments) - 1)
        seg = self.segments[idx]
        start = self.knots[idx]
        x = (t - start) / seg.span
        v, d1, d2, d3 = _segment_shape(seg, x)
        amp, w = seg.amplitude, seg.span
        base = self._levels[idx]
        if seg.kind == "dwell":
            return base, 0.0, 0.0, 0.0
        if seg.kind.startswith("return"):
            amp = -amp
        return base + amp * v, amp * d1 / w, amp * d2 / w**2, amp * d3 / w**3

    def __call__(self, phi: float) -> float:
        return self.derivs(phi)[0]

    def d1(self, phi: float) -> float:
        return self.derivs(phi)[1]

    def d2(self, phi: float) -> float:
        return self.derivs(phi)[2]

    def d3(self, phi: float) -> float:
        return self.derivs(phi)[3]

    def interior_knots(self) -> tuple[float, ...]:
        return self.knots[1:-1]

    def moving_intervals(self) -> list[tuple[float, float]]:
        """Parameter intervals of the non-dwell segments."""
        return [
            (self.knots[i], self.knots[i + 1])
            for i, s in enumerate(self.segments)
            if s.kind != "dwell"
        ]


@dataclass(frozen=True)
class AffineLaw:
    """``psi(phi) = slope * phi + offset`` (not periodic as a value)."""

    slope: float
    offset: float = 0.0
    knots: tuple[float, ...] = ()

    def derivs(self, phi: float) -> tuple[float, float, float, float]:
        return self.slope * phi + self.offset, self.slope, 0.0, 0.0

    def __call__(self, phi: float) -> float:
        return self.slope * phi + self.offset


def make_motion_law(segments: Sequence, start_level: float = 0.0) -> MotionLaw:
    """Build a :class:`MotionLaw` from ``(kind, span, amplitude[, params])`` tuples.

    Missing shape parameters default to ``(3, 2)`` for beta kinds and
    ``(3,)`` for sine kinds.
    """
    segs = []
    for item in segments:
        if isinstance(item, Segment):
            segs.append(item)
            continue
        kind, span, *rest = item
        amplitude = float(rest[0]) if rest else 0.0
        params = tuple(rest[1]) if len(rest) > 1 else ()
        if not params:
            if kind.endswith("beta"):
                params = (3.0, 2.0)
            elif kind.endswith("sine"):
                params = (3.0,)
        segs.append(Segment(kind, float(span), amplitude, params))
    return MotionLaw(tuple(segs), start_level)


def dwell_rise_dwell_return(amplitude: float) -> MotionLaw:
    """Law used by the flat-face and roller cam examples.

    Rise with ``f_{3,2}`` over 150°, dwell to 210°, return with ``g_3`` to
    330°, dwell to 360°.
    """
    pi = math.pi
    return make_motion_law(
        [
            ("rise_beta", 5 * pi / 6, amplitude, (3.0, 2.0)),
            ("dwell", pi / 3),
            ("return_sine", 2 * pi / 3, amplitude, (3.0,)),
            ("dwell", pi / 6),
        ]
    )


def swing_lobe_law(amplitude: float) -> MotionLaw:
    """Dwell for half a turn, then a ``sin^4`` rise-and-return lobe."""
    pi = math.pi
    return make_motion_law([("dwell", pi), ("sin4_lobe", pi, amplitude)])
