import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import fivebar_reference
from planekin.curve import (
    TWO_PI,
    ParametricCurve,
    arc_length,
    circle,
    circle_involute,
    critical_points,
    curvature,
    curvature_values,
    ellipse,
    enclosed_area,
    epicycles,
    evolute,
    export_csv,
    gerono,
    involute,
    is_singular_sample,
    kappa_prime,
    limacon,
    loop_decomposition,
    parallel_curve,
    sector_area,
    self_intersections,
    unit_tangent,
)
from planekin.errors import NotClosed, SingularPoint
from planekin.linkage import fivebar_curve
from planekin.numerics import fd_check

GERONO_LENGTH = 6.09722347010491604643


# ---- area and length -------------------------------------------------------


def test_unit_circle_area_and_length():
    c = circle(1.0)
    assert enclosed_area(c) == pytest.approx(math.pi, abs=1e-13)
    assert arc_length(c) == pytest.approx(TWO_PI, abs=1e-13)


def test_gerono_total_area_vanishes():
    assert abs(enclosed_area(gerono(1.0))) < 1e-10


def test_gerono_right_loop():
    assert sector_area(gerono(1.0), -math.pi / 2, math.pi / 2) == pytest.approx(2 / 3, abs=1e-10)


def test_gerono_length():
    assert arc_length(gerono(1.0)) == pytest.approx(GERONO_LENGTH, abs=1e-9)


def test_fivebar_length():
    assert arc_length(fivebar_curve(fivebar_reference())) == pytest.approx(289.414489645, abs=1e-6)


def test_open_curve_has_no_area():
    with pytest.raises(NotClosed):
        enclosed_area(circle_involute(1.0))


@given(st.floats(0.2, 5), st.floats(0.2, 5))
def test_ellipse_area_and_orientation_reversal(a, b):
    c = ellipse(a, b)
    area = enclosed_area(c)
    assert area == pytest.approx(math.pi * a * b, rel=1e-12)
    assert enclosed_area(c.reversed()) == pytest.approx(-area, rel=1e-12)


# ---- curvature -------------------------------------------------------------


@pytest.mark.parametrize("radius", [0.5, 1.0, 7.0])
def test_circle_curvature(radius):
    kappa, osc = curvature(circle(radius), 0.4)
    assert kappa == pytest.approx(1 / radius, rel=1e-13)
    assert abs(osc.center) < 1e-12
    assert osc.radius * abs(osc.curvature) == pytest.approx(1.0)


def test_ellipse_curvature_radii_extremes():
    c = ellipse(3.0, 2.0)
    assert 1 / curvature(c, 0.0)[0] == pytest.approx(4 / 9 * 3, abs=1e-10)
    assert 1 / curvature(c, math.pi / 2)[0] == pytest.approx(3 / 2 * 3, abs=1e-10)


def test_gerono_curvature_formula():
    c = gerono(1.0)
    for t in np.linspace(0.1, 6.2, 40):
        closed = (3 * math.cos(t) - math.cos(3 * t)) / (2 * (math.cos(2 * t) ** 2 + math.sin(t) ** 2) ** 1.5)
        assert curvature(c, t)[0] == pytest.approx(closed, abs=1e-12)


def test_limacon_curvature_formula():
    c = limacon()
    for t in np.linspace(0.1, 6.2, 40):
        closed = (9 - 6 * math.cos(t)) / (5 - 4 * math.cos(t)) ** 1.5
        assert curvature(c, t)[0] == pytest.approx(closed, abs=1e-12)


def test_curvature_real_form(rng):
    c = epicycles([(1.0, 1), (0.3 - 0.2j, -2), (0.1j, 3)])
    for t in rng.uniform(0, TWO_PI, 50):
        z1, z2 = c.derivative(t, 1), c.derivative(t, 2)
        x1, y1, x2, y2 = z1.real, z1.imag, z2.real, z2.imag
        real_form = (x1 * y2 - y1 * x2) / (x1 * x1 + y1 * y1) ** 1.5
        assert curvature(c, t)[0] == pytest.approx(real_form, abs=1e-12)


def test_singular_point_raises():
    cusp = circle_involute(1.0)
    with pytest.raises(SingularPoint):
        curvature(cusp, 0.0)


def test_curvature_reverses_with_orientation():
    c = epicycles([(1.0, 1), (0.25, -2)])
    r = c.reversed()
    for t in np.linspace(0.1, 6, 13):
        assert curvature(r, TWO_PI - t)[0] == pytest.approx(-curvature(c, t)[0], abs=1e-12)


def test_curvature_values_vectorised():
    c = ellipse(3, 2)
    ts = np.linspace(0, 6, 7)
    assert np.allclose(curvature_values(c, ts), [curvature(c, t)[0] for t in ts], atol=1e-14)


random_terms = st.lists(
    st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.integers(-4, 4)), min_size=1, max_size=4
)


@given(random_terms)
def test_frenet_lemma(terms):
    c = epicycles([(1.0, 1)] + [(complex(a, b), n) for a, b, n in terms])
    for t in c.sample_params(16, 0.3):
        z1, z2 = c.derivative(t, 1), c.derivative(t, 2)
        speed = abs(z1)
        if speed < 0.05:
            continue  # cusp: the tangent is undefined
        # quotient rule for d/dt (z'/|z'|), no curvature involved
        tangent_rate = z2 / speed - z1 * (z1.conjugate() * z2).real / speed**3
        rhs = curvature(c, t)[0] * speed * 1j * unit_tangent(c, t)
        assert abs(tangent_rate - rhs) < 1e-10 * max(1.0, abs(rhs))


@pytest.mark.parametrize("curve", [ellipse(3, 2), gerono(1.0), limacon(), epicycles([(1, 1), (0.2j, 4)])])
def test_analytic_derivatives_pass_fd_check(curve):
    ts = curve.sample_params(40, 0.21)
    for k in range(3):
        lo = (lambda o: (lambda t: curve.derivative(t, o)))(k)
        hi = (lambda o: (lambda t: curve.derivative(t, o + 1)))(k)
        assert fd_check(lo, hi, ts) < 1e-6


def test_kappa_prime_against_fd():
    c = ellipse(3, 2)
    ts = np.linspace(0.1, 6, 20)
    assert fd_check(lambda t: curvature(c, t)[0], lambda t: kappa_prime(c, t), ts) < 1e-6


def test_missing_derivatives_fall_back_to_differences():
    c = ParametricCurve(lambda t: 3 * math.cos(t) + 2j * math.sin(t), closed=True)
    assert c.reduced_accuracy
    assert curvature(c, 0.0)[0] == pytest.approx(3 / 4, rel=1e-6)


# ---- evolute, involute, parallel --------------------------------------------


def test_ellipse_evolute_closed_form():
    a, b = 3.0, 2.0
    ev = evolute(ellipse(a, b))
    for t in np.linspace(0, TWO_PI, 37):
        closed = (a * a - b * b) / a * math.cos(t) ** 3 + 1j * (b * b - a * a) / b * math.sin(t) ** 3
        assert abs(ev(t) - closed) < 1e-10


def test_circle_evolute_is_centre():
    ev = evolute(circle(2.0, 1 + 1j))
    for t in np.linspace(0, 6, 7):
        assert abs(ev(t) - (1 + 1j)) < 1e-12


def test_evolute_marks_inflections():
    c = fivebar_curve(fivebar_reference())
    t = critical_points(c).inflections[0]
    assert abs(curvature(c, t)[0]) < 1e-9
    assert is_singular_sample(complex(math.nan, 0))


def test_limacon_evolute_samples_finite():
    ev = evolute(limacon())
    pts = ev.points(np.linspace(0.1, 6.1, 50))
    assert np.all(np.isfinite(pts))


@pytest.mark.parametrize("alpha", [0.0, 0.7])
def test_circle_involute_closed_form(alpha):
    r = 1.5
    inv = involute(circle(r).restricted(alpha, alpha + 5.0), alpha)
    for phi in np.linspace(0.0, 4.5, 10):
        closed = r * (1 - 1j * phi) * np.exp(1j * (phi + alpha))
        assert abs(inv(alpha + phi) - closed) < 1e-11
        assert abs(circle_involute(r, alpha)(phi) - closed) < 1e-12


@pytest.mark.parametrize("curve,arc", [(ellipse(3, 2), (0.1, 1.4)), (circle(1.0), (0.0, 3.0))])
def test_evolute_of_involute_is_the_curve(curve, arc):
    inv = involute(curve, arc[0] - 0.3)
    ev = evolute(inv)
    for t in np.linspace(*arc, 15):
        assert abs(ev(t) - curve(t)) < 1e-8


def test_parallel_of_circle():
    c = circle(3.0)
    par = parallel_curve(c, 1.0)
    for t in np.linspace(0, 6, 9):
        assert abs(abs(par(t)) - 2.0) < 1e-13


def test_parallel_zero_offset_is_identity():
    c = ellipse(3, 2)
    par = parallel_curve(c, 0.0)
    for t in np.linspace(0, 6, 9):
        assert abs(par(t) - c(t)) < 1e-15


@given(st.floats(-1.5, 1.5))
def test_parallel_distance(offset):
    c = ellipse(3, 2)
    par = parallel_curve(c, offset)
    for t in np.linspace(0, 6, 9):
        assert abs(abs(par(t) - c(t)) - abs(offset)) < 1e-12


def test_parallel_derivatives():
    par = parallel_curve(ellipse(3, 2), 0.7)
    ts = np.linspace(0.1, 6, 25)
    assert fd_check(par, par.d1, ts) < 1e-6
    assert fd_check(par.d1, par.d2, ts) < 1e-6


# ---- Tait-Kneser nesting ---------------------------------------------------


def _nesting_violations(curve, ts):
    circles = [curvature(curve, t)[1] for t in ts]
    bad = 0
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            c1, c2 = circles[i], circles[j]
            gap = abs(c2.center - c1.center) + min(c1.radius, c2.radius) - max(c1.radius, c2.radius)
            bad += gap > 1e-9
    return bad


def test_tait_kneser_ellipse_quarter():
    ts = np.linspace(0.01, math.pi / 2 - 0.01, 46)
    assert _nesting_violations(ellipse(3, 2), ts) == 0


def test_tait_kneser_circle_involute():
    ts = np.linspace(0.2, 6.0, 46)
    assert _nesting_violations(circle_involute(1.0), ts) == 0


# ---- critical points -------------------------------------------------------


def test_ellipse_vertices():
    cp = critical_points(ellipse(3, 2))
    assert len(cp.vertices) == 4
    assert cp.inflections == ()
    assert np.allclose(sorted(cp.vertices), [0, math.pi / 2, math.pi, 3 * math.pi / 2], atol=1e-9)


def test_circle_has_no_vertices():
    assert critical_points(circle(1.0)).vertices == ()


def test_limacon_two_vertices():
    assert len(critical_points(limacon()).vertices) == 2


def test_fivebar_four_inflections():
    assert len(critical_points(fivebar_curve(fivebar_reference())).inflections) == 4


@pytest.mark.parametrize("curve", [ellipse(3, 2), ellipse(1, 5), epicycles([(2, 1), (0.1, -3)]),
                                   epicycles([(2, 1), (0.05j, 5)])])
def test_four_vertex_on_convex_examples(curve):
    kappas = curvature_values(curve, curve.sample_params(512))
    assert np.all(kappas > 0)  # strictly convex
    assert len(critical_points(curve).vertices) >= 4


# ---- self-intersections and loops ------------------------------------------


def test_circle_has_no_crossings():
    assert self_intersections(circle(1.0)) == []


def test_gerono_single_crossing():
    (x,) = self_intersections(gerono(1.0))
    assert x.t_a == pytest.approx(math.pi / 2, abs=1e-10)
    assert x.t_b == pytest.approx(3 * math.pi / 2, abs=1e-10)
    assert abs(x.point) < 1e-12


def test_gerono_loops():
    loops = loop_decomposition(gerono(1.0))
    assert sorted(lp.area for lp in loops) == pytest.approx([-2 / 3, 2 / 3], abs=1e-10)


def test_fivebar_crossings():
    expected = [(12.18109598202294059, 60.79145803836321748), (171.21734636777756458, 330.79977628841437926),
                (197.44955305572769338, 322.29595150395381415)]
    found = self_intersections(fivebar_curve(fivebar_reference()))
    assert len(found) == 3
    for x, (a, b) in zip(found, expected):
        assert math.degrees(x.t_a) == pytest.approx(a, abs=1e-4)
        assert math.degrees(x.t_b) == pytest.approx(b, abs=1e-4)


def test_loops_of_simple_curve():
    (loop,) = loop_decomposition(ellipse(3, 2))
    assert loop.area == pytest.approx(6 * math.pi)


def test_export_csv(tmp_path):
    path = tmp_path / "e.csv"
    export_csv(ellipse(3, 2), path, samples=8)
    lines = path.read_text().splitlines()
    assert lines[0].split(",")[:3] == ["t", "x", "y"]
    assert len(lines) == 9
