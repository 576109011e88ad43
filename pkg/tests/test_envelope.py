import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import flat_face_cam
from planekin.cam import tff_curve, tff_line_family
from planekin.curve import TWO_PI, ParametricCurve, circle, ellipse, epicycles, limacon
from planekin.envelope import (
    CurveFamily,
    NotConvexWarning,
    SupportFunction,
    astroid_support,
    check_support_roundtrip,
    constant_support,
    envelope_from_support,
    envelope_general,
    envelope_parameter,
    line_family,
    normal_family,
    sliding_segment_family,
    support_function_of,
    support_of_convex,
    tangency_residual,
    trace_envelope,
)
from planekin.errors import NoEnvelopePoint
from planekin.geom_core import Line, point_line_distance
from planekin.numerics import fd_check

PHIS = np.linspace(0.05, TWO_PI - 0.05, 41)


def wobble_support(phi):
    return 3 + 0.2 * np.cos(3 * phi) + 0.1 * np.sin(2 * phi)


def wobble_support_d1(phi):
    return -0.6 * np.sin(3 * phi) + 0.2 * np.cos(2 * phi)


def wobble_support_d2(phi):
    return -1.8 * np.cos(3 * phi) - 0.4 * np.sin(2 * phi)


def wobble_support_d3(phi):
    return 5.4 * np.sin(3 * phi) - 0.8 * np.cos(2 * phi)


WOBBLE = SupportFunction(wobble_support, wobble_support_d1, wobble_support_d2, wobble_support_d3)


# ---- general envelopes -----------------------------------------------------


def test_normals_of_ellipse_envelope_is_evolute():
    a, b = 3.0, 2.0
    env = envelope_general(normal_family(ellipse(a, b)))
    for t in PHIS:
        closed = (a * a - b * b) / a * math.cos(t) ** 3 + 1j * (b * b - a * a) / b * math.sin(t) ** 3
        assert abs(env(t) - closed) < 1e-8


def test_sliding_segment_gives_astroid():
    length = 2.5
    env = envelope_general(sliding_segment_family(length))
    for p in PHIS:
        assert abs(env(p) - length * (math.sin(p) ** 3 + 1j * math.cos(p) ** 3)) < 1e-12


def test_sliding_segment_matches_support_form():
    length = 2.5
    by_family = envelope_general(sliding_segment_family(length))
    by_support = envelope_from_support(astroid_support(length))
    for p in PHIS:
        assert abs(by_family(p) - by_support(p)) < 1e-12


def test_parallel_lines_have_no_envelope():
    fam = CurveFamily(lambda t, lam: t + 1j * lam, lambda t, lam: 1 + 0j, lambda t, lam: 1j, affine=True)
    env = envelope_general(fam)
    for t in (0.0, 0.5, 3.0):
        with pytest.raises(NoEnvelopePoint):
            env(t)


def test_parallel_lines_without_affine_flag():
    fam = CurveFamily(lambda t, lam: t + 1j * lam, lam_domain=(-5, 5))
    with pytest.raises(NoEnvelopePoint):
        envelope_parameter(fam, 1.0)


def test_non_affine_family_of_circles():
    # circles of radius 1 centred on the real axis; envelope lines y = +-1
    fam = CurveFamily(lambda t, lam: t + np.exp(1j * lam), lam_domain=(-math.pi, math.pi))
    top = envelope_general(fam, branch_seed=math.pi / 2)
    bottom = envelope_general(fam, branch_seed=-math.pi / 2)
    for t in (-2.0, 0.0, 1.7):
        assert abs(top(t) - (t + 1j)) < 1e-9
        assert abs(bottom(t) - (t - 1j)) < 1e-9


def test_trace_reports_branch_switch():
    fam = CurveFamily(lambda t, lam: t + np.exp(1j * lam), lam_domain=(-math.pi, math.pi))
    steady = trace_envelope(fam, np.linspace(0, 1, 11), seed=math.pi / 2)
    assert steady.branch_switches == ()
    assert np.allclose(steady.points.imag, 1.0, atol=1e-9)


def test_family_partials_pass_fd():
    fam = tff_line_family(flat_face_cam())
    for lam in (-3.0, 0.0, 4.0):
        ts = [t for t in PHIS if min(abs(t - k) for k in (0, 5 * math.pi / 6, 7 * math.pi / 6, 11 * math.pi / 6)) > 1e-3]
        assert fd_check(lambda t: fam.func(t, lam), lambda t: fam.z_t(t, lam), ts) < 1e-6
        assert fd_check(lambda s: fam.func(1.0, s), lambda s: fam.z_lam(1.0, s), [lam]) < 1e-6


# ---- support functions -----------------------------------------------------


@pytest.mark.parametrize("radius", [0.5, 4.0])
def test_constant_support_is_circle(radius):
    env = envelope_from_support(constant_support(radius))
    for p in PHIS:
        assert abs(env(p) - radius * np.exp(1j * p)) < 1e-14


def test_astroid_from_support():
    length = 3.0
    env = envelope_from_support(astroid_support(length))
    for p in PHIS:
        z = env(p)
        # astroid |x|^(2/3) + |y|^(2/3) = length^(2/3)
        assert abs(abs(z.real) ** (2 / 3) + abs(z.imag) ** (2 / 3) - length ** (2 / 3)) < 1e-12


def test_support_envelope_derivatives():
    env = envelope_from_support(WOBBLE)
    assert fd_check(env, env.d1, PHIS) < 1e-6
    assert fd_check(env.d1, env.d2, PHIS) < 1e-6


def test_support_convexity_indicator():
    assert WOBBLE.convexity(0.0) == pytest.approx(3 + 0.2 - 1.8)


@pytest.mark.parametrize("radius", [1.0, 2.5])
def test_support_of_centred_circle(radius):
    c = circle(radius)
    for p in PHIS:
        assert support_of_convex(c, p) == pytest.approx(radius, abs=1e-12)


@given(st.floats(0.5, 4), st.floats(0.5, 4), st.floats(0, TWO_PI))
def test_support_of_ellipse(a, b, phi):
    expected = math.sqrt(a * a * math.cos(phi) ** 2 + b * b * math.sin(phi) ** 2)
    assert support_of_convex(ellipse(a, b), phi) == pytest.approx(expected, abs=1e-10)


def test_support_of_translated_circle():
    c = circle(1.0, 2 + 1j)
    for p in PHIS:
        assert support_of_convex(c, p) == pytest.approx(1 + 2 * math.cos(p) + math.sin(p), abs=1e-12)


def test_roundtrip_ellipse():
    with warnings.catch_warnings():
        warnings.simplefilter("error", NotConvexWarning)
        assert check_support_roundtrip(ellipse(3, 2)) < 1e-6


def test_roundtrip_flags_nonconvex_curve():
    dented = epicycles([(3, 1), (1.2, -2)])
    with pytest.warns(NotConvexWarning):
        assert check_support_roundtrip(dented) > 0.1


def test_roundtrip_flags_looped_limacon():
    # positive curvature everywhere, but the inner loop is off the hull
    with pytest.warns(NotConvexWarning):
        assert check_support_roundtrip(limacon()) > 1.0


def test_extracted_support_derivative():
    sf = support_function_of(ellipse(3, 2))
    assert fd_check(sf, sf.d1, PHIS[:10]) < 1e-6


# ---- support line families -------------------------------------------------


def test_general_and_support_envelopes_agree():
    by_family = envelope_general(line_family(wobble_support, wobble_support_d1))
    by_support = envelope_from_support(WOBBLE)
    for p in PHIS:
        assert abs(by_family(p) - by_support(p)) < 1e-10


def test_line_family_without_analytic_partial():
    by_family = envelope_general(line_family(wobble_support))
    by_support = envelope_from_support(WOBBLE)
    for p in PHIS:
        assert abs(by_family(p) - by_support(p)) < 1e-8


@pytest.mark.parametrize("family", [
    line_family(wobble_support, wobble_support_d1),
    normal_family(ellipse(3, 2)),
    sliding_segment_family(2.0),
    tff_line_family(flat_face_cam()),
])
def test_tangency_on_envelope(family):
    for t in PHIS:
        lam = envelope_parameter(family, t)
        assert tangency_residual(family, t, lam) < 1e-9


def test_every_support_line_touches_envelope():
    env = envelope_from_support(WOBBLE)
    for p in PHIS:
        line = Line(float(wobble_support(p)), float(p))
        assert abs(point_line_distance(env(p), line)) < 1e-9


def test_every_cam_face_touches_contour():
    cam = flat_face_cam()
    contour = tff_curve(cam)
    for p in PHIS:
        face = Line(cam.support(p)[0], -float(p))
        assert abs(point_line_distance(contour(p), face)) < 1e-9


# ---- cross-module ----------------------------------------------------------


def test_flat_face_contour_is_line_envelope():
    cam = flat_face_cam()
    env = envelope_general(tff_line_family(cam))
    contour = tff_curve(cam)
    for p in PHIS:
        assert abs(env(p) - contour(p)) < 1e-10


def test_flat_face_contour_is_mirrored_support_envelope():
    cam = flat_face_cam()
    law = cam.r
    sf = SupportFunction(lambda p: cam.r0 + law(p), law.d1)
    env = envelope_from_support(sf)
    contour = tff_curve(cam)
    for p in PHIS:
        assert abs(contour(p) - np.conj(env(p))) < 1e-10


def test_envelope_curve_is_parametric_curve():
    assert isinstance(envelope_general(sliding_segment_family(1.0)), ParametricCurve)


def test_convex_epicycle_support_roundtrip():
    assert check_support_roundtrip(epicycles([(3, 1), (0.1, -2)])) < 1e-6
