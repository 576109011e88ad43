import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from planekin.curve import TWO_PI, arc_length, enclosed_area, loop_decomposition
from planekin.errors import DomainError
from planekin.numerics import fd_check
from planekin.profile import (
    CUSPS,
    SELF_INTERSECTING,
    SMOOTH,
    PnProfile,
    blend_parameters,
    cnc_linear_toolpath,
    cnc_sweep,
    equal_area_eccentricity,
    generator_bars,
    hypotrochoid_point,
    pn_curve,
    pn_point,
    profile_area,
    profile_metrics,
    rabinowitz,
    reuleaux_area,
    reuleaux_compare,
    tool_ellipse_path,
    validity_check,
)

PHIS = np.linspace(0, TWO_PI, 360, endpoint=False)

profiles = st.builds(
    lambda R, frac, n: PnProfile(R, frac * R / max(n * n - 1, 1), n),
    st.floats(0.5, 10), st.floats(0, 1), st.integers(2, 7),
)


# ---- curve -----------------------------------------------------------------


def test_zero_eccentricity_is_circle():
    p = PnProfile(2.0, 0.0, 3)
    for t in PHIS[::30]:
        assert abs(pn_point(p, t)[0] - 2 * cmath.exp(1j * t)) < 1e-15


def test_n1_is_shifted_circle():
    p = PnProfile(2.0, 0.3, 1)
    for t in PHIS[::30]:
        assert abs(abs(pn_point(p, t)[0] + 0.3) - 2.0) < 1e-14


def test_rabinowitz_form():
    p = rabinowitz()
    for t in PHIS:
        expected = 9 * cmath.exp(1j * t) + 2 * cmath.exp(1j * (math.pi - 2 * t)) + cmath.exp(4j * t)
        assert abs(pn_point(p, t)[0] - expected) < 1e-12


@given(profiles)
def test_tangent_orthogonal_to_crank(p):
    for t in PHIS[::15]:
        z, z1 = pn_point(p, t)
        assert abs((z1 * cmath.exp(-1j * t)).real) < 1e-12 * max(1.0, p.R)


@given(profiles)
def test_support_identity(p):
    for t in PHIS[::15]:
        z, _ = pn_point(p, t)
        assert (z * cmath.exp(-1j * t)).real == pytest.approx(p.R - p.e * math.cos(p.n * t), abs=1e-12 * p.R)


@given(profiles)
def test_width(p):
    w = p.width(PHIS)
    if p.n % 2:
        assert np.max(np.abs(w - 2 * p.R)) < 1e-12 * p.R
    else:
        assert np.allclose(w, 2 * p.support(PHIS), atol=1e-12 * p.R)


def test_curve_derivatives():
    c = pn_curve(PnProfile(1.0, 0.1, 4))
    ts = np.linspace(0.05, 6.2, 40)
    for k in range(3):
        lo = (lambda o: (lambda t: c.derivative(t, o)))(k)
        hi = (lambda o: (lambda t: c.derivative(t, o + 1)))(k)
        assert fd_check(lo, hi, ts) < 1e-6
    for t in ts[:5]:
        assert abs(c(t) - pn_point(PnProfile(1.0, 0.1, 4), t)[0]) < 1e-15


# ---- metrics ---------------------------------------------------------------


def test_p3g_metrics():
    p = PnProfile(1.0, 0.072, 3)
    m = profile_metrics(p)
    assert m.area == pytest.approx(math.pi - 0.5 * math.pi * 8 * 0.072**2, abs=1e-15)
    assert m.length == pytest.approx(TWO_PI)
    assert m.constant_width
    assert m.width_range == pytest.approx((2.0, 2.0), abs=1e-12)


def test_circle_metrics():
    m = profile_metrics(PnProfile(1.5, 0.0, 4))
    assert m.area == pytest.approx(math.pi * 1.5**2)
    assert m.width_range == pytest.approx((3.0, 3.0))


def test_even_profile_not_constant_width():
    m = profile_metrics(PnProfile(1.0, 0.05, 4))
    assert not m.constant_width
    assert m.width_range == pytest.approx((1.9, 2.1), abs=1e-12)


@pytest.mark.parametrize("p", [PnProfile(1.0, 0.072, 3), PnProfile(1.0, 0.25, 3), PnProfile(1.0, 0.125, 3),
                               PnProfile(9.0, 1.0, 3), PnProfile(1.0, 0.06, 4), PnProfile(2.0, 0.4, 5)])
def test_area_matches_quadrature(p):
    assert enclosed_area(pn_curve(p)) == pytest.approx(profile_area(p), abs=1e-8)


def test_self_intersecting_area_is_loop_sum():
    c = pn_curve(PnProfile(1.0, 0.25, 3))
    loops = loop_decomposition(c)
    assert len(loops) > 1
    assert any(lp.area < 0 for lp in loops)
    assert sum(lp.area for lp in loops) == pytest.approx(profile_area(PnProfile(1.0, 0.25, 3)), abs=1e-8)


@given(profiles)
def test_length_of_valid_profiles(p):
    assert arc_length(pn_curve(p)) == pytest.approx(profile_metrics(p).length, abs=1e-8)


def test_invalid_profile_has_no_closed_form_length():
    assert profile_metrics(PnProfile(1.0, 0.25, 3)).length is None


# ---- validity --------------------------------------------------------------


@pytest.mark.parametrize("e,expected", [(0.120, SMOOTH), (0.125, CUSPS), (0.25, SELF_INTERSECTING), (0.0, SMOOTH),
                                        (1 / 16, SMOOTH)])
def test_validity(e, expected):
    assert validity_check(PnProfile(1.0, e, 3)) == expected


def test_bad_parameters():
    with pytest.raises(DomainError):
        PnProfile(-1.0, 0.1, 3)
    with pytest.raises(DomainError):
        PnProfile(1.0, 0.1, 2.5)


# ---- generating linkage ----------------------------------------------------


def test_rabinowitz_bars():
    bars = generator_bars(rabinowitz())
    assert (bars.l2, bars.l3, bars.l4) == (9.0, 2.0, 1.0)


def test_p4_bars_and_gears():
    bars = generator_bars(PnProfile(1.0, 0.25, 4))
    assert bars.l3 == pytest.approx(0.625)
    assert bars.l4 == pytest.approx(0.375)
    assert bars.rho2 == pytest.approx(1.25)
    assert bars.rho4 == pytest.approx(0.625)
    assert bars.rho1 / bars.rho3 == pytest.approx(4)
    assert bars.rho2 / bars.rho4 == pytest.approx(2)


@given(profiles)
def test_bar_reconstruction(p):
    bars = generator_bars(p)
    for t in PHIS:
        assert abs(bars.point(t) - pn_point(p, t)[0]) < 1e-12 * max(1.0, p.R)


def test_bar_angular_rates():
    p = PnProfile(1.0, 0.1, 5)
    bars = generator_bars(p)
    n = p.n
    for t in np.linspace(0.2, 6, 10):
        h = 1e-6
        rates = []
        for k in range(3):
            def angle(s, k=k):
                a, b, c = bars.joints(s)
                return cmath.phase([a, b - a, c - b][k])
            rates.append((angle(t + h) - angle(t - h)) / (2 * h))
        assert rates == pytest.approx([1, -(n - 1), n + 1], abs=1e-6)


# ---- tool paths ------------------------------------------------------------


@pytest.mark.parametrize("tool", [0.0, 2.0])
def test_tool_ellipse_axes(tool):
    p = rabinowitz()
    pts = tool_ellipse_path(p, tool).points(np.linspace(0, TWO_PI, 4001))
    assert np.max(np.abs(pts.imag)) == pytest.approx(p.n * p.e, abs=1e-9)
    assert pts.real.min() == pytest.approx(p.R + tool - p.e, abs=1e-9)
    assert pts.real.max() == pytest.approx(p.R + tool + p.e, abs=1e-9)


def test_rabinowitz_path_centre():
    pts = tool_ellipse_path(rabinowitz(), 2.0).points(np.linspace(0, TWO_PI, 360, endpoint=False))
    assert abs(pts.mean() - 11.0) < 1e-12


def test_path_runs_n_times():
    p = PnProfile(1.0, 0.1, 3)
    path = tool_ellipse_path(p, 0.5)
    assert abs(path(0.3) - path(0.3 + TWO_PI / 3)) < 1e-14


def test_zero_tool_passes_through_contact_points():
    p = PnProfile(1.0, 0.1, 3)
    path = tool_ellipse_path(p, 0.0)
    for t in PHIS[::20]:
        # the contact point seen from the frame turning with the crank
        assert abs(path(t) - pn_point(p, t)[0] * cmath.exp(-1j * t)) < 1e-14


@given(profiles, st.floats(0, 5))
def test_hypotrochoid_is_ellipse(p, tool):
    path = tool_ellipse_path(p, tool)
    for t in PHIS[::30]:
        assert abs(hypotrochoid_point(p, tool, t) - path(t)) < 1e-12 * max(1.0, p.R + tool)


def test_tool_radius_validation():
    with pytest.raises(DomainError):
        tool_ellipse_path(rabinowitz(), -1.0)
    with pytest.raises(DomainError):
        cnc_linear_toolpath(rabinowitz(), 0.0, 0.1)


def test_cnc_circle():
    p = PnProfile(2.0, 0.0, 3)
    for r in (0.5, 3.0):
        for t in PHIS[::40]:
            f, _, shifted = cnc_linear_toolpath(p, r, t)
            assert f == pytest.approx(t, abs=1e-12)
            assert shifted == pytest.approx(0.0, abs=1e-12)


def test_cnc_large_tool_limit():
    p = rabinowitz()
    for t in np.linspace(0.05, 2.0, 12):
        f, _, shifted = cnc_linear_toolpath(p, 1e8, t)
        assert f == pytest.approx(t, abs=1e-6)
        assert shifted == pytest.approx(-p.e * math.cos(p.n * t), abs=1e-6)


def test_cnc_tool_touches_profile():
    p = rabinowitz()
    for t in np.linspace(0.05, 2.0, 12):
        f, x, _ = cnc_linear_toolpath(p, 3.0, t)
        contact = pn_point(p, f)[0] * cmath.exp(-1j * t)
        assert abs(abs(contact - x) - 3.0) < 1e-10


def test_cnc_converges_monotonically_in_tool_radius():
    p = rabinowitz()
    phis = np.linspace(0.0, TWO_PI / 3, 121)
    small = cnc_sweep(p, 1.0, phis)[:, 3]
    large = cnc_sweep(p, 12.0, phis)[:, 3]
    limit = -p.e * np.cos(p.n * phis)
    assert np.all(small <= large + 1e-12)
    assert np.all(large <= limit + 1e-12)
    for t in phis[::10]:
        xs = [cnc_linear_toolpath(p, r, t)[2] for r in (1, 2, 4, 12, 100)]
        assert np.all(np.diff(xs) >= -1e-12)


def test_cnc_sweep_matches_pointwise():
    p = PnProfile(1.0, 0.125, 3)
    phis = np.linspace(0, TWO_PI, 73)
    rows = cnc_sweep(p, 3.0, phis)
    for row in rows[::9]:
        f, x, xs = cnc_linear_toolpath(p, 3.0, row[0])
        assert row[2] == pytest.approx(x, abs=1e-10)


# ---- Reuleaux comparison ---------------------------------------------------


def test_reuleaux_area_formula():
    assert reuleaux_area(2.0) == pytest.approx(0.5 * (math.pi - math.sqrt(3)) * 4, abs=1e-15)


def test_profile_beats_reuleaux():
    res = reuleaux_compare(PnProfile(1.0, 0.125, 3))
    assert res.profile_larger
    assert res.profile_area > res.reuleaux_area


@given(st.floats(0.5, 5), st.floats(0, 1), st.sampled_from([3, 5, 7]))
def test_every_valid_odd_profile_beats_reuleaux(R, frac, n):
    p = PnProfile(R, frac * R / (n * n - 1), n)
    assert reuleaux_compare(p).profile_larger


def test_equal_area_eccentricity():
    e = equal_area_eccentricity(1.0, 3)
    assert e == pytest.approx(0.160201, abs=1e-6)
    p = PnProfile(1.0, e, 3)
    assert validity_check(p) == SELF_INTERSECTING
    assert profile_area(p) == pytest.approx(reuleaux_area(2.0), abs=1e-12)


def test_reuleaux_requires_odd_n():
    with pytest.raises(DomainError):
        reuleaux_compare(PnProfile(1.0, 0.05, 4))


# ---- arc blending ----------------------------------------------------------


def test_blend_points_on_arc():
    p = PnProfile(1.0, 0.04, 4)
    ts = blend_parameters(p, 1.014)
    assert len(ts) == 8
    for t in ts:
        assert abs(pn_point(p, t)[0]) == pytest.approx(1.014, abs=1e-12)


def test_blend_circle_misses_curve():
    assert blend_parameters(PnProfile(1.0, 0.04, 4), 5.0) == ()
