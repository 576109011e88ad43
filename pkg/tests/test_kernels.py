import importlib

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from planekin import _kernels_py, kernels
from planekin.linkage import dyad_unit_law_of_cosines

try:
    compiled = importlib.import_module("planekin._kernels")
except ImportError:  # extension not built
    compiled = None

backends = [pytest.param(_kernels_py, id="python")]
backends.append(pytest.param(compiled, id="cython",
                             marks=pytest.mark.skipif(compiled is None, reason="extension not built")))


def _brute_crossings(x, y, closed):
    """O(n^2) segment test written independently of the sweep."""
    z = x + 1j * y
    n = len(z)
    segs = n if closed else n - 1
    out = []
    for i in range(segs):
        a, b = z[i], z[(i + 1) % n]
        for j in range(i + 2, segs):
            if closed and i == 0 and j == segs - 1:
                continue
            c, d = z[j], z[(j + 1) % n]
            m = np.array([[(b - a).real, -(d - c).real], [(b - a).imag, -(d - c).imag]])
            if abs(np.linalg.det(m)) < 1e-14:
                continue
            s, u = np.linalg.solve(m, [(c - a).real, (c - a).imag])
            if 0 <= s < 1 and 0 <= u < 1:
                out.append((i, j))
    return sorted(out)


@pytest.mark.parametrize("impl", backends)
def test_dyad_units_match_closed_form(impl, rng):
    zA = rng.normal(size=50) + 1j * rng.normal(size=50)
    zB = zA + 1.5 * np.exp(1j * rng.uniform(0, 6.3, size=50))
    for sign in (1, -1):
        units, ok = impl.dyad_units(zA, zB, 1.2, 1.0, sign)
        assert np.all(ok)
        for k in range(50):
            ref = dyad_unit_law_of_cosines(1.2, 1.0, zA[k], zB[k], sign)
            assert abs(units[k] - ref) < 1e-12


@pytest.mark.parametrize("impl", backends)
def test_dyad_units_flag_unassemblable(impl):
    units, ok = impl.dyad_units(np.array([0j, 0j]), np.array([10 + 0j, 1 + 0j]), 1.0, 1.0, 1)
    assert list(ok) == [False, True]


@pytest.mark.parametrize("impl", backends)
def test_crossings_figure_eight(impl):
    t = np.linspace(0, 2 * np.pi, 400, endpoint=False) + 0.01
    hits = impl.polyline_crossings(np.cos(t), np.sin(2 * t) / 2, True)
    assert len(hits) == 1


@pytest.mark.parametrize("impl", backends)
def test_crossings_convex_has_none(impl):
    t = np.linspace(0, 2 * np.pi, 300, endpoint=False)
    assert len(impl.polyline_crossings(3 * np.cos(t), 2 * np.sin(t), True)) == 0


@pytest.mark.parametrize("impl", backends)
@pytest.mark.parametrize("closed", [True, False])
def test_crossings_against_brute_force(impl, closed, rng):
    for _ in range(20):
        x, y = rng.normal(size=(2, 25))
        hits = impl.polyline_crossings(x, y, closed)
        got = sorted((int(h[0]), int(h[1])) for h in hits)
        assert got == _brute_crossings(x, y, closed)


@pytest.mark.skipif(compiled is None, reason="extension not built")
@given(st.integers(5, 60), st.integers(0, 2**31))
def test_backends_agree(n, seed):
    r = np.random.default_rng(seed)
    x, y = r.normal(size=(2, n))
    a = np.asarray(_kernels_py.polyline_crossings(x, y, True))
    b = np.asarray(compiled.polyline_crossings(x, y, True))
    assert a.shape == b.shape
    if a.size:
        assert np.allclose(a, b, atol=1e-12)


def test_dispatch_reports_backend():
    assert kernels.BACKEND in ("python", "cython")
