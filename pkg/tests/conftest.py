import math
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def assert_close(actual, expected, tol, label=""):
    """Absolute comparison for real or complex values."""
    err = abs(complex(actual) - complex(expected))
    assert err <= tol, f"{label} got {actual!r}, expected {expected!r} (|diff| = {err:.3e} > {tol:g})"


def deg(x):
    return math.radians(x)


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome == "failed":
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        number, label = name.split("_", 3)[2:]
        terminalreporter.write_line(f"criterion {int(number)}: {_criteria[name]} {label.replace('_', ' ')}")
