"""Shared configurations used by several test modules."""
import cmath
import math

from planekin.linkage import FiveBarConfig, FourBarConfig
from planekin.numerics import AffineLaw

SQRT2 = math.sqrt(2.0)


def fivebar_reference() -> FiveBarConfig:
    return FiveBarConfig(50, math.radians(5), 20, 60, 40, 20, 60, math.radians(35),
                         AffineLaw(-2.0, -math.pi / 3), 1)


def bresse_fourbar() -> FourBarConfig:
    return FourBarConfig(0j, 1.0, SQRT2, 2.0, 3 + 2j, 1)


def bresse_relabeled() -> FourBarConfig:
    return FourBarConfig(3 + 2j, 2.0, SQRT2, 1.0, 0j, -1)


def slider_fourbar() -> FourBarConfig:
    return FourBarConfig(0j, 12.0, 50.0, 35.0, 50 * cmath.exp(1j * math.radians(5)), 1)


def flat_face_cam(base_radius: float = 30.0):
    from planekin.cam import TranslatingFlatFaceCam
    from planekin.numerics import dwell_rise_dwell_return

    return TranslatingFlatFaceCam(base_radius, dwell_rise_dwell_return(18.0))


def roller_example(rho: float = 10.0):
    from planekin.cam import RollerCam
    from planekin.numerics import dwell_rise_dwell_return

    return RollerCam(70 + 15j, math.radians(120), 50.0, rho, dwell_rise_dwell_return(math.radians(40)))


def swinging_example():
    from planekin.cam import SwingingFlatFaceCam
    from planekin.numerics import swing_lobe_law

    return SwingingFlatFaceCam(2 + 2j, math.radians(70), 3.0, swing_lobe_law(math.radians(20)))
