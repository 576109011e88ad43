"""JSON scenarios: validation, model construction, reports, sweeps and figures.

Angles in scenario files are degrees.  Each kind has a JSON schema; a
payload is checked before anything is computed.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

import jsonschema
import numpy as np

from . import cam as cam_mod
from . import curve as curve_mod
from . import linkage, motion
from . import profile as profile_mod
from .errors import KinematicsError, SchemaError
from .numerics import AffineLaw, dwell_rise_dwell_return, make_motion_law, swing_lobe_law
from .svg import PALETTE, Figure, clip_far

KINDS = ("curve", "linkage", "motion", "cam", "profile")
SCENARIO_DIR = Path(__file__).with_name("scenarios")

# ---- schemas ---------------------------------------------------------------

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_LAW = {
    "type": "object",
    "properties": {
        "preset": {"enum": ["dwell_rise_dwell_return", "swing_lobe"]},
        "amplitude": {"type": "number"},
        "amplitude_deg": {"type": "number"},
        "segments": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "kind": {"type": "string"},
                    "span_deg": {"type": "number", "exclusiveMinimum": 0},
                    "amplitude": {"type": "number"},
                    "params": {"type": "array", "items": {"type": "number"}},
                },
                "required": ["kind", "span_deg"],
            },
        },
        "angular": {"type": "boolean"},
        "affine": {
            "type": "object",
            "properties": {"slope": {"type": "number"}, "offset_deg": {"type": "number"}},
            "required": ["slope"],
        },
    },
    "oneOf": [{"required": ["preset"]}, {"required": ["segments"]}, {"required": ["affine"]}],
}
_FOURBAR = {
    "type": "object",
    "properties": {
        "crank_pivot": _POINT,
        "crank_length": {"type": "number", "exclusiveMinimum": 0},
        "coupler_length": {"type": "number", "exclusiveMinimum": 0},
        "rocker_length": {"type": "number", "exclusiveMinimum": 0},
        "rocker_pivot": _POINT,
        "branch": {"enum": [1, -1]},
    },
    "required": ["crank_pivot", "crank_length", "coupler_length", "rocker_length", "rocker_pivot"],
}

PARAM_SCHEMAS: dict[str, dict] = {
    "curve": {
        "type": "object",
        "properties": {
            "type": {"enum": ["circle", "ellipse", "gerono", "limacon", "epicycles", "involute"]},
            "radius": {"type": "number", "exclusiveMinimum": 0},
            "a": {"type": "number", "exclusiveMinimum": 0},
            "b": {"type": "number", "exclusiveMinimum": 0},
            "inner": {"type": "number"},
            "outer": {"type": "number"},
            "terms": {"type": "array", "items": {"type": "array", "items": {"type": "number"},
                                                 "minItems": 3, "maxItems": 3}},
        },
        "required": ["type"],
    },
    "linkage": {
        "type": "object",
        "properties": {
            "type": {"enum": ["fivebar", "fourbar"]},
            "l1": {"type": "number"}, "l2": {"type": "number"}, "l3": {"type": "number"},
            "l4": {"type": "number"}, "l5": {"type": "number"}, "l6": {"type": "number"},
            "frame_angle_deg": {"type": "number"},
            "delta_deg": {"type": "number"},
            "psi": _LAW,
            "branch": {"enum": [1, -1]},
            "fourbar": _FOURBAR,
            "phi_deg": {"type": "number"},
            "coupler_point": _POINT,
        },
        "required": ["type"],
        "if": {"properties": {"type": {"const": "fivebar"}}},
        "then": {"required": ["l1", "frame_angle_deg", "l2", "l3", "l4", "l5", "l6", "delta_deg", "psi"]},
        "else": {"required": ["fourbar"]},
    },
    "motion": {
        "type": "object",
        "properties": {
            "fourbar": _FOURBAR,
            "phi_deg": {"type": "number"},
            "reparam": {"type": "object", "properties": {"f1": {"type": "number"}, "f2": {"type": "number"}},
                        "required": ["f1", "f2"]},
        },
        "required": ["fourbar", "phi_deg"],
    },
    "cam": {
        "type": "object",
        "properties": {
            "follower": {"enum": ["translating_flat", "swinging_flat", "roller", "a0_regions"]},
            "r0": {"type": "number", "exclusiveMinimum": 0},
            "pivot": _POINT,
            "psi0_deg": {"type": "number"},
            "a": {"type": "number"},
            "length": {"type": "number", "exclusiveMinimum": 0},
            "rho": {"type": "number", "minimum": 0},
            "mu_deg": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 90},
            "phi_deg": {"type": "number"},
            "law": _LAW,
        },
        "required": ["follower", "law"],
        "allOf": [
            {"if": {"properties": {"follower": {"const": "translating_flat"}}},
             "then": {"required": ["r0"]}},
            {"if": {"properties": {"follower": {"const": "swinging_flat"}}},
             "then": {"required": ["pivot", "psi0_deg", "a"]}},
            {"if": {"properties": {"follower": {"const": "roller"}}},
             "then": {"required": ["pivot", "psi0_deg", "length", "rho"]}},
            {"if": {"properties": {"follower": {"const": "a0_regions"}}},
             "then": {"required": ["psi0_deg", "length", "mu_deg"]}},
        ],
    },
    "profile": {
        "type": "object",
        "properties": {
            "R": {"type": "number", "exclusiveMinimum": 0},
            "e": {"type": "number", "minimum": 0},
            "n": {"type": "integer", "minimum": 1},
            "tool_radius": {"type": "number", "exclusiveMinimum": 0},
            "arc_radius": {"type": "number", "exclusiveMinimum": 0},
        },
        "required": ["R", "e", "n"],
    },
}

SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "kind": {"enum": list(KINDS)},
        "params": {"type": "object"},
        "sweep": {
            "type": "object",
            "properties": {
                "start_deg": {"type": "number"},
                "stop_deg": {"type": "number"},
                "samples": {"type": "integer", "minimum": 2},
            },
        },
        "outputs": {"type": "array", "items": {"enum": ["report", "csv", "svg"]}},
    },
    "required": ["kind", "params"],
}


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    params: dict
    sweep: dict
    outputs: tuple[str, ...]


def validate(data: Any) -> Scenario:
    try:
        jsonschema.validate(data, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{_where(exc, '')}: {exc.message}") from None
    try:
        jsonschema.validate(data["params"], PARAM_SCHEMAS[data["kind"]])
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{_where(exc, 'params')}: {exc.message}") from None
    return Scenario(
        data.get("name", data["kind"]),
        data["kind"],
        data["params"],
        data.get("sweep", {}),
        tuple(data.get("outputs", ["report"])),
    )


def _where(exc: jsonschema.ValidationError, prefix: str) -> str:
    parts = ([prefix] if prefix else []) + [str(p) for p in exc.absolute_path]
    return "/".join(parts) or "<root>"


def load(path) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    return validate(data)


def shipped() -> dict[str, Path]:
    """Bundled example scenarios keyed by name."""
    return {p.stem: p for p in sorted(SCENARIO_DIR.glob("*.json"))}


# ---- formatting ------------------------------------------------------------


def fmt(value: Any) -> str:
    """15 significant digits; complex numbers as ``a + bi``."""
    if value is None:
        return "undefined"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        re, im = float(value.real), float(value.imag)
        sign = "-" if im < 0 or (im == 0 and math.copysign(1, im) < 0) else "+"
        return f"{_g(re)} {sign} {_g(abs(im))}i"
    if isinstance(value, (float, np.floating)):
        return _g(float(value))
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(fmt(v) for v in value) + "]"
    return str(value)


def _g(x: float) -> str:
    s = f"{x:.15g}"
    return "0" if s == "-0" else s


class Report:
    def __init__(self, title: str):
        self.lines: list[str] = [f"# {title}"]
        self.values: dict[str, Any] = {}

    def add(self, key: str, value: Any) -> None:
        self.values[key] = value
        self.lines.append(f"{key} = {fmt(value)}")

    def angle(self, key: str, radians: float) -> None:
        """Angles are shown in degrees and radians."""
        self.values[key] = radians
        self.lines.append(f"{key} = {_g(math.degrees(radians))} deg ({_g(radians)} rad)")

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


# ---- builders --------------------------------------------------------------


def build_law(spec: dict):
    if "affine" in spec:
        aff = spec["affine"]
        return AffineLaw(float(aff["slope"]), math.radians(aff.get("offset_deg", 0.0)))
    angular = spec.get("angular", "amplitude_deg" in spec)
    if "preset" in spec:
        amp = math.radians(spec["amplitude_deg"]) if "amplitude_deg" in spec else float(spec.get("amplitude", 0.0))
        if spec["preset"] == "dwell_rise_dwell_return":
            return dwell_rise_dwell_return(amp)
        return swing_lobe_law(amp)
    segs = []
    for s in spec["segments"]:
        amp = float(s.get("amplitude", 0.0))
        segs.append((s["kind"], math.radians(s["span_deg"]), math.radians(amp) if angular else amp,
                     tuple(s.get("params", ()))))
    try:
        return make_motion_law(segs)
    except KinematicsError:
        raise
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"law: {exc}") from None


def _pt(v) -> complex:
    return complex(float(v[0]), float(v[1]))


def build_curve(p: dict) -> curve_mod.ParametricCurve:
    kind = p["type"]
    if kind == "circle":
        return curve_mod.circle(p.get("radius", 1.0))
    if kind == "ellipse":
        return curve_mod.ellipse(p.get("a", 3.0), p.get("b", 2.0))
    if kind == "gerono":
        return curve_mod.gerono(p.get("a", 1.0))
    if kind == "limacon":
        return curve_mod.limacon(p.get("inner", 1.0), p.get("outer", -1.0))
    if kind == "involute":
        return curve_mod.circle_involute(p.get("radius", 1.0))
    terms = [(complex(re, im), freq) for re, im, freq in p.get("terms", [])]
    if not terms:
        raise SchemaError("params/terms: epicycles need at least one term")
    return curve_mod.epicycles(terms)


def build_fourbar(p: dict) -> linkage.FourBarConfig:
    return linkage.FourBarConfig(
        _pt(p["crank_pivot"]), p["crank_length"], p["coupler_length"], p["rocker_length"],
        _pt(p["rocker_pivot"]), p.get("branch", 1),
    )


def build_fivebar(p: dict) -> linkage.FiveBarConfig:
    return linkage.FiveBarConfig(
        p["l1"], math.radians(p["frame_angle_deg"]), p["l2"], p["l3"], p["l4"], p["l5"], p["l6"],
        math.radians(p["delta_deg"]), build_law(p["psi"]), p.get("branch", 1),
    )


def build_cam(p: dict):
    law = build_law(p["law"])
    kind = p["follower"]
    if kind == "translating_flat":
        return cam_mod.TranslatingFlatFaceCam(p["r0"], law)
    if kind == "swinging_flat":
        return cam_mod.SwingingFlatFaceCam(_pt(p["pivot"]), math.radians(p["psi0_deg"]), p["a"], law)
    if kind == "roller":
        return cam_mod.RollerCam(_pt(p["pivot"]), math.radians(p["psi0_deg"]), p["length"], p["rho"], law)
    return law


def build_profile(p: dict) -> profile_mod.PnProfile:
    return profile_mod.PnProfile(p["R"], p["e"], p["n"])


# ---- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class Settings:
    samples: int = 2048
    tol: float = 1e-12


def _curve_report(sc: Scenario, st: Settings) -> Report:
    c = build_curve(sc.params)
    rep = Report(sc.name)
    rep.add("length", curve_mod.arc_length(c, tol=st.tol))
    if c.closed:
        rep.add("signed_area", curve_mod.enclosed_area(c, st.tol))
        crossings = curve_mod.self_intersections(c, st.samples)
        rep.add("self_intersections", len(crossings))
        for k, x in enumerate(crossings, 1):
            rep.angle(f"crossing_{k}_t_a", x.t_a)
            rep.angle(f"crossing_{k}_t_b", x.t_b)
            rep.add(f"crossing_{k}_point", x.point)
        if crossings:
            for k, lp in enumerate(curve_mod.loop_decomposition(c, crossings, st.tol), 1):
                rep.add(f"loop_{k}_area", lp.area)
    crit = curve_mod.critical_points(c, st.samples)
    rep.add("vertices", len(crit.vertices))
    for k, t in enumerate(crit.vertices, 1):
        kappa, _ = curve_mod.curvature(c, t)
        rep.angle(f"vertex_{k}_t", t)
        rep.add(f"vertex_{k}_curvature_radius", math.inf if kappa == 0 else 1.0 / abs(kappa))
    rep.add("inflections", len(crit.inflections))
    return rep


def _fivebar_report(sc: Scenario, st: Settings) -> Report:
    cfg = build_fivebar(sc.params)
    c = linkage.fivebar_curve(cfg)
    rep = Report(sc.name)
    rep.add("arc_length", curve_mod.arc_length(c, tol=st.tol))
    rep.add("signed_area", curve_mod.enclosed_area(c, st.tol))
    rep.add("signed_area_reduced_integral", linkage.fivebar_area_integral(cfg, st.tol))
    areas = linkage.coupler_loop_areas(cfg, curve_mod.self_intersections(c, st.samples), st.tol)
    for k, x in enumerate(areas.crossings, 1):
        rep.angle(f"crossing_{k}_t_a", x.t_a)
        rep.angle(f"crossing_{k}_t_b", x.t_b)
        rep.add(f"crossing_{k}_point", x.point)
    for k, lp in enumerate(areas.loops, 1):
        rep.add(f"loop_{k}_area", lp.area)
    rep.add("loop_area_absolute_total", areas.absolute_total)
    crit = curve_mod.critical_points(c, st.samples)
    rep.add("inflections", len(crit.inflections))
    for k, t in enumerate(crit.inflections, 1):
        rep.angle(f"inflection_{k}", t)
    return rep


def _fourbar_report(sc: Scenario, st: Settings) -> Report:
    p = sc.params
    cfg = build_fourbar(p["fourbar"])
    phi = math.radians(p.get("phi_deg", 0.0))
    zA, sol = linkage.fourbar_state(cfg, phi)
    rep = Report(sc.name)
    rep.add("A", zA[0])
    rep.add("coupler_unit", sol.unit)
    rep.angle("coupler_angle", sol.phi1)
    rep.add("coupler_angle_d1", sol.d1)
    rep.add("coupler_angle_d2", sol.d2)
    rep.add("coupler_angle_d3", sol.d3)
    ref = linkage.dyad_unit_law_of_cosines(cfg.coupler_length, cfg.rocker_length, zA[0], cfg.rocker_pivot, cfg.branch)
    rep.add("closed_form_unit_difference", abs(ref - sol.unit))
    if "coupler_point" in p:
        c = linkage.fourbar_coupler_curve(cfg, _pt(p["coupler_point"]))
        rep.add("coupler_curve_length", curve_mod.arc_length(c, tol=st.tol))
        rep.add("coupler_curve_signed_area", curve_mod.enclosed_area(c, st.tol))
    return rep


def _motion_report(sc: Scenario, st: Settings) -> Report:
    p = sc.params
    cfg = build_fourbar(p["fourbar"])
    m = linkage.fourbar_motion(cfg)
    phi = math.radians(p["phi_deg"])
    s = m.state(phi)
    rep = Report(sc.name)
    rep.angle("theta", s.theta[0])
    rep.add("theta_d1", s.w1)
    rep.add("theta_d2", s.w2)
    rep.add("theta_d3", s.w3)
    p1, p2, p3 = motion.poles(m, phi)
    rep.add("P1", p1)
    rep.add("P2", p2)
    rep.add("P3", p3)
    rep.add("pole_velocity", motion.pole_velocity(m, phi))
    for key, circ in motion.characteristic_circles(m, phi).items():
        rep.add(f"{key}_center", circ.center)
        rep.add(f"{key}_radius", circ.radius)
    try:
        ball = motion.balls_point(m, phi)
        rep.add("balls_point", ball)
        rep.add("balls_point_frame", m.frame_coordinates(ball, phi))
    except KinematicsError as exc:
        rep.add("balls_point", f"undefined ({exc})")
    if "reparam" in p:
        rp = p["reparam"]
        rep.add("P2_reparametrized", motion.pole2_reparametrized(m, phi, rp["f1"], rp["f2"]))
    return rep


def _cam_report(sc: Scenario, st: Settings) -> Report:
    p = sc.params
    obj = build_cam(p)
    rep = Report(sc.name)
    kind = p["follower"]
    if kind == "translating_flat":
        met = cam_mod.tff_metrics(obj, st.tol)
        rep.add("perimeter", met.perimeter)
        rep.add("signed_area", met.signed_area)
        rep.add("area", met.area)
        rep.add("curvature_radius_min", met.rho_min.radius)
        rep.angle("curvature_radius_min_at", met.rho_min.phi)
        rep.add("curvature_radius_max", met.rho_max.radius)
        rep.angle("curvature_radius_max_at", met.rho_max.phi)
        for k, th in enumerate(cam_mod.cusp_thresholds(obj.r), 1):
            rep.add(f"cusp_threshold_{k}_r0", th.radius)
            rep.angle(f"cusp_threshold_{k}_at", th.phi)
        und = cam_mod.tff_undercut(obj)
        rep.add("undercut", und.kind)
        for k, t in enumerate(und.touch_points, 1):
            rep.angle(f"touch_{k}", t)
        for k, t in enumerate(und.cusps, 1):
            rep.angle(f"cusp_{k}", t)
        if und.crossing is not None:
            rep.angle("loop_t_a", und.crossing.t_a)
            rep.angle("loop_t_b", und.crossing.t_b)
            rep.add("loop_point", und.crossing.point)
    elif kind == "swinging_flat":
        phi = math.radians(p.get("phi_deg", 0.0))
        state = cam_mod.sff_contour(obj, phi)
        rep.angle("psi", obj.psi(phi))
        rep.add("contour_point", state.z)
        rep.add("lambda", state.lam)
        rep.add("lambda_d1", state.lam1)
        rep.add("lambda_d2", state.lam2)
        rep.add("curvature", state.kappa)
        curve = cam_mod.sff_curve(obj)
        rep.add("total_curvature", cam_mod.total_curvature(curve, st.tol))
        rep.add("signed_area", curve_mod.enclosed_area(curve, st.tol))
    elif kind == "roller":
        met = cam_mod.roller_metrics(obj, st.tol)
        rep.add("pitch_length", met.length_B)
        rep.add("contour_length", met.length_K)
        rep.add("pitch_signed_area", met.area_B)
        rep.add("contour_signed_area", met.area_K)
        rep.add("offset_condition_holds", met.convex_offset)
        rep.add("contour_length_closed_form", met.theorem_length(obj.rho))
        rep.add("contour_area_closed_form", met.theorem_area(obj.rho))
        lo, hi = cam_mod.transmission_extremes(obj)
        rep.add("transmission_angle_min_deg", math.degrees(lo.radius))
        rep.angle("transmission_angle_min_at", lo.phi)
        rep.add("transmission_angle_max_deg", math.degrees(hi.radius))
        rep.angle("transmission_angle_max_at", hi.phi)
        rep.add("max_contour_radius", cam_mod.max_contour_radius(obj))
    else:
        reg = cam_mod.a0_regions(_pt(p.get("pivot", (0.0, 0.0))), math.radians(p["psi0_deg"]), p["length"],
                                 obj, math.radians(p["mu_deg"]), p.get("rho", 0.0))
        for k, c in enumerate(reg.admissible(), 1):
            rep.add(f"pivot_{k}_kind", c.kind)
            rep.add(f"pivot_{k}", c.point)
            rep.angle(f"pivot_{k}_phi_plus", c.phi_plus)
            rep.angle(f"pivot_{k}_phi_minus", c.phi_minus)
            rep.add(f"pivot_{k}_max_contour_radius", c.max_radius)
            rep.add(f"pivot_{k}_transmission_range_deg", tuple(math.degrees(v) for v in c.mu_range))
        rep.add("other_intersections", len(reg.candidates) - len(reg.admissible()))
    return rep


def _profile_report(sc: Scenario, st: Settings) -> Report:
    p = sc.params
    prof = build_profile(p)
    rep = Report(sc.name)
    met = profile_mod.profile_metrics(prof)
    c = profile_mod.pn_curve(prof)
    rep.add("validity", profile_mod.validity_check(prof))
    rep.add("area_closed_form", met.area)
    rep.add("area_quadrature", curve_mod.enclosed_area(c, st.tol))
    rep.add("length_closed_form", met.length)
    rep.add("length_quadrature", curve_mod.arc_length(c, tol=st.tol))
    rep.add("constant_width", met.constant_width)
    rep.add("width_range", met.width_range)
    bars = profile_mod.generator_bars(prof)
    rep.add("bars", (bars.l2, bars.l3, bars.l4))
    rep.add("gear_radii", (bars.rho1, bars.rho2, bars.rho3, bars.rho4))
    if prof.n % 2 == 1:
        cmp = profile_mod.reuleaux_compare(prof)
        rep.add("reuleaux_area", cmp.reuleaux_area)
        rep.add("profile_larger_than_reuleaux", cmp.profile_larger)
    if "arc_radius" in p:
        rep.add("blend_parameters", profile_mod.blend_parameters(prof, p["arc_radius"]))
    return rep


def report(sc: Scenario, st: Settings = Settings()) -> Report:
    if sc.kind == "curve":
        return _curve_report(sc, st)
    if sc.kind == "linkage":
        return _fivebar_report(sc, st) if sc.params["type"] == "fivebar" else _fourbar_report(sc, st)
    if sc.kind == "motion":
        return _motion_report(sc, st)
    if sc.kind == "cam":
        return _cam_report(sc, st)
    return _profile_report(sc, st)


# ---- sweeps ----------------------------------------------------------------


def sweep_angles(sc: Scenario, samples: Optional[int] = None) -> np.ndarray:
    sw = sc.sweep
    n = samples or sw.get("samples", 361)
    return np.radians(np.linspace(sw.get("start_deg", 0.0), sw.get("stop_deg", 360.0), n))


def _rows_curve(c: curve_mod.ParametricCurve, ts) -> tuple[list[str], list[list]]:
    rows = []
    for t in ts:
        z, z1, z2, _ = c.jet(float(t))
        try:
            kappa = curve_mod.curvature(c, float(t))[0]
        except KinematicsError:
            kappa = None
        rows.append([float(t), z.real, z.imag, z1.real, z1.imag, z2.real, z2.imag, kappa])
    return ["t", "x", "y", "dx", "dy", "ddx", "ddy", "curvature"], rows


def sweep_table(sc: Scenario, samples: Optional[int] = None) -> tuple[list[str], list[list]]:
    ts = sweep_angles(sc, samples)
    p = sc.params
    if sc.kind == "curve":
        return _rows_curve(build_curve(p), ts)
    if sc.kind == "linkage" and p["type"] == "fivebar":
        return _rows_curve(linkage.fivebar_curve(build_fivebar(p)), ts)
    if sc.kind == "linkage":
        cfg = build_fourbar(p["fourbar"])
        rows = []
        for t in ts:
            try:
                _, sol = linkage.fourbar_state(cfg, float(t))
                rows.append([float(t), sol.phi1, sol.d1, sol.d2, sol.d3])
            except KinematicsError:
                rows.append([float(t), None, None, None, None])
        return ["phi", "coupler_angle", "d1", "d2", "d3"], rows
    if sc.kind == "motion":
        m = linkage.fourbar_motion(build_fourbar(p["fourbar"]))
        keys = ["phi", "P1", "P2", "P3", "u", "inflection_radius", "ball"]
        out = []
        for row in motion.motion_sweep_rows(m, ts):
            out.append([row.get(k) for k in keys])
        return keys, out
    if sc.kind == "cam":
        obj = build_cam(p)
        kind = p["follower"]
        if kind == "translating_flat":
            rows = [[float(t), *_xy(cam_mod.tff_contour(obj, float(t))[0]), obj.curvature_radius(float(t))]
                    for t in ts]
            return ["phi", "x", "y", "curvature_radius"], rows
        if kind == "swinging_flat":
            rows = []
            for t in ts:
                s = cam_mod.sff_contour(obj, float(t))
                rows.append([float(t), *_xy(s.z), s.lam, s.lam1, s.lam2, s.kappa])
            return ["phi", "x", "y", "lambda", "lambda_d1", "lambda_d2", "curvature"], rows
        if kind == "roller":
            rows = []
            for t in ts:
                s = cam_mod.roller_curves(obj, float(t))
                rows.append([float(t), *_xy(s.zB), *_xy(s.zK), s.kappa_B, s.kappa_K,
                             math.degrees(cam_mod.transmission_angle(obj, float(t)))])
            return ["phi", "xB", "yB", "xK", "yK", "curvature_B", "curvature_K", "transmission_angle_deg"], rows
        return ["phi", "psi", "psi_d1", "psi_d2"], [[float(t), *obj.derivs(float(t))[:3]] for t in ts]
    prof = build_profile(p)
    header = ["phi", "x", "y", "support"]
    rows = []
    tool = p.get("tool_radius")
    seed = None
    for t in ts:
        z, _ = profile_mod.pn_point(prof, float(t))
        row = [float(t), z.real, z.imag, float(prof.support(float(t)))]
        if tool:
            psi, x, xs = profile_mod.cnc_linear_toolpath(prof, tool, float(t), seed)
            seed = psi
            row += [psi, x, xs]
        rows.append(row)
    if tool:
        header += ["contact_parameter", "tool_x", "tool_x_shifted"]
    return header, rows


def _xy(z: complex) -> tuple[float, float]:
    return z.real, z.imag


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else fmt(v) for v in row])
    return buf.getvalue()


# ---- figures ---------------------------------------------------------------


def _trace(c: curve_mod.ParametricCurve, n: int) -> np.ndarray:
    return c.points(np.linspace(c.domain[0], c.domain[1], n + 1))


def figure(sc: Scenario, st: Settings = Settings()) -> Figure:
    p = sc.params
    fig = Figure()
    n = min(st.samples, 2048)
    if sc.kind == "curve":
        c = build_curve(p)
        fig.polyline(_trace(c, n))
        ev = curve_mod.evolute(c)
        pts = clip_far(_trace(ev, n), 10 * c.scale())
        fig.polyline(pts, PALETTE[1], 1.0)
        for t in curve_mod.critical_points(c, st.samples).vertices:
            fig.point(c.derivative(t, 0))
    elif sc.kind == "linkage" and p["type"] == "fivebar":
        cfg = build_fivebar(p)
        c = linkage.fivebar_curve(cfg)
        fig.polyline(linkage.fivebar_curve_fast(cfg, np.linspace(0, curve_mod.TWO_PI, n + 1)))
        for x in curve_mod.self_intersections(c, st.samples):
            fig.point(x.point)
        phi = math.radians(p.get("phi_deg", 0.0))
        zA, sol = linkage._fivebar_dyad(cfg, phi)
        zC = linkage.dyad_joint(cfg.l3, zA[0], sol)
        zB0 = cfg.l1 * np.exp(1j * cfg.frame_angle)
        zB = zB0 + cfg.l5 * np.exp(1j * cfg.psi(phi))
        zK = linkage.fivebar_coupler(cfg, phi)[0]
        for a, b in ((0j, zA[0]), (zA[0], zC), (zC, zB), (zB, zB0), (zA[0], zK)):
            fig.segment(a, b, PALETTE[5], 2.0)
    elif sc.kind in ("linkage", "motion"):
        cfg = build_fourbar(p["fourbar"])
        phi = math.radians(p.get("phi_deg", 0.0))
        zA, sol = linkage.fourbar_state(cfg, phi)
        zB = linkage.dyad_joint(cfg.coupler_length, zA[0], sol)
        for a, b in ((cfg.crank_pivot, zA[0]), (zA[0], zB), (zB, cfg.rocker_pivot)):
            fig.segment(a, b, PALETTE[5], 2.0)
        if sc.kind == "motion":
            m = linkage.fourbar_motion(cfg)
            for k, (key, circ) in enumerate(motion.characteristic_circles(m, phi).items()):
                if circ.defined:
                    fig.circle(circ.center, circ.radius, PALETTE[k % len(PALETTE)])
            for label, z in zip(("P1", "P2", "P3"), motion.poles(m, phi)):
                fig.point(z, label=label)
            try:
                fig.point(motion.balls_point(m, phi), PALETTE[2], label="U")
            except KinematicsError:
                pass
        elif "coupler_point" in p:
            c = linkage.fourbar_coupler_curve(cfg, _pt(p["coupler_point"]))
            fig.polyline(_trace(c, n))
    elif sc.kind == "cam":
        obj = build_cam(p)
        kind = p["follower"]
        if kind == "translating_flat":
            fig.polyline(_trace(cam_mod.tff_curve(obj), n), closed=False)
            fig.circle(0j, obj.r0, dash="4 3")
            phi = math.radians(p.get("phi_deg", 0.0))
            zK, contact = cam_mod.tff_contour(obj, phi)
            face = np.exp(-1j * phi)
            fig.segment((contact.real - 20j) * face, (contact.real + 20j) * face, PALETTE[1], 2.0)
            fig.point(zK)
        elif kind == "swinging_flat":
            fig.polyline(_trace(cam_mod.sff_curve(obj), n))
            fig.point(0j, label="A0")
        elif kind == "roller":
            fig.polyline(_trace(cam_mod.roller_center_curve(obj), n), PALETTE[5], 1.0, dash="4 3")
            fig.polyline(_trace(cam_mod.roller_contour_curve(obj), n))
            fig.point(0j, label="A0")
        else:
            pivot = _pt(p.get("pivot", (0.0, 0.0)))
            reg = cam_mod.a0_regions(pivot, math.radians(p["psi0_deg"]), p["length"], obj,
                                     math.radians(p["mu_deg"]), p.get("rho", 0.0))
            lim = 3 * p["length"]
            fig.viewport = (pivot.real - lim, pivot.imag - lim, pivot.real + lim, pivot.imag + lim)
            for b in reg.branches:
                pts = clip_far(b.points - pivot, 2 * lim) + pivot
                fig.polyline(pts, PALETTE[0] if b.side > 0 else PALETTE[2], 1.2)
            for c in reg.admissible():
                fig.point(c.point, PALETTE[1], 4.0, label=c.kind)
            fig.point(pivot, label="B0")
    else:
        prof = build_profile(p)
        fig.polyline(_trace(profile_mod.pn_curve(prof), n))
        if "tool_radius" in p:
            fig.polyline(_trace(profile_mod.tool_ellipse_path(prof, p["tool_radius"]), n), PALETTE[1], 1.0)
        bars = profile_mod.generator_bars(prof)
        a, b, c = bars.joints(math.radians(p.get("phi_deg", 30.0)))
        for u, v in ((0j, a), (a, b), (b, c)):
            fig.segment(u, v, PALETTE[5], 2.0)
    return fig


__all__ = [
    "KINDS", "PARAM_SCHEMAS", "SCENARIO_SCHEMA", "Report", "Scenario", "Settings", "build_cam",
    "build_curve", "build_fivebar", "build_fourbar", "build_law", "build_profile", "csv_text",
    "figure", "fmt", "load", "report", "shipped", "sweep_angles", "sweep_table", "validate",
]
