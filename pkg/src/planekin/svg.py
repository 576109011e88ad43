"""Minimal deterministic SVG 1.1 writer with the y-axis pointing up."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#555555")


def _num(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class Figure:
    """Layers of geometry in model coordinates; rendering maps them to the page."""

    width: int = 640
    height: int = 640
    pad: float = 0.05
    viewport: Optional[tuple[float, float, float, float]] = None
    items: list = field(default_factory=list)
    _extent: list = field(default_factory=list, repr=False)

    def _grow(self, pts: Sequence[complex]) -> None:
        arr = np.asarray(pts, dtype=complex).ravel()
        arr = arr[np.isfinite(arr)]
        if arr.size:
            self._extent.append((arr.real.min(), arr.imag.min(), arr.real.max(), arr.imag.max()))

    def polyline(self, pts, color: str = PALETTE[0], width: float = 1.5, closed: bool = False,
                 dash: str = "", fill: str = "none") -> "Figure":
        pts = np.asarray(pts, dtype=complex)
        self._grow(pts)
        self.items.append(("poly", pts, color, width, closed, dash, fill))
        return self

    def circle(self, center: complex, radius: float, color: str = PALETTE[5], width: float = 1.0,
               dash: str = "") -> "Figure":
        self._grow([center - radius - 1j * radius, center + radius + 1j * radius])
        self.items.append(("circle", complex(center), float(radius), color, width, dash))
        return self

    def point(self, z: complex, color: str = PALETTE[1], size: float = 3.0, label: str = "") -> "Figure":
        self._grow([z])
        self.items.append(("point", complex(z), color, size, label))
        return self

    def segment(self, a: complex, b: complex, color: str = PALETTE[5], width: float = 1.0,
                arrow: bool = False) -> "Figure":
        self._grow([a, b])
        self.items.append(("segment", complex(a), complex(b), color, width, arrow))
        return self

    def text(self, z: complex, label: str, size: float = 12.0) -> "Figure":
        self.items.append(("text", complex(z), label, size))
        return self

    def bounds(self) -> tuple[float, float, float, float]:
        if self.viewport is not None:
            return self.viewport
        if not self._extent:
            return (-1.0, -1.0, 1.0, 1.0)
        e = np.array(self._extent)
        x0, y0, x1, y1 = e[:, 0].min(), e[:, 1].min(), e[:, 2].max(), e[:, 3].max()
        span = max(x1 - x0, y1 - y0, 1e-9)
        cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        half = 0.5 * span * (1 + 2 * self.pad)
        return (cx - half, cy - half, cx + half, cy + half)

    def to_svg(self) -> str:
        x0, y0, x1, y1 = self.bounds()
        sx = self.width / (x1 - x0)
        sy = self.height / (y1 - y0)
        s = min(sx, sy)

        def px(z: complex) -> tuple[str, str]:
            return _num((z.real - x0) * s), _num((y1 - z.imag) * s)

        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">',
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
            'markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>',
            f'<rect width="{self.width}" height="{self.height}" fill="white"/>',
        ]
        for item in self.items:
            kind = item[0]
            if kind == "poly":
                _, pts, color, width, closed, dash, fill = item
                for run in _finite_runs(pts):
                    coords = " ".join(",".join(px(z)) for z in run)
                    tag = "polygon" if closed else "polyline"
                    extra = f' stroke-dasharray="{dash}"' if dash else ""
                    out.append(f'<{tag} points="{coords}" fill="{fill}" stroke="{color}" '
                               f'stroke-width="{_num(width)}"{extra}/>')
            elif kind == "circle":
                _, c, r, color, width, dash = item
                cx, cy = px(c)
                extra = f' stroke-dasharray="{dash}"' if dash else ""
                out.append(f'<circle cx="{cx}" cy="{cy}" r="{_num(r * s)}" fill="none" stroke="{color}" '
                           f'stroke-width="{_num(width)}"{extra}/>')
            elif kind == "point":
                _, z, color, size, label = item
                cx, cy = px(z)
                out.append(f'<circle cx="{cx}" cy="{cy}" r="{_num(size)}" fill="{color}"/>')
                if label:
                    out.append(f'<text x="{_num(float(cx) + 5)}" y="{_num(float(cy) - 5)}" '
                               f'font-size="11" font-family="sans-serif">{escape(label)}</text>')
            elif kind == "segment":
                _, a, b, color, width, arrow = item
                (ax, ay), (bx, by) = px(a), px(b)
                extra = ' marker-end="url(#arrow)"' if arrow else ""
                out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{color}" '
                           f'stroke-width="{_num(width)}"{extra}/>')
            elif kind == "text":
                _, z, label, size = item
                tx, ty = px(z)
                out.append(f'<text x="{tx}" y="{ty}" font-size="{_num(size)}" '
                           f'font-family="sans-serif">{escape(label)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_svg())


def _finite_runs(pts: np.ndarray) -> list[np.ndarray]:
    """Split a polyline at non-finite samples (e.g. evolute points at inflections)."""
    ok = np.isfinite(pts)
    runs, start = [], None
    for k, good in enumerate(ok):
        if good and start is None:
            start = k
        elif not good and start is not None:
            runs.append(pts[start:k])
            start = None
    if start is not None:
        runs.append(pts[start:])
    return [r for r in runs if len(r) >= 2]


def clip_far(pts, radius: float) -> np.ndarray:
    """Replace points farther than ``radius`` from the origin by NaN so they are not drawn."""
    pts = np.asarray(pts, dtype=complex).copy()
    pts[np.abs(pts) > radius] = complex(math.nan, math.nan)
    return pts
