"""Images of polar grids under a harmonic mapping, as SVG or PPM."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .mapclass import HarmonicMapping, eval_mapping


@dataclass(frozen=True)
class RenderSpec:
    rings: int = 12
    spokes: int = 24
    max_radius: float = 0.98
    samples_per_curve: int = 256
    format: str = "svg"
    output_path: str = "mapping.svg"
    width: int = 600
    height: int = 600

    def __post_init__(self):
        if self.rings < 1 or self.spokes < 1:
            raise ValueError("rings and spokes must be >= 1")
        if self.samples_per_curve < 64:
            raise ValueError("samples_per_curve must be >= 64")
        if not 0 < self.max_radius < 1:
            raise ValueError("max_radius must lie in (0, 1)")
        if self.format not in ("svg", "ppm"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.width < 2 or self.height < 2:
            raise ValueError("image must be at least 2x2 pixels")


def grid_curves(f: HarmonicMapping, spec: RenderSpec) -> list[np.ndarray]:
    """Images of the concentric circles and radial segments, one array per curve."""
    t = np.linspace(0, 2 * np.pi, spec.samples_per_curve)
    s = np.linspace(0, spec.max_radius, spec.samples_per_curve)
    curves = []
    for i in range(1, spec.rings + 1):
        r = spec.max_radius * i / spec.rings
        curves.append(eval_mapping(f, r * np.exp(1j * t)))
    for j in range(spec.spokes):
        curves.append(eval_mapping(f, s * np.exp(2j * np.pi * j / spec.spokes)))
    return curves


def _frame(curves, width, height, pad=0.05):
    pts = np.concatenate(curves)
    lo = np.array([pts.real.min(), pts.imag.min()])
    hi = np.array([pts.real.max(), pts.imag.max()])
    span = max(hi - lo) * (1 + 2 * pad) or 1.0
    center = (lo + hi) / 2
    scale = min(width, height) / span

    def to_px(w):
        x = (w.real - center[0]) * scale + width / 2
        y = height / 2 - (w.imag - center[1]) * scale
        return x, y

    return to_px


def to_svg(curves, width: int = 600, height: int = 600) -> str:
    to_px = _frame(curves, width, height)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for w in curves:
        x, y = to_px(w)
        d = "M" + " L".join(f"{a:.2f},{b:.2f}" for a, b in zip(x, y))
        lines.append(f'<path d="{d}" fill="none" stroke="black" stroke-width="0.8"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def rasterize(curves, width: int = 600, height: int = 600) -> np.ndarray:
    """Boolean ``height x width`` mask with the polylines drawn one pixel wide."""
    to_px = _frame(curves, width, height)
    mask = np.zeros((height, width), dtype=bool)
    for w in curves:
        x, y = to_px(w)
        for x0, y0, x1, y1 in zip(x[:-1], y[:-1], x[1:], y[1:]):
            n = int(max(abs(x1 - x0), abs(y1 - y0))) + 2
            xs = np.rint(np.linspace(x0, x1, n)).astype(int)
            ys = np.rint(np.linspace(y0, y1, n)).astype(int)
            ok = (xs >= 0) & (xs < width) & (ys >= 0) & (ys < height)
            mask[ys[ok], xs[ok]] = True
    return mask


def to_ppm(mask: np.ndarray) -> bytes:
    h, w = mask.shape
    rgb = np.where(mask[..., None], 0, 255).astype(np.uint8).repeat(3, axis=2)
    return f"P6\n{w} {h}\n255\n".encode() + rgb.tobytes()


def render(f: HarmonicMapping, spec: RenderSpec) -> Path:
    curves = grid_curves(f, spec)
    path = Path(spec.output_path)
    if spec.format == "svg":
        path.write_text(to_svg(curves, spec.width, spec.height))
    else:
        path.write_bytes(to_ppm(rasterize(curves, spec.width, spec.height)))
    return path
