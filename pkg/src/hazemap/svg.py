"""Dependency-free SVG scatter plots for embedding output.

Fixed 800x800 viewport, radius-2 dots, a 256-stop perceptually ordered color
ramp over an optional per-point value (gray when absent). Output formatting
is fixed so identical inputs give identical bytes.
"""

from __future__ import annotations

import numpy as np

__all__ = ["scatter_svg", "save_scatter"]

VIEWPORT = 800
MARGIN = 40
RADIUS = 2.0
FALLBACK_COLOR = "#808080"

# Anchor colors of the standard viridis ramp, dark-violet to yellow.
_ANCHORS = np.array([
    (0.267004, 0.004874, 0.329415),
    (0.282623, 0.140926, 0.457517),
    (0.253935, 0.265254, 0.529983),
    (0.206756, 0.371758, 0.553117),
    (0.163625, 0.471133, 0.558148),
    (0.127568, 0.566949, 0.550556),
    (0.134692, 0.658636, 0.517649),
    (0.266941, 0.748751, 0.440573),
    (0.477504, 0.821444, 0.318195),
    (0.741388, 0.873449, 0.149561),
    (0.993248, 0.906157, 0.143936),
])


def _build_ramp(stops: int = 256) -> list[str]:
    xs = np.linspace(0.0, 1.0, stops)
    anchor_xs = np.linspace(0.0, 1.0, _ANCHORS.shape[0])
    rgb = np.column_stack([
        np.interp(xs, anchor_xs, _ANCHORS[:, c]) for c in range(3)
    ])
    levels = np.clip((rgb * 255.0).round().astype(int), 0, 255)
    return [f"#{r:02x}{g:02x}{b:02x}" for r, g, b in levels]


_RAMP = _build_ramp()


def _colors(values, n: int) -> list[str]:
    if values is None:
        return [FALLBACK_COLOR] * n
    v = np.asarray(values, dtype=np.float64)
    if v.shape != (n,):
        raise ValueError(f"expected {n} color values, got shape {v.shape}")
    lo, hi = float(np.min(v)), float(np.max(v))
    if not np.isfinite([lo, hi]).all() or hi == lo:
        return [FALLBACK_COLOR] * n
    idx = ((v - lo) / (hi - lo) * (len(_RAMP) - 1)).round().astype(int)
    return [_RAMP[i] for i in idx]


def scatter_svg(coords, values=None) -> str:
    """Render 2D points as an SVG document string."""
    pts = np.asarray(coords, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected n x 2 coords, got shape {pts.shape}")
    n = pts.shape[0]
    colors = _colors(values, n)

    span = VIEWPORT - 2 * MARGIN
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    extent = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    scale = span / extent if extent > 0 else 0.0
    center = (lo + hi) / 2.0
    # equal scale on both axes, y flipped to screen orientation
    xs = (pts[:, 0] - center[0]) * scale + VIEWPORT / 2.0
    ys = VIEWPORT / 2.0 - (pts[:, 1] - center[1]) * scale

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEWPORT}" '
        f'height="{VIEWPORT}" viewBox="0 0 {VIEWPORT} {VIEWPORT}">',
        f'<rect width="{VIEWPORT}" height="{VIEWPORT}" fill="white"/>',
    ]
    for i in range(n):
        lines.append(
            f'<circle cx="{xs[i]:.2f}" cy="{ys[i]:.2f}" r="{RADIUS:g}" '
            f'fill="{colors[i]}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def save_scatter(path, coords, values=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(scatter_svg(coords, values))
