"""Turning candidate solutions into images.

``direct_map`` shows the decision variables themselves as pixels;
``linear_error_map`` shows how far each variable is from a known optimum,
relative to a reference target image. ``error_heatmap`` and
``render_violation_border`` produce RGB companions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imaging import matrix_to_vector, vector_to_matrix

__all__ = [
    "direct_map",
    "KnownOptimumMap",
    "linear_error_map",
    "HeatmapPalette",
    "error_heatmap",
    "render_violation_border",
    "render_constrained",
    "BORDER_WIDTH",
]

BORDER_WIDTH = 2

GREEN = np.array([0.0, 255.0, 0.0])
RED = np.array([255.0, 0.0, 0.0])


def _round_half_up(x):
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5)


def direct_map(s, h, w):
    """Pixels are the decision variables, laid out column-major."""
    s = np.asarray(s, dtype=np.float64)
    if np.any(s < 0) or np.any(s > 1):
        raise ValueError("direct mapping needs components in [0, 1]")
    return vector_to_matrix(s, h, w)


@dataclass(frozen=True)
class KnownOptimumMap:
    """Reference data for mapping a solution relative to a known optimum.

    ``target`` is an ``(h, w)`` matrix; ``optimum``, ``lower`` and ``upper``
    are length ``h*w`` vectors (scalars are broadcast).
    """

    target: np.ndarray
    optimum: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        target = np.array(self.target, dtype=np.float64)
        if target.ndim != 2:
            raise ValueError("target must be a 2-D matrix")
        n = target.size
        vecs = []
        for name in ("optimum", "lower", "upper"):
            v = np.broadcast_to(np.asarray(getattr(self, name), dtype=np.float64), (n,)).copy()
            v.flags.writeable = False
            vecs.append(v)
        o, l, u = vecs
        if np.any(l >= u):
            raise ValueError("lower bounds must be strictly below upper bounds")
        if np.any(o <= l) or np.any(o >= u):
            raise ValueError("the optimum must lie strictly inside the bounds")
        target.flags.writeable = False
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "optimum", o)
        object.__setattr__(self, "lower", l)
        object.__setattr__(self, "upper", u)

    @property
    def shape(self):
        return self.target.shape


def linear_error_map(s, m):
    """Scale each variable's error against the target pixel.

    A variable at the optimum shows the target pixel, at the upper bound a
    white pixel and at the lower bound a black one; in between the shade is
    interpolated linearly on the respective side.
    """
    s = np.asarray(s, dtype=np.float64)
    h, w = m.shape
    if s.shape != (h * w,):
        raise ValueError(f"expected a vector of length {h * w}")
    if np.any(s < m.lower) or np.any(s > m.upper):
        raise ValueError("solution lies outside the problem bounds")
    t = matrix_to_vector(m.target)
    e = s - m.optimum
    out = t.copy()
    up = e > 0
    r = e[up] / (m.upper[up] - m.optimum[up])
    # t + r*(1 - t) rearranged so that r == 1 yields exactly 1
    out[up] = t[up] * (1.0 - r) + r
    down = e < 0
    r = e[down] / (m.optimum[down] - m.lower[down])
    out[down] = t[down] * (1.0 + r)
    return vector_to_matrix(out, h, w)


@dataclass(frozen=True)
class HeatmapPalette:
    """White-to-red ramp; ``max_error`` maps to the deepest red."""

    max_error: float = 1.0

    def colors(self, err):
        err = np.abs(np.asarray(err, dtype=np.float64))
        frac = np.clip(err / self.max_error, 0.0, 1.0)
        other = 255 - _round_half_up(255.0 * frac)
        rgb = np.empty(frac.shape + (3,), dtype=np.uint8)
        rgb[..., 0] = 255
        rgb[..., 1] = other
        rgb[..., 2] = other
        return rgb


def error_heatmap(s, t, h, w, palette=HeatmapPalette()):
    """RGB image coloring each pixel by ``|s_k - t_k|``; all white iff ``s == t``."""
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    if s.shape != t.shape:
        raise ValueError("length mismatch between solution and target")
    err = vector_to_matrix(np.abs(s - t), h, w)
    return palette.colors(err)


def _as_rgb(img):
    img = np.asarray(img)
    if img.ndim == 3:
        if img.dtype != np.uint8:
            raise ValueError("RGB images must be uint8")
        return img
    g = _round_half_up(np.clip(np.asarray(img, dtype=np.float64), 0, 1) * 255).astype(np.uint8)
    return np.repeat(g[..., None], 3, axis=2)


def render_violation_border(img, violation_sum, v_max):
    """Surround an image with a border from green (feasible) to red (``>= v_max``).

    ``img`` may be a normalized grayscale matrix or an ``(h, w, 3)`` uint8 image.
    """
    rgb = _as_rgb(img)
    frac = min(max(float(violation_sum) / float(v_max), 0.0), 1.0)
    color = _round_half_up(GREEN + frac * (RED - GREEN)).astype(np.uint8)
    h, w = rgb.shape[:2]
    b = BORDER_WIDTH
    out = np.empty((h + 2 * b, w + 2 * b, 3), dtype=np.uint8)
    out[...] = color
    out[b:b + h, b:b + w] = rgb
    return out


def render_constrained(s, h, w, feasible_lower, feasible_upper):
    """Grayscale image of ``s`` with out-of-domain variables highlighted.

    Feasible variables are drawn as gray levels. Variables below the feasible
    range are drawn in blue, those above it in orange; the hue deepens with the
    size of the violation relative to the feasible width.
    """
    s = np.asarray(s, dtype=np.float64)
    lo = np.broadcast_to(np.asarray(feasible_lower, dtype=np.float64), s.shape)
    hi = np.broadcast_to(np.asarray(feasible_upper, dtype=np.float64), s.shape)
    width = hi - lo
    gray = np.clip((s - lo) / width, 0, 1)
    rgb = _as_rgb(vector_to_matrix(gray, h, w)).astype(np.float64)
    below = vector_to_matrix(np.clip((lo - s) / width, 0, 1), h, w)
    above = vector_to_matrix(np.clip((s - hi) / width, 0, 1), h, w)
    blue = np.array([0.0, 64.0, 255.0])
    orange = np.array([255.0, 140.0, 0.0])
    for amount, hue in ((below, blue), (above, orange)):
        mask = amount > 0
        a = 0.5 + 0.5 * amount[mask][:, None]
        rgb[mask] = (1 - a) * rgb[mask] + a * hue
    return _round_half_up(rgb).astype(np.uint8)
