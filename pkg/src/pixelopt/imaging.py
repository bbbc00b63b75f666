"""Grayscale image plumbing: loading targets, vector/matrix layout, quantization.

A *pixel matrix* is a 2-D ``float64`` array of normalized intensities in
``[0, 1]``. A *candidate vector* is a 1-D array of decision variables. The
two are related by a column-major layout: ``A[i, j] = s[j * h + i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, ImageSequence

__all__ = [
    "TargetImage",
    "load_target",
    "vector_to_matrix",
    "matrix_to_vector",
    "quantize_8bit",
    "rgb_to_gray8",
    "write_png",
    "write_rgb_png",
]

MODES = ("continuous", "discrete8", "binary")

# PIL modes that carry 8 bits per channel
_EIGHT_BIT_MODES = {"L", "P", "RGB", "RGBA", "LA", "1"}


def _readonly(a):
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class TargetImage:
    """A target image, possibly with several frames (dynamic targets).

    Parameters
    ----------
    frames : tuple of ndarray
        One ``(h, w)`` matrix of normalized intensities per frame.
    mode : {"continuous", "discrete8", "binary"}
        How the intensities are interpreted by the optimization schemes.
    """

    frames: tuple
    mode: str = "continuous"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown target mode {self.mode!r}")
        frames = tuple(_readonly(f) for f in self.frames)
        if not frames:
            raise ValueError("a target needs at least one frame")
        shape = frames[0].shape
        for f in frames:
            if f.ndim != 2 or f.shape != shape:
                raise ValueError("all frames must be 2-D and share one shape")
            if np.any(f < 0) or np.any(f > 1):
                raise ValueError("pixel values must lie in [0, 1]")
            if self.mode == "binary" and not np.all((f == 0) | (f == 1)):
                raise ValueError("binary targets may only contain 0 and 1")
            if self.mode == "discrete8":
                k = f * 255
                if not np.allclose(k, np.round(k), rtol=0, atol=1e-9):
                    raise ValueError("discrete8 targets must be multiples of 1/255")
        object.__setattr__(self, "frames", frames)

    @property
    def matrix(self):
        return self.frames[0]

    @property
    def shape(self):
        return self.frames[0].shape

    @property
    def size(self):
        h, w = self.shape
        return h * w


def rgb_to_gray8(rgb):
    """Rec. 601 luma of an 8-bit RGB array, rounded half up to 8 bits."""
    rgb = np.asarray(rgb, dtype=np.float64)
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.clip(np.floor(y + 0.5), 0, 255).astype(np.uint8)


def _frame_to_gray8(im):
    if im.mode not in _EIGHT_BIT_MODES:
        raise ValueError(f"unsupported bit depth / pixel mode {im.mode!r}")
    if im.mode == "L":
        return np.asarray(im, dtype=np.uint8)
    if im.mode == "1":
        return np.asarray(im.convert("L"), dtype=np.uint8)
    if im.mode == "LA":
        return np.asarray(im, dtype=np.uint8)[..., 0]
    rgb = np.asarray(im.convert("RGB"), dtype=np.uint8)
    if np.array_equal(rgb[..., 0], rgb[..., 1]) and np.array_equal(rgb[..., 1], rgb[..., 2]):
        return rgb[..., 0].copy()
    return rgb_to_gray8(rgb)


def load_target(path, mode="continuous"):
    """Load a PNG or (multi-frame) GIF as a :class:`TargetImage`.

    Pixel byte ``k`` becomes the normalized value ``k / 255``. Color images are
    reduced to 8-bit luma first. In ``binary`` mode every pixel must be 0 or
    255.
    """
    if mode not in MODES:
        raise ValueError(f"unknown target mode {mode!r}")
    path = Path(path)
    try:
        im = Image.open(path)
    except (OSError, ValueError) as exc:
        raise OSError(f"cannot read image {path}: {exc}") from exc
    with im:
        if im.format not in ("PNG", "GIF"):
            raise ValueError(f"{path}: only PNG and GIF are supported, got {im.format}")
        raw = [_frame_to_gray8(frame.copy()) for frame in ImageSequence.Iterator(im)]
    if mode == "binary":
        for f in raw:
            if not np.all((f == 0) | (f == 255)):
                raise ValueError(f"{path}: binary targets may only contain pixels 0 and 255")
    frames = tuple(f.astype(np.float64) / 255.0 for f in raw)
    return TargetImage(frames, mode)


def vector_to_matrix(s, h, w):
    """Lay out a candidate vector as an ``h x w`` matrix, column by column.

    >>> vector_to_matrix([0.1, 0.2, 0.3, 0.4], 2, 2)
    array([[0.1, 0.3],
           [0.2, 0.4]])
    """
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 1 or s.size != h * w:
        raise ValueError(f"vector of length {s.size} cannot fill a {h}x{w} image")
    return s.reshape((h, w), order="F")


def matrix_to_vector(a):
    """Inverse of :func:`vector_to_matrix`."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return a.reshape(-1, order="F")


def quantize_8bit(a):
    """Map ``[0, 1]`` intensities to bytes with round-half-up.

    Values outside ``[0, 1]`` raise instead of being clamped.
    """
    a = np.asarray(a, dtype=np.float64)
    if np.any(~np.isfinite(a)) or np.any(a < 0) or np.any(a > 1):
        raise ValueError("pixel values must lie in [0, 1] to be quantized")
    return np.floor(a * 255.0 + 0.5).astype(np.uint8)


def write_png(path, a):
    """Write a normalized matrix as an 8-bit grayscale PNG."""
    Image.fromarray(quantize_8bit(a), mode="L").save(path, format="PNG")


def write_rgb_png(path, rgb):
    rgb = np.asarray(rgb)
    if rgb.dtype != np.uint8 or rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValueError("expected an (h, w, 3) uint8 array")
    Image.fromarray(rgb, mode="RGB").save(path, format="PNG")
