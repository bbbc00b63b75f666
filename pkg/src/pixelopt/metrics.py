"""Image comparison metrics used as objective functions.

All metrics are global: they depend only on the multiset of pixel pairs, so
they can be evaluated on matrices or directly on flattened candidate vectors.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MetricId",
    "SsimConstants",
    "IdenticalImagesError",
    "sae",
    "mse",
    "psnr",
    "pcc",
    "ssim",
    "partial_fitness",
    "to_minimization",
    "METRIC_NAMES",
]

METRIC_NAMES = ("sae", "mse", "psnr", "pcc", "ssim", "partial")


class IdenticalImagesError(ZeroDivisionError):
    """PSNR of two identical images is infinite."""


@dataclass(frozen=True)
class MetricId:
    """Metric name plus the separability level ``p`` for ``partial``."""

    name: str
    p: float | None = None

    def __post_init__(self):
        name = self.name.lower()
        if name not in METRIC_NAMES:
            raise ValueError(f"unknown metric {self.name!r}")
        object.__setattr__(self, "name", name)
        if name == "partial":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError("partial metric needs p in [0, 1]")
        elif self.p is not None:
            raise ValueError(f"metric {name} takes no p")

    @classmethod
    def parse(cls, text):
        """Parse ``"sae"``, ``"SSIM"`` or ``"partial(0.5)"`` / ``"partial:0.5"``."""
        m = re.fullmatch(r"\s*partial\s*[(:]\s*([0-9.eE+-]+)\s*\)?\s*", text, re.I)
        if m:
            return cls("partial", float(m.group(1)))
        return cls(text.strip())

    def __str__(self):
        return f"partial({self.p})" if self.name == "partial" else self.name


@dataclass(frozen=True)
class SsimConstants:
    k1: float = 0.01
    k2: float = 0.03
    L: float = 1.0

    @property
    def c1(self):
        return (self.k1 * self.L) ** 2

    @property
    def c2(self):
        return (self.k2 * self.L) ** 2

    @property
    def c3(self):
        return self.c2 / 2


def _pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def sae(a, b):
    """Sum of absolute pixel differences."""
    a, b = _pair(a, b)
    return float(np.abs(a - b).sum())


def mse(a, b):
    """Mean squared pixel difference."""
    a, b = _pair(a, b)
    d = a - b
    return float(np.dot(d.ravel(), d.ravel()) / d.size)


def psnr(a, b, R=1.0):
    """Peak signal-to-noise ratio in dB; larger means more similar.

    ``R`` is the value range of the image type (1 for continuous images, 255
    for 8-bit discrete ones). Identical images raise
    :class:`IdenticalImagesError`.
    """
    m = mse(a, b)
    if m == 0:
        raise IdenticalImagesError("identical images: PSNR is infinite")
    return 10.0 * math.log10(R * R / m)


def pcc(a, b):
    """Pearson correlation over all pixels of two images."""
    a, b = _pair(a, b)
    da = a - a.mean()
    db = b - b.mean()
    den = math.sqrt(float(np.dot(da.ravel(), da.ravel())) * float(np.dot(db.ravel(), db.ravel())))
    if den == 0:
        raise ZeroDivisionError("correlation is undefined for a constant image")
    return float(np.dot(da.ravel(), db.ravel()) / den)


def ssim(a, b, consts=SsimConstants()):
    """Structural similarity with a single window covering the whole image.

    Uses population statistics (divisor ``m*n``) and ``alpha = beta = gamma = 1``.
    With ``c3 = c2 / 2`` the contrast and structure terms collapse into
    ``(2*cov + c2) / (var_a + var_b + c2)``.
    """
    a, b = _pair(a, b)
    mu_a = a.mean()
    mu_b = b.mean()
    da = (a - mu_a).ravel()
    db = (b - mu_b).ravel()
    n = da.size
    var_a = float(np.dot(da, da)) / n
    var_b = float(np.dot(db, db)) / n
    cov = float(np.dot(da, db)) / n
    c1, c2 = consts.c1, consts.c2
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    return float(num / den)


def partial_fitness(x, t, p, consts=SsimConstants()):
    """SAE on the first ``floor(p*D)`` components plus ``|1/SSIM|`` on the rest.

    The two parts are disjoint: ``[0, floor(pD))`` and ``[floor(pD), D)``.
    An empty part contributes nothing.
    """
    x, t = _pair(np.ravel(x), np.ravel(t))
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    k = math.floor(p * x.size)
    total = sae(x[:k], t[:k]) if k else 0.0
    if k < x.size:
        s = ssim(x[k:], t[k:], consts)
        if s == 0:
            raise ZeroDivisionError("SSIM of the non-separable part is 0")
        total += abs(1.0 / s)
    return total


_MAXIMIZED = {"psnr", "pcc", "ssim"}


def to_minimization(metric):
    """Wrap a metric so that smaller is always better.

    Returns a callable mapping a raw metric value to its minimization value:
    PSNR, PCC and SSIM are negated, the error measures pass through.
    """
    name = metric.name if isinstance(metric, MetricId) else MetricId.parse(str(metric)).name
    if name in _MAXIMIZED:
        return lambda value: -value
    return lambda value: value
