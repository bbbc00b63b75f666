"""Problem construction for the image-reconstruction mapping schemes.

``build_problem`` turns a scheme name, a target image and a metric into a
:class:`ProblemSpec`: objective closures in minimization orientation, search
and feasible bounds, the pre-evaluation hook, the environment schedule and
the mapper used to draw solutions.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import benchmarks
from .imaging import TargetImage, matrix_to_vector, quantize_8bit, vector_to_matrix
from .mapping import KnownOptimumMap, HeatmapPalette, error_heatmap, linear_error_map
from .metrics import (
    MetricId,
    SsimConstants,
    mse,
    partial_fitness,
    pcc,
    sae,
    ssim,
)
from .optimizers.constraints import violation_sum
from .optimizers.encodings import binarize_threshold, discretize_round, rpi_decode

__all__ = [
    "SCHEMES",
    "ProblemSpec",
    "build_problem",
    "environment_schedule",
    "environment_index",
    "invert_target",
    "average_image",
    "psnr_floor",
]

SCHEMES = (
    "continuous",
    "discrete",
    "binary",
    "combinatorial",
    "partial",
    "constrained",
    "dynamic",
    "multiobjective",
    "known-optimum",
)

CONSTRAINED_SEARCH = (-1.0, 2.0)


def psnr_floor(R, n_pixels):
    """Stand-in for ``-PSNR`` of an exact replica, below any finite value."""
    return -(10.0 * math.log10(R * R * n_pixels)) - 60.0


def _identity(x):
    return x


def _zero_violation(x):
    return 0.0


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """An image-based optimization problem ready to hand to an optimizer.

    Positions live in ``[lower, upper]``. ``hook`` turns a position into the
    values that are actually scored (rounded, thresholded or decoded); those
    values are on a ``value_scale`` of 1 or 255 relative to normalized pixels.
    ``targets`` holds one flattened target (in value units) per environment.
    """

    scheme: str
    kind: str
    shape: tuple
    lower: np.ndarray
    upper: np.ndarray
    feasible_lower: np.ndarray
    feasible_upper: np.ndarray
    targets: tuple
    metric: MetricId | None = None
    n_objectives: int = 1
    hook: Callable = _identity
    value_scale: float = 1.0
    schedule: tuple = (0,)
    known_map: KnownOptimumMap | None = None
    benchmark: str | None = None
    psnr_range: float = 1.0
    ssim_consts: SsimConstants = field(default_factory=SsimConstants)

    def __post_init__(self):
        if not self.schedule or any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
            raise ValueError("environment schedule must be non-empty and strictly increasing")
        if np.any(self.feasible_lower < self.lower) or np.any(self.feasible_upper > self.upper):
            raise ValueError("feasible region must lie inside the search bounds")

    @property
    def dim(self):
        return int(self.lower.size)

    @property
    def constrained(self):
        return bool(np.any(self.feasible_lower > self.lower) or np.any(self.feasible_upper < self.upper))

    @property
    def n_environments(self):
        return len(self.targets)

    @property
    def base_multiset(self):
        """Pixel values a combinatorial solution must be a permutation of."""
        return np.sort(self.targets[0])

    # scoring -----------------------------------------------------------

    def _score(self, values, target):
        name = self.metric.name
        if name == "sae":
            return sae(values, target)
        if name == "mse":
            return mse(values, target)
        if name == "psnr":
            return self._neg_psnr(values, target)
        if name == "pcc":
            try:
                return -pcc(values, target)
            except ZeroDivisionError:
                return 0.0
        if name == "ssim":
            return -ssim(values, target, self.ssim_consts)
        return partial_fitness(values, target, self.metric.p, self.ssim_consts)

    def _neg_psnr(self, values, target):
        m = mse(values, target)
        if m == 0:
            return psnr_floor(self.psnr_range, values.size)
        return -10.0 * math.log10(self.psnr_range ** 2 / m)

    def evaluate(self, values, env=0):
        """Fitness of already-decoded values in environment ``env``."""
        values = np.asarray(values, dtype=np.float64)
        if self.benchmark is not None:
            return benchmarks.eval_benchmark(self.benchmark, values, check_domain=False)
        if self.n_objectives == 2:
            t, t_inv = self.targets[0], self.targets[1]
            return np.array([self._neg_psnr(values, t), self._neg_psnr(values, t_inv)])
        return self._score(values, self.targets[env])

    def objective(self, env=0, encoded=True):
        """Closure ``position -> fitness``; ``encoded=False`` skips the hook."""
        hook = self.hook if encoded else _identity

        def f(x):
            return self.evaluate(hook(x), env)

        return f

    def violation(self, x):
        return violation_sum(x, self.feasible_lower, self.feasible_upper)

    def violation_function(self):
        return self.violation if self.constrained else _zero_violation

    # schedule ----------------------------------------------------------

    def with_iterations(self, iterations):
        """Copy with the environments spread evenly over ``iterations``."""
        return replace(self, schedule=environment_schedule(iterations, self.n_environments))

    def environment(self, iteration):
        return environment_index(iteration, self.schedule)

    # drawing -----------------------------------------------------------

    def pixels(self, x):
        """Normalized pixel values shown for position ``x`` (clipped to [0, 1])."""
        if self.known_map is not None:
            raise ValueError("known-optimum problems are drawn with the linear error map")
        return np.clip(np.asarray(self.hook(x), dtype=np.float64) / self.value_scale, 0.0, 1.0)

    def image(self, x):
        """Grayscale matrix visualizing position ``x``."""
        h, w = self.shape
        if self.known_map is not None:
            s = np.clip(np.asarray(x, dtype=np.float64), self.lower, self.upper)
            return linear_error_map(s, self.known_map)
        return vector_to_matrix(self.pixels(x), h, w)

    def heatmap(self, x, env=0):
        """Error heatmap of ``x`` against the environment's target (or optimum)."""
        h, w = self.shape
        width = float(np.max(self.upper - self.lower))
        if self.known_map is not None:
            return error_heatmap(np.asarray(x, dtype=np.float64), self.known_map.optimum, h, w,
                                 HeatmapPalette(width))
        values = np.asarray(self.hook(x), dtype=np.float64)
        target = self.targets[min(env, len(self.targets) - 1)]
        return error_heatmap(values, target, h, w, HeatmapPalette(width))

    @property
    def violation_saturation(self):
        """Violation sum drawn as a fully red border."""
        slack = (self.upper - self.lower) - (self.feasible_upper - self.feasible_lower)
        return float(np.sum(slack)) or 1.0


def environment_schedule(iterations, n_frames):
    """Start iteration of each of ``n_frames`` equal blocks; the last absorbs the rest."""
    iterations = int(iterations)
    if n_frames < 1:
        raise ValueError("need at least one environment")
    if n_frames == 1:
        return (0,)
    block = iterations // n_frames
    if block < 1:
        raise ValueError(f"{iterations} iterations cannot host {n_frames} environments")
    return tuple(k * block for k in range(n_frames))


def environment_index(iteration, schedule):
    """Index of the environment active at ``iteration``."""
    if iteration < 0:
        raise ValueError("iterations start at 0")
    return bisect.bisect_right(schedule, iteration) - 1


def invert_target(target):
    """Complement every pixel of a binary target."""
    if target.mode != "binary":
        raise ValueError("only binary targets can be inverted")
    return TargetImage(tuple(1.0 - f for f in target.frames), "binary")


def average_image(best_solutions, h, w):
    """Per-pixel mean of several solutions, laid out as an image."""
    sols = [np.asarray(s, dtype=np.float64) for s in best_solutions]
    if not sols:
        raise ValueError("need at least one solution to average")
    stack = np.stack(sols)
    if stack.shape[1] != h * w:
        raise ValueError("solution length does not match the image size")
    if np.any(stack < 0) or np.any(stack > 1):
        raise ValueError("solutions must be normalized to [0, 1]")
    return vector_to_matrix(stack.mean(axis=0), h, w)


def _as_metric(metric):
    if metric is None or isinstance(metric, MetricId):
        return metric
    return MetricId.parse(str(metric))


def build_problem(scheme, target, metric="sae", *, p=None, benchmark=None, iterations=None,
                  psnr_range=None):
    """Build the :class:`ProblemSpec` of a mapping scheme.

    Parameters
    ----------
    scheme : str
        One of :data:`SCHEMES`.
    target : TargetImage
        Target image; dynamic schemes use every frame, the others the first.
    metric : str or MetricId
        Image metric (ignored by ``partial``, ``multiobjective`` and
        ``known-optimum``, which fix their own objective).
    p : float, optional
        Separable fraction for ``partial`` (default 0.5).
    benchmark : str, optional
        Benchmark function name for ``known-optimum``.
    iterations : int, optional
        Iteration budget; spreads the environments of a dynamic target.
    psnr_range : float, optional
        Override of the PSNR/SSIM value range (defaults to the value scale).
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")
    metric = _as_metric(metric)
    h, w = target.shape
    d = h * w
    t0 = matrix_to_vector(target.matrix)
    ones = np.ones(d)
    kw = dict(shape=(h, w), targets=(t0,), metric=metric, hook=_identity, value_scale=1.0)
    lower, upper = 0.0 * ones, ones.copy()
    kind = "continuous"

    if scheme == "continuous":
        pass
    elif scheme == "discrete":
        if target.mode != "discrete8":
            raise ValueError("the discrete scheme needs a discrete8 target")
        kind = "discrete8"
        upper = 255.0 * ones
        kw.update(targets=(quantize_8bit(t0).astype(np.float64),), hook=discretize_round,
                  value_scale=255.0)
    elif scheme == "binary":
        if target.mode != "binary":
            raise ValueError("the binary scheme needs a binary target")
        kind = "binary"
        kw.update(hook=binarize_threshold)
    elif scheme == "combinatorial":
        if target.mode != "discrete8":
            raise ValueError("the combinatorial scheme needs a discrete8 target")
        kind = "permutation"
        t255 = quantize_8bit(t0).astype(np.float64)
        base = np.sort(t255)
        if base[-1] <= 0:
            raise ValueError("the combinatorial scheme needs a target with a non-black pixel")
        kw.update(targets=(t255,), hook=lambda x, _b=base: rpi_decode(x, _b), value_scale=255.0)
    elif scheme == "partial":
        if metric is not None and metric.name == "partial":
            p = metric.p
        p = 0.5 if p is None else float(p)
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        kw.update(metric=MetricId("partial", p))
    elif scheme == "constrained":
        lower = CONSTRAINED_SEARCH[0] * ones
        upper = CONSTRAINED_SEARCH[1] * ones
    elif scheme == "dynamic":
        if len(target.frames) < 2:
            raise ValueError("the dynamic scheme needs a multi-frame target")
        kw.update(targets=tuple(matrix_to_vector(f) for f in target.frames))
    elif scheme == "multiobjective":
        if target.mode != "binary":
            raise ValueError("the multi-objective scheme needs a binary target")
        kind = "binary"
        inv = invert_target(target)
        kw.update(targets=(t0, matrix_to_vector(inv.matrix)), hook=binarize_threshold,
                  n_objectives=2, metric=MetricId("psnr"))
    elif scheme == "known-optimum":
        if benchmark is None:
            raise ValueError("the known-optimum scheme needs a benchmark name")
        spec = benchmarks.get_benchmark(benchmark)
        lower, upper = spec.bounds(d)
        opt = benchmarks.reference_optimum(spec.name, d)
        kw.update(metric=None, benchmark=spec.name,
                  known_map=KnownOptimumMap(target.matrix, opt, lower, upper))

    if scheme == "constrained":
        flo, fhi = 0.0 * ones, ones.copy()
    else:
        flo, fhi = lower, upper
    scale = kw["value_scale"]
    R = float(psnr_range) if psnr_range is not None else scale
    spec = ProblemSpec(scheme=scheme, kind=kind, lower=lower, upper=upper,
                       feasible_lower=flo, feasible_upper=fhi, psnr_range=R,
                       ssim_consts=SsimConstants(L=R), **kw)
    if iterations is not None:
        spec = spec.with_iterations(iterations)
    return spec
