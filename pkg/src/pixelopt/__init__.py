"""Render optimization candidates as grayscale images.

Metaheuristics (PSO, DE, GDE3) search for vectors that are shown as images,
either directly against a target picture or by mapping the error to a known
optimum of a benchmark function.
"""

from .benchmarks import BENCHMARKS, BenchmarkSpec, eval_benchmark, get_benchmark, reference_optimum
from .gif import write_gif
from .imaging import TargetImage, load_target, matrix_to_vector, quantize_8bit, vector_to_matrix, write_png
from .mapping import (
    HeatmapPalette,
    KnownOptimumMap,
    direct_map,
    error_heatmap,
    linear_error_map,
    render_constrained,
    render_violation_border,
)
from .metrics import MetricId, SsimConstants, mse, partial_fitness, pcc, psnr, sae, ssim, to_minimization
from .schemes import SCHEMES, ProblemSpec, average_image, build_problem, invert_target
from .runner import ConfigError, RunConfig, aggregate_runs, landscape_grid, parse_config, run_experiment

__all__ = [
    "BENCHMARKS",
    "BenchmarkSpec",
    "ConfigError",
    "HeatmapPalette",
    "KnownOptimumMap",
    "MetricId",
    "ProblemSpec",
    "RunConfig",
    "SCHEMES",
    "SsimConstants",
    "TargetImage",
    "aggregate_runs",
    "average_image",
    "build_problem",
    "direct_map",
    "error_heatmap",
    "eval_benchmark",
    "get_benchmark",
    "invert_target",
    "landscape_grid",
    "linear_error_map",
    "load_target",
    "matrix_to_vector",
    "mse",
    "parse_config",
    "partial_fitness",
    "pcc",
    "psnr",
    "quantize_8bit",
    "reference_optimum",
    "render_constrained",
    "render_violation_border",
    "run_experiment",
    "sae",
    "ssim",
    "to_minimization",
    "vector_to_matrix",
    "write_gif",
    "write_png",
]
