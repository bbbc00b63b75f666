"""Experiment orchestration: configs, seeded runs, frame emission and logs.

A run writes into its output directory::

    log.csv             one row per iteration
    frames/             best image, error heatmap (and violation border) per
                        emitted iteration
    frame_vectors.npy   normalized best image vectors at emitted iterations
    timeline.gif        the emitted best images as an animation
    manifest.json       written last; its presence marks a finished run
"""

from __future__ import annotations

import configparser
import csv
import dataclasses
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .gif import write_gif
from .imaging import TargetImage, load_target, matrix_to_vector, quantize_8bit, write_png, write_rgb_png
from .mapping import render_constrained, render_violation_border
from .metrics import MetricId, SsimConstants, mse, pcc, psnr, sae, ssim, IdenticalImagesError
from .optimizers import DE, GDE3, PSO, PermutationDE, make_streams, rpi_encode
from .schemes import SCHEMES, average_image, build_problem

__all__ = [
    "ConfigError",
    "RunConfig",
    "RunRecord",
    "parse_config",
    "load_config",
    "run_experiment",
    "run_suite",
    "aggregate_runs",
    "landscape_grid",
    "write_landscape",
    "default_frames",
    "inspect_manifest",
    "write_gif",
    "OUTPUT_ROOT_ENV",
]

log = logging.getLogger(__name__)

OUTPUT_ROOT_ENV = "PIXELOPT_OUTPUT_ROOT"
OPTIMIZERS = ("pso", "pso-nch", "pso-schnp", "de", "gde3")
CSV_FIELDS = ("iteration", "evaluations", "best_fitness", "violation_sum", "env_index")
CSV_FIELDS_MO = ("iteration", "evaluations", "best_fitness", "best_fitness_2", "violation_sum", "env_index")


class ConfigError(ValueError):
    """Invalid run configuration; ``problems`` lists ``(field, message)`` pairs."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(f"{k}: {m}" for k, m in self.problems))


@dataclass
class RunConfig:
    scheme: str = "continuous"
    target: str | None = None
    mode: str = "continuous"
    metric: str = "sae"
    p: float | None = None
    benchmark: str | None = None
    shape: tuple | None = None
    psnr_range: float | None = None
    optimizer: str = "pso"
    population: int = 100
    budget: int | None = None
    iterations: int | None = None
    seed: int = 0
    params: dict = field(default_factory=dict)
    frames: tuple | None = None
    gif_delay: int = 10
    output: str = "output"

    def validate(self):
        bad = []
        if self.scheme not in SCHEMES:
            bad.append(("scheme", f"unknown scheme {self.scheme!r}"))
        if self.optimizer not in OPTIMIZERS:
            bad.append(("optimizer", f"unknown optimizer {self.optimizer!r}"))
        if self.mode not in ("continuous", "discrete8", "binary"):
            bad.append(("mode", f"unknown target mode {self.mode!r}"))
        try:
            MetricId.parse(self.metric)
        except ValueError as exc:
            bad.append(("metric", str(exc)))
        if self.target is None and not (self.scheme == "known-optimum" and self.shape):
            bad.append(("target", "a target image path is required"))
        if self.scheme == "known-optimum" and not self.benchmark:
            bad.append(("benchmark", "required by the known-optimum scheme"))
        if self.population < 4:
            bad.append(("population", "must be at least 4"))
        if self.budget is not None and self.budget < self.population:
            bad.append(("budget", "must allow at least one evaluation per member"))
        if self.iterations is not None and self.iterations < 1:
            bad.append(("iterations", "must be positive"))
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            bad.append(("p", "must lie in [0, 1]"))
        mo = self.scheme == "multiobjective"
        if mo != (self.optimizer == "gde3"):
            bad.append(("optimizer", "gde3 is used for, and only for, the multiobjective scheme"))
        if self.gif_delay < 0:
            bad.append(("gif_delay", "must be non-negative"))
        if bad:
            raise ConfigError(bad)
        return self

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["shape"] = list(self.shape) if self.shape else None
        d["frames"] = list(self.frames) if self.frames is not None else None
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if d.get("shape"):
            d["shape"] = tuple(d["shape"])
        if d.get("frames") is not None:
            d["frames"] = tuple(d["frames"])
        return cls(**d)


@dataclass(frozen=True)
class RunRecord:
    iteration: int
    evaluations: int
    best_fitness: float
    violation_sum: float
    env_index: int
    best_fitness_2: float | None = None

    def row(self):
        vals = [self.iteration, self.evaluations, repr(float(self.best_fitness))]
        if self.best_fitness_2 is not None:
            vals.append(repr(float(self.best_fitness_2)))
        vals += [repr(float(self.violation_sum)), self.env_index]
        return vals


# config parsing ---------------------------------------------------------

_OPT_FLOATS = ("omega", "c1", "c2", "F", "CR")


def _parse_int_list(text):
    out = []
    for part in text.replace(",", " ").split():
        out.append(int(part))
    return tuple(sorted(set(out)))


def parse_config(text):
    """Parse the sectioned ``key = value`` config format into a :class:`RunConfig`.

    Sections: ``[scheme]`` (name, target, mode, metric, p, benchmark, shape,
    psnr_range), ``[optimizer]`` (name, population, budget, iterations, seed,
    omega, c1, c2, F, CR, rule) and ``[output]`` (directory, frames,
    gif_delay).
    """
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError([("config", str(exc))]) from exc
    bad = []
    known = {
        "scheme": {"name", "target", "mode", "metric", "p", "benchmark", "shape", "psnr_range"},
        "optimizer": {"name", "population", "budget", "iterations", "seed", "rule", *_OPT_FLOATS},
        "output": {"directory", "frames", "gif_delay"},
    }
    for section in cp.sections():
        if section not in known:
            bad.append((section, "unknown section"))
            continue
        for key in cp[section]:
            if key not in known[section]:
                bad.append((f"{section}.{key}", "unknown key"))

    def get(section, key, conv=str, default=None):
        if not cp.has_option(section, key):
            return default
        raw = cp.get(section, key).strip()
        try:
            return conv(raw)
        except (TypeError, ValueError) as exc:
            bad.append((f"{section}.{key}", f"cannot parse {raw!r}: {exc}"))
            return default

    def shape(raw):
        h, w = raw.lower().split("x")
        return int(h), int(w)

    def frames(raw):
        return None if raw.lower() == "default" else _parse_int_list(raw)

    cfg = RunConfig(
        scheme=get("scheme", "name", default="continuous"),
        target=get("scheme", "target"),
        mode=get("scheme", "mode", default="continuous"),
        metric=get("scheme", "metric", default="sae"),
        p=get("scheme", "p", float),
        benchmark=get("scheme", "benchmark"),
        shape=get("scheme", "shape", shape),
        psnr_range=get("scheme", "psnr_range", float),
        optimizer=get("optimizer", "name", default="pso"),
        population=get("optimizer", "population", int, 100),
        budget=get("optimizer", "budget", int),
        iterations=get("optimizer", "iterations", int),
        seed=get("optimizer", "seed", int, 0),
        frames=get("output", "frames", frames),
        gif_delay=get("output", "gif_delay", int, 10),
        output=get("output", "directory", default="output"),
    )
    params = {}
    for key in _OPT_FLOATS:
        v = get("optimizer", key, float)
        if v is not None:
            params[key] = v
    rule = get("optimizer", "rule")
    if rule is not None:
        if rule not in ("plain", "deb"):
            bad.append(("optimizer.rule", "must be plain or deb"))
        params["rule"] = rule
    cfg.params = params
    if bad:
        raise ConfigError(bad)
    return cfg.validate()


def load_config(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError([("config", f"cannot read {path}: {exc}")]) from exc
    cfg = parse_config(text)
    if cfg.target is not None and not os.path.isabs(cfg.target):
        cfg.target = str((Path(path).parent / cfg.target).resolve())
    return cfg


# running ------------------------------------------------------------------

def default_frames(iterations):
    """1, 2, 5, 10, 20, 50, ... plus 1000, 10000 and the final iteration."""
    out = set()
    k = 1
    while k < iterations:
        for m in (1, 2, 5):
            if m * k < iterations:
                out.add(m * k)
        k *= 10
    out.update(i for i in (1000, 10000) if i < iterations)
    out.add(iterations - 1)
    return tuple(sorted(out))


def _target_for(cfg):
    if cfg.target is not None:
        return load_target(cfg.target, cfg.mode)
    h, w = cfg.shape
    return TargetImage((np.full((h, w), 128 / 255),), "discrete8")


def _plan(cfg, target):
    d = target.size
    budget = cfg.budget
    if cfg.iterations is not None:
        budget = cfg.iterations * cfg.population
    if budget is None:
        budget = 10_000 * d
    iterations = budget // cfg.population
    return budget, iterations


def make_optimizer(cfg, problem):
    """Instantiate the configured optimizer on a built problem."""
    p = dict(cfg.params)
    rule = p.pop("rule", None)
    kw = {k: p[k] for k in ("F", "CR") if k in p}
    pso_kw = {k: p[k] for k in ("omega", "c1", "c2") if k in p}
    n = cfg.population
    violation = problem.violation_function()
    if cfg.optimizer == "gde3":
        return GDE3(problem.objective(0), problem.lower, problem.upper, n, cfg.seed, **kw), True
    if cfg.optimizer.startswith("pso"):
        if rule is None:
            rule = "deb" if cfg.optimizer == "pso-schnp" else "plain"
        initial = None
        lower, upper = problem.lower, problem.upper
        if problem.kind == "permutation":
            gen = make_streams(cfg.seed).init
            initial = np.array([rpi_encode(gen.permutation(problem.base_multiset)) for _ in range(n)])
        return PSO(problem.objective(0), lower, upper, n, cfg.seed, rule, violation,
                   initial=initial, **pso_kw), True
    if problem.kind == "permutation":
        return PermutationDE(problem.objective(0, encoded=False), problem.base_multiset, n, cfg.seed,
                             **{k: v for k, v in kw.items() if k == "F"}), False
    return DE(problem.objective(0), problem.lower, problem.upper, n, cfg.seed, rule or "plain",
              violation, **kw), True


def _output_dir(cfg, out_dir=None):
    if out_dir is not None:
        return Path(out_dir)
    path = Path(cfg.output)
    root = os.environ.get(OUTPUT_ROOT_ENV)
    if root and not path.is_absolute():
        path = Path(root) / path
    return path


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        if header:
            wr.writerow(header)
        wr.writerows(rows)


def _write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def run_experiment(cfg, out_dir=None, observer=None, on_change=None):
    """Execute one configured run and write its outputs.

    Parameters
    ----------
    cfg : RunConfig
    out_dir : path-like, optional
        Overrides the configured output directory.
    observer : callable, optional
        Called as ``observer(iteration, optimizer, problem, env, changed)``
        after every iteration; ``changed`` is true on the first iteration of a
        new environment.
    on_change : callable, optional
        Called as ``on_change(iteration, optimizer, problem, env)`` right
        after the population was re-evaluated for a new environment and
        before the iteration's step.

    Returns
    -------
    dict
        The manifest, also written to ``manifest.json``.
    """
    cfg.validate()
    started = time.perf_counter()
    target = _target_for(cfg)
    budget, iterations = _plan(cfg, target)
    if iterations < 1:
        raise ConfigError([("budget", "smaller than one iteration")])
    problem = build_problem(cfg.scheme, target, cfg.metric, p=cfg.p, benchmark=cfg.benchmark,
                            iterations=iterations, psnr_range=cfg.psnr_range)
    frames = default_frames(iterations) if cfg.frames is None else tuple(
        i for i in cfg.frames if 0 <= i < iterations)
    frame_set = set(frames)
    out = _output_dir(cfg, out_dir)
    mo = problem.n_objectives == 2
    h, w = problem.shape

    manifest = {
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "budget": budget,
        "iterations": iterations,
        "population": cfg.population,
        "shape": [h, w],
        "schedule": list(problem.schedule),
        "log": "log.csv",
        "gif": "timeline.gif",
        "frame_vectors": "frame_vectors.npy",
        "frames": [],
        "status": "running",
    }
    try:
        (out / "frames").mkdir(parents=True, exist_ok=True)
        for stale in ("manifest.json",):
            if (out / stale).exists():
                (out / stale).unlink()

        opt, encoded = make_optimizer(cfg, problem)
        records = []
        gif_frames = []
        vectors = []
        env = 0
        for it in range(iterations):
            changed = False
            if it > 0:
                new_env = problem.environment(it)
                if new_env != env:
                    env = new_env
                    opt.reevaluate(problem.objective(env, encoded))
                    changed = True
                    if on_change is not None:
                        on_change(it, opt, problem, env)
                opt.step(problem.objective(env, encoded))
            pos, fit, viol = opt.best
            if mo:
                e1, e2 = opt.extremes()
                rec = RunRecord(it, opt.evaluations, opt.fx[e1, 0], viol, env, opt.fx[e2, 1])
            else:
                rec = RunRecord(it, opt.evaluations, fit, viol, env)
            records.append(rec)
            if it in frame_set:
                entry = _emit_frame(out, problem, opt, it, env, rec, mo)
                manifest["frames"].append(entry)
                img = problem.image(pos)
                gif_frames.append(quantize_8bit(img))
                vectors.append(matrix_to_vector(img))
            if observer is not None:
                observer(it, opt, problem, env, changed)

        header = CSV_FIELDS_MO if mo else CSV_FIELDS
        _write_csv(out / "log.csv", header, [r.row() for r in records])
        if gif_frames:
            write_gif(out / "timeline.gif", gif_frames, cfg.gif_delay)
        else:
            manifest["gif"] = None
        np.save(out / "frame_vectors.npy", np.array(vectors).reshape(len(vectors), h * w))
        pos, fit, viol = opt.best
        manifest.update(
            evaluations=opt.evaluations,
            reevaluations=opt.reevaluations,
            final_best=[float(v) for v in np.asarray(pos)],
            final_best_fitness=(float(fit) if not mo else [float(v) for v in fit]),
            final_violation=float(viol),
        )
        if mo:
            e1, e2 = opt.extremes()
            manifest["front"] = {
                "size": int(opt.x.shape[0]),
                "extremes": [[float(v) for v in opt.fx[e1]], [float(v) for v in opt.fx[e2]]],
            }
        manifest["status"] = "complete"
    except OSError as exc:
        manifest["status"] = "failed"
        manifest["error"] = str(exc)
        manifest["duration_seconds"] = time.perf_counter() - started
        try:
            _write_json(out / "manifest.json", manifest)
        except OSError:
            log.error("could not write the partial manifest to %s", out)
        raise
    manifest["duration_seconds"] = time.perf_counter() - started
    _write_json(out / "manifest.json", manifest)
    return manifest


def _emit_frame(out, problem, opt, it, env, rec, mo):
    pos, fit, viol = opt.best
    tag = f"{it:07d}"
    entry = {"iteration": it, "best_fitness": float(rec.best_fitness)}
    name = f"frames/best_{tag}.png"
    write_png(out / name, problem.image(pos))
    entry["image"] = name
    name = f"frames/heatmap_{tag}.png"
    write_rgb_png(out / name, problem.heatmap(pos, env))
    entry["heatmap"] = name
    if problem.constrained:
        h, w = problem.shape
        base = render_constrained(pos, h, w, problem.feasible_lower, problem.feasible_upper)
        name = f"frames/border_{tag}.png"
        write_rgb_png(out / name, render_violation_border(base, viol, problem.violation_saturation))
        entry["border"] = name
        entry["violation_sum"] = float(viol)
    if mo:
        e2 = opt.extremes()[1]
        name = f"frames/best2_{tag}.png"
        write_png(out / name, problem.image(opt.x[e2]))
        entry["image_2"] = name
        entry["best_fitness_2"] = float(rec.best_fitness_2)
    return entry


def inspect_manifest(path, out_dir=None):
    """Re-render the final best solution stored in a manifest.

    Writes ``inspect_best.png`` and ``inspect_heatmap.png`` (plus a bordered
    image for constrained runs) next to the manifest unless ``out_dir`` is
    given. Returns the list of written files.
    """
    path = Path(path)
    manifest = json.loads(path.read_text())
    cfg = RunConfig.from_dict(manifest["config"])
    target = _target_for(cfg)
    problem = build_problem(cfg.scheme, target, cfg.metric, p=cfg.p, benchmark=cfg.benchmark,
                            iterations=manifest["iterations"], psnr_range=cfg.psnr_range)
    x = np.asarray(manifest["final_best"], dtype=np.float64)
    out = Path(out_dir) if out_dir is not None else path.parent
    out.mkdir(parents=True, exist_ok=True)
    env = problem.environment(manifest["iterations"] - 1)
    written = [out / "inspect_best.png", out / "inspect_heatmap.png"]
    write_png(written[0], problem.image(x))
    write_rgb_png(written[1], problem.heatmap(x, env))
    if problem.constrained:
        h, w = problem.shape
        base = render_constrained(x, h, w, problem.feasible_lower, problem.feasible_upper)
        written.append(out / "inspect_border.png")
        write_rgb_png(written[-1], render_violation_border(base, problem.violation(x),
                                                           problem.violation_saturation))
    return written


# multiple runs --------------------------------------------------------------

def _run_one(args):
    cfg, out_dir = args
    return run_experiment(cfg, out_dir)


def run_suite(cfg, seeds, out_dir=None, jobs=1):
    """Run ``cfg`` once per seed (into ``seed_<n>/``) and aggregate the results."""
    root = _output_dir(cfg, out_dir)
    tasks = [(dataclasses.replace(cfg, seed=int(s)), root / f"seed_{int(s)}") for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            manifests = list(pool.map(_run_one, tasks))
    else:
        manifests = [_run_one(t) for t in tasks]
    dirs = [d for _, d in tasks]
    return aggregate_runs(manifests, None, root / "aggregate", run_dirs=dirs)


def _comparable(config):
    c = dict(config)
    c.pop("seed", None)
    c.pop("output", None)
    return c


def aggregate_runs(manifests, sample_iterations=None, out_dir=None, run_dirs=None):
    """Average images and montages across independent runs of one config.

    Parameters
    ----------
    manifests : sequence of dict or path-like
        Manifests (or paths to ``manifest.json``) of finished runs.
    sample_iterations : sequence of int, optional
        Iterations to aggregate; defaults to the frames all runs share.
    out_dir : path-like, optional
        Where ``average_<it>.png``, ``montage_<it>.png`` and ``summary.csv`` go.
    run_dirs : sequence of path-like, optional
        Run directories when ``manifests`` are dicts.

    Returns
    -------
    dict
        ``{iteration: {"average": matrix, "images": [matrices], "fitness": [...]}}``
    """
    loaded, dirs = [], []
    for k, m in enumerate(manifests):
        if isinstance(m, (str, os.PathLike)):
            dirs.append(Path(m).parent)
            loaded.append(json.loads(Path(m).read_text()))
        else:
            loaded.append(m)
            if run_dirs is None:
                raise ValueError("run_dirs is required when passing manifest dicts")
            dirs.append(Path(run_dirs[k]))
    if not loaded:
        raise ValueError("no runs to aggregate")
    ref = _comparable(loaded[0]["config"])
    for m in loaded[1:]:
        if _comparable(m["config"]) != ref:
            raise ConfigError([("config", "runs differ in more than their seed")])
    h, w = loaded[0]["shape"]
    per_run = []
    for m, d in zip(loaded, dirs):
        vecs = np.load(d / m["frame_vectors"])
        its = [f["iteration"] for f in m["frames"]]
        fits = [f["best_fitness"] for f in m["frames"]]
        per_run.append({it: (vecs[k], fits[k]) for k, it in enumerate(its)})
    if sample_iterations is None:
        common = set(per_run[0])
        for r in per_run[1:]:
            common &= set(r)
        sample_iterations = sorted(common)
    result = {}
    rows = []
    for it in sample_iterations:
        if any(it not in r for r in per_run):
            raise ValueError(f"iteration {it} was not emitted by every run")
        sols = [r[it][0] for r in per_run]
        images = [s.reshape((h, w), order="F") for s in sols]
        avg = average_image(sols, h, w)
        fits = [r[it][1] for r in per_run]
        result[it] = {"average": avg, "images": images, "fitness": fits}
        for m, f in zip(loaded, fits):
            rows.append([it, m["seed"], repr(float(f))])
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for it, r in result.items():
            write_png(out / f"average_{it:07d}.png", r["average"])
            write_png(out / f"montage_{it:07d}.png", _montage(r["images"] + [r["average"]]))
        _write_csv(out / "summary.csv", ("iteration", "seed", "best_fitness"), rows)
    return result


def _montage(images, gap=1):
    h, w = images[0].shape
    strip = np.ones((h, len(images) * (w + gap) - gap))
    for k, im in enumerate(images):
        strip[:, k * (w + gap):k * (w + gap) + w] = im
    return strip


# landscapes -------------------------------------------------------------------

def landscape_grid(metric, target2, resolution=101, consts=SsimConstants()):
    """Metric value between every 2-pixel image on a grid over ``[0, 1]^2`` and a target.

    ``grid[i, j]`` compares ``(g[i], g[j])`` with ``target2`` where
    ``g = linspace(0, 1, resolution)``. Raw metric orientation; cells where
    the metric is undefined (constant images for PCC, identical images for
    PSNR) are NaN.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    t = np.asarray(target2, dtype=np.float64)
    if t.shape != (2,) or np.any(t < 0) or np.any(t > 1):
        raise ValueError("target must be two values in [0, 1]")
    m = metric if isinstance(metric, MetricId) else MetricId.parse(str(metric))
    if m.name == "partial":
        raise ValueError("landscapes are defined for sae, mse, psnr, pcc and ssim")
    fn = {
        "sae": sae,
        "mse": mse,
        "psnr": psnr,
        "pcc": pcc,
        "ssim": lambda a, b: ssim(a, b, consts),
    }[m.name]
    g = np.linspace(0.0, 1.0, resolution)
    grid = np.empty((resolution, resolution))
    for i, x1 in enumerate(g):
        for j, x2 in enumerate(g):
            try:
                grid[i, j] = fn(np.array([x1, x2]), t)
            except (ZeroDivisionError, IdenticalImagesError):
                grid[i, j] = np.nan
    return grid


def write_landscape(prefix, grid):
    """Write ``<prefix>.csv`` and a min-max normalized ``<prefix>.png``.

    CSV row ``i`` holds ``x1 = g[i]``, column ``j`` holds ``x2 = g[j]``; no header.
    """
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    _write_csv(prefix.with_suffix(".csv"), [], [[repr(float(v)) for v in row] for row in grid])
    finite = grid[np.isfinite(grid)]
    lo, hi = (finite.min(), finite.max()) if finite.size else (0.0, 1.0)
    norm = np.where(np.isfinite(grid), (grid - lo) / ((hi - lo) or 1.0), 0.0)
    # rows of the image run along x2 (top = 1), columns along x1
    write_png(prefix.with_suffix(".png"), np.flipud(norm.T))
    return prefix.with_suffix(".csv"), prefix.with_suffix(".png")
