"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

import csv
import functools
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from pixelopt.benchmarks import BENCHMARKS, eval_benchmark, reference_optimum  # noqa: E402
from pixelopt.cli import main as cli_main  # noqa: E402
from pixelopt.gif import write_gif  # noqa: E402
from pixelopt.imaging import load_target, matrix_to_vector, quantize_8bit, write_png  # noqa: E402
from pixelopt.mapping import KnownOptimumMap, linear_error_map  # noqa: E402
from pixelopt.metrics import mse, pcc, psnr, sae, ssim  # noqa: E402
from pixelopt.optimizers import crowding_distance, dominates, rpi_decode, rpi_encode  # noqa: E402
from pixelopt.runner import RunConfig, landscape_grid, run_experiment  # noqa: E402

RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS[number] = f"[FAIL] {number:2d}. {title}: {type(exc).__name__}: {exc}".splitlines()[0]
                raise
            extra = f" ({detail})" if detail else ""
            RESULTS[number] = f"[PASS] {number:2d}. {title}{extra} [{time.perf_counter() - t0:.1f}s]"

        return run

    return wrap


def _gray_target(tmp, h, w, seed=0, name="target.png", low=0):
    rng = np.random.default_rng(seed)
    path = Path(tmp) / name
    write_png(path, rng.integers(low, 256, (h, w)) / 255.0)
    return path


def _log(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


@criterion(1, "spherical anchors at D=65536 and exact optimum image")
def test_01_spherical_anchors(tmp_path):
    d = 65536
    assert eval_benchmark("spherical", np.full(d, 2.0)) == 262144.0
    assert eval_benchmark("spherical", np.full(d, -2.0)) == 262144.0
    assert eval_benchmark("spherical", np.zeros(d)) == 0.0
    t8 = np.random.default_rng(1).integers(0, 256, (256, 256)).astype(np.uint8)
    spec = BENCHMARKS["Spherical"]
    m = KnownOptimumMap(t8 / 255.0, 0.0, spec.lower, spec.upper)
    np.testing.assert_array_equal(quantize_8bit(linear_error_map(np.zeros(d), m)), t8)


@criterion(2, "mean spherical fitness of N(0, 0.5^2) draws in [15900, 16900]")
def test_02_spherical_distribution():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    vals = [eval_benchmark("spherical", rng.normal(0.0, 0.5, 65536), check_domain=False) for _ in range(20)]
    elapsed = time.perf_counter() - t0
    mean = float(np.mean(vals))
    assert 15900 <= mean <= 16900, mean
    assert elapsed < 5.0
    return f"mean {mean:.1f}"


@criterion(3, "metrics match brute-force formulas on 1000 random 4x4 pairs")
def test_03_metric_oracles():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(1000):
        a, b = rng.random((4, 4)), rng.random((4, 4))
        A, B = a.tolist(), b.tolist()
        for got, want, tol in ((sae(a, b), oracles.sae(A, B), 1e-12),
                               (mse(a, b), oracles.mse(A, B), 1e-12),
                               (pcc(a, b), oracles.pcc(A, B), 1e-12),
                               (ssim(a, b), oracles.ssim(A, B), 1e-12),
                               (psnr(a, b), oracles.psnr(A, B), 1e-10)):
            rel = abs(got - want) / abs(want)
            worst = max(worst, rel)
            assert rel <= tol, (got, want)
    return f"worst relative error {worst:.1e}"


@criterion(4, "SSIM constants with L=1")
def test_04_ssim_constants():
    assert ssim(np.zeros((4, 4)), np.ones((4, 4))) == pytest.approx(0.0001 / 1.0001, rel=1e-12, abs=0)
    a = np.random.default_rng(4).random((8, 8))
    assert abs(ssim(a, a) - 1.0) <= 1e-12


@criterion(5, "relative position indexing worked examples")
def test_05_rpi_examples():
    assert rpi_encode([150, 10, 250, 40, 190]).tolist() == [0.6, 0.04, 1.0, 0.16, 0.76]
    assert rpi_decode([0.32, 0.8, 0.1, 0.51, 0.02], [10, 40, 150, 190, 250]).tolist() == [150, 250, 40, 190, 10]


@criterion(6, "linear error map boundary laws for every benchmark at D=900")
def test_06_boundary_laws():
    target = np.random.default_rng(6).integers(0, 256, (30, 30)) / 255.0
    for name, spec in BENCHMARKS.items():
        lo, hi = spec.bounds(900)
        m = KnownOptimumMap(target, reference_optimum(name, 900), lo, hi)
        assert np.all(linear_error_map(hi, m) == 1.0), name
        assert np.all(linear_error_map(lo, m) == 0.0), name
        np.testing.assert_array_equal(linear_error_map(reference_optimum(name, 900), m), target)


@criterion(7, "dominance is a strict partial order; crowding distance examples")
def test_07_dominance_crowding():
    rng = np.random.default_rng(7)
    for _ in range(200):
        pts = rng.integers(0, 5, (15, 2)).astype(float)
        n = len(pts)
        D = [[dominates(pts[i], pts[j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            assert not D[i][i]
            for j in range(n):
                if D[i][j]:
                    for k in range(n):
                        if D[j][k]:
                            assert D[i][k]
    assert np.all(np.isinf(crowding_distance([[0.0, 1.0], [1.0, 0.0]])))
    assert crowding_distance([[0, 4], [1, 2], [2, 0]])[1] == 6.0


@criterion(8, "GDE3 bi-objective desk test on an 8x8 binary target")
def test_08_gde3_desk(tmp_path):
    rng = np.random.default_rng(8)
    t = (rng.random((8, 8)) < 0.5).astype(float)
    write_png(tmp_path / "b.png", t)
    final = {}

    def grab(it, opt, problem, env, changed):
        final["opt"], final["problem"] = opt, problem

    cfg = RunConfig(scheme="multiobjective", target=str(tmp_path / "b.png"), mode="binary",
                    optimizer="gde3", population=100, iterations=200, seed=8, frames=())
    run_experiment(cfg, tmp_path / "run", observer=grab)
    opt, problem = final["opt"], final["problem"]
    F = opt.fx
    for i in range(len(F)):
        for j in range(len(F)):
            assert not dominates(F[i], F[j])
    tv = matrix_to_vector(t)
    err_t = min(np.mean(problem.hook(x) != tv) for x in opt.x)
    err_inv = min(np.mean(problem.hook(x) != 1 - tv) for x in opt.x)
    assert err_t <= 0.05 and err_inv <= 0.05, (err_t, err_inv)
    return f"pixel error {err_t:.3f} to T, {err_inv:.3f} to inverted T"


@criterion(9, "PSO and DE converge on a 10x10 continuous target")
def test_09_convergence(tmp_path):
    path = _gray_target(tmp_path, 10, 10, seed=9)
    tv = matrix_to_vector(load_target(path).matrix)
    expected_random = float(np.sum((tv ** 2 + (1 - tv) ** 2) / 2))
    worst = 0.0
    for opt in ("pso", "de"):
        for seed in range(5):
            t0 = time.perf_counter()
            cfg = RunConfig(target=str(path), optimizer=opt, population=100, iterations=2000,
                            seed=seed, frames=())
            run_experiment(cfg, tmp_path / f"{opt}{seed}")
            assert time.perf_counter() - t0 < 30.0
            _, rows = _log(tmp_path / f"{opt}{seed}" / "log.csv")
            fits = [float(r[2]) for r in rows]
            assert all(b <= a for a, b in zip(fits, fits[1:]))
            ratio = fits[-1] / expected_random
            worst = max(worst, ratio)
            assert ratio <= 0.05, (opt, seed, ratio)
    return f"worst final/random SAE {worst:.2e}"


@criterion(10, "median normalized error: continuous <= discrete <= combinatorial")
def test_10_scheme_ordering(tmp_path):
    path = _gray_target(tmp_path, 10, 10, seed=10, low=1)
    medians = {}
    for scheme in ("continuous", "discrete", "combinatorial"):
        errs = []
        for seed in range(10):
            cfg = RunConfig(scheme=scheme, target=str(path), mode="discrete8", optimizer="pso",
                            population=100, iterations=300, seed=seed, frames=())
            m = run_experiment(cfg, tmp_path / f"{scheme}{seed}")
            scale = 1.0 if scheme == "continuous" else 255.0
            errs.append(m["final_best_fitness"] / (scale * 100))
        medians[scheme] = float(np.median(errs))
    assert medians["continuous"] <= medians["discrete"] <= medians["combinatorial"], medians
    return ", ".join(f"{k} {v:.4f}" for k, v in medians.items())


@criterion(11, "PSO-SCHNP reaches and keeps feasibility")
def test_11_constrained(tmp_path):
    path = _gray_target(tmp_path, 10, 10, seed=11)
    cfg = RunConfig(scheme="constrained", target=str(path), optimizer="pso-schnp",
                    population=100, iterations=500, seed=11, frames=())
    run_experiment(cfg, tmp_path / "run")
    _, rows = _log(tmp_path / "run" / "log.csv")
    viol = [float(r[3]) for r in rows]
    first = next(i for i, v in enumerate(viol) if v == 0.0)
    assert all(v == 0.0 for v in viol[first:])
    return f"feasible from iteration {first}"


@criterion(12, "dynamic 21-frame target: 21 blocks of 200 and exact re-evaluation")
def test_12_dynamic(tmp_path):
    rng = np.random.default_rng(12)
    frames = [rng.integers(0, 256, (6, 6)).astype(np.uint8) for _ in range(21)]
    write_gif(tmp_path / "anim.gif", frames)
    switches = []

    def check(it, opt, problem, env):
        f = problem.objective(env)
        for positions, values in opt.stored_fitness():
            for x, v in zip(positions, values):
                assert v == f(x)
        switches.append(it)

    cfg = RunConfig(scheme="dynamic", target=str(tmp_path / "anim.gif"), optimizer="pso",
                    population=20, iterations=4200, seed=12, frames=())
    run_experiment(cfg, tmp_path / "run", on_change=check)
    _, rows = _log(tmp_path / "run" / "log.csv")
    envs = [int(r[4]) for r in rows]
    assert len(rows) == 4200
    assert [envs.count(k) for k in range(21)] == [200] * 21
    assert envs == sorted(envs)
    assert switches == [200 * k for k in range(1, 21)]


@criterion(13, "landscape grids for target (0.25, 0.75)")
def test_13_landscapes():
    g = np.linspace(0, 1, 101)
    for name in ("sae", "mse"):
        grid = landscape_grid(name, (0.25, 0.75), 101)
        i, j = np.unravel_index(np.nanargmin(grid), grid.shape)
        assert (g[i], g[j]) == (0.25, 0.75)
        assert np.sum(grid == grid[i, j]) == 1
    p = landscape_grid("pcc", (0.25, 0.75), 101)
    above = np.triu_indices(101, 1)  # x2 > x1
    below = np.tril_indices(101, -1)
    assert np.max(np.abs(p[above] - 1.0)) <= 1e-9
    assert np.max(np.abs(p[below] + 1.0)) <= 1e-9


@criterion(14, "identical config and seed give byte-identical outputs")
def test_14_determinism(tmp_path):
    path = _gray_target(tmp_path, 6, 5, seed=14)
    ini = tmp_path / "run.ini"
    ini.write_text(f"[scheme]\nname = constrained\ntarget = {path}\n"
                   "[optimizer]\nname = pso-schnp\npopulation = 20\niterations = 120\nseed = 42\n"
                   f"[output]\ndirectory = {tmp_path / 'unused'}\n")
    assert cli_main(["run", str(ini), "--out", str(tmp_path / "a")]) == 0
    assert cli_main(["run", str(ini), "--out", str(tmp_path / "b")]) == 0
    files = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*")
                   if p.suffix in (".csv", ".png", ".gif"))
    assert any(f.suffix == ".gif" for f in files) and any(f.suffix == ".png" for f in files)
    for f in files:
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes(), f
    return f"{len(files)} files compared"


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
