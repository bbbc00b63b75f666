# Any benchmark with a known optimum can be drawn against a reference picture:
# a variable at the optimum shows the picture's pixel, at the upper bound white,
# at the lower bound black.
# %%
import numpy as np

from pixelopt import RunConfig, run_experiment
from pixelopt.benchmarks import BENCHMARKS, reference_optimum
from pixelopt.imaging import quantize_8bit, write_png
from pixelopt.mapping import KnownOptimumMap, linear_error_map
from _targets import OUT, face, save_target

img = face(30)
target = save_target("face.png", img)

# %%
# A few hand-made points on the 900-D sphere
spec = BENCHMARKS["Spherical"]
m = KnownOptimumMap(img, 0.0, spec.lower, spec.upper)
rng = np.random.default_rng(0)
for label, x in (("optimum", np.zeros(900)), ("noise 0.5", np.clip(rng.normal(0, 0.5, 900), -5.12, 5.12)),
                 ("upper bound", np.full(900, 5.12))):
    write_png(OUT / f"sphere_{label.replace(' ', '_')}.png", linear_error_map(x, m))
    print(f"{label:12s} fitness {spec.func(x):10.2f}")
print("optimum reproduces the picture:",
      np.array_equal(quantize_8bit(linear_error_map(np.zeros(900), m)), quantize_8bit(img)))

# %%
for name in ("Rastrigin", "Rosenbrock", "StyblinskiTang"):
    for opt in ("pso", "de"):
        cfg = RunConfig(scheme="known-optimum", target=str(target), benchmark=name, optimizer=opt,
                        population=100, iterations=300, seed=11)
        res = run_experiment(cfg, OUT / f"known_{name}_{opt}")
        err = np.abs(np.array(res["final_best"]) - reference_optimum(name, 900)).mean()
        print(f"{name:15s} {opt:3s} fitness {res['final_best_fitness']:12.2f} mean |x - o| {err:.3f}")
