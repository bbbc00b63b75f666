# Rebuilding a 30x30 image with PSO and DE, one pixel per decision variable.
# The best image of each emitted iteration lands in output/continuous_*/frames,
# and timeline.gif strings them together.
# %%
import numpy as np

from pixelopt import RunConfig, run_experiment
from _targets import OUT, face, save_target

target = save_target("face.png", face())

for opt in ("pso", "de"):
    cfg = RunConfig(scheme="continuous", target=str(target), metric="sae", optimizer=opt,
                    population=100, iterations=500, seed=1)
    m = run_experiment(cfg, OUT / f"continuous_{opt}")
    fr = m["frames"]
    print(opt, "SAE at", [(f["iteration"], round(f["best_fitness"], 2)) for f in fr])

# %%
# Other metrics work the same way, only the objective changes. PCC ignores
# brightness and contrast, so its best image can look washed out even when
# the correlation is nearly perfect.
for metric in ("mse", "psnr", "pcc", "ssim"):
    cfg = RunConfig(target=str(target), metric=metric, population=50, iterations=200, seed=1,
                    frames=(199,))
    m = run_experiment(cfg, OUT / f"continuous_pso_{metric}")
    x = np.array(m["final_best"])
    print(f"{metric:5s} final objective {m['final_best_fitness']:.4f}, mean pixel {x.mean():.3f}")
