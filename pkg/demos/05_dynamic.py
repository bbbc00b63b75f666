# A moving target: each GIF frame is one environment. On every switch the
# population is re-scored against the new frame before it moves on.
# %%
import csv

from pixelopt import RunConfig, run_experiment
from _targets import OUT, moving_bar

anim = moving_bar()
switches = []


def on_change(it, opt, problem, env):
    switches.append((it, env, round(opt.best[1], 2)))


cfg = RunConfig(scheme="dynamic", target=str(anim), optimizer="pso", population=30,
                iterations=2100, seed=7, frames=tuple(range(99, 2100, 100)))
m = run_experiment(cfg, OUT / "dynamic_pso", on_change=on_change)
for it, env, f in switches[:5]:
    print(f"iteration {it}: environment {env}, best after re-scoring {f}")

with open(OUT / "dynamic_pso" / "log.csv") as fh:
    rows = list(csv.DictReader(fh))
ends = [rows[k - 1] for k, _, _ in switches]
print("best SAE at the end of each environment:", [round(float(r["best_fitness"]), 2) for r in ends])
# timeline.gif shows the reconstruction chasing the bar
