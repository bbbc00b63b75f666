# Two conflicting goals: look like the target and look like its negative.
# GDE3 spreads the population between the two extremes.
# %%
import numpy as np

from pixelopt import RunConfig, run_experiment
from _targets import OUT, binary_face, save_target

target = save_target("face12_binary.png", binary_face(12))
state = {}


def keep(it, opt, problem, env, changed):
    state["opt"], state["problem"] = opt, problem


cfg = RunConfig(scheme="multiobjective", target=str(target), mode="binary", optimizer="gde3",
                population=100, iterations=200, seed=9)
m = run_experiment(cfg, OUT / "multiobjective_gde3", observer=keep)
opt, problem = state["opt"], state["problem"]
print("front size", m["front"]["size"], "extremes", m["front"]["extremes"])

# the objectives are -PSNR against T and against its inverse; both depend only
# on how many pixels match T, so the front is a ladder of mismatch counts
t = problem.targets[0]
wrong = sorted({int(np.sum(problem.hook(x) != t)) for x in opt.x})
print("distinct mismatch counts on the front:", wrong)
