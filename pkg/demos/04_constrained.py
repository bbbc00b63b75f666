# A widened search box [-1, 2] with the feasible pixels in [0, 1].
# Frames carry a border that turns from red to green as the violation drops;
# out-of-range pixels show in blue (too dark) or orange (too bright).
# %%
import csv

from pixelopt import RunConfig, run_experiment
from _targets import OUT, face, save_target

target = save_target("face20.png", face(20))

for opt in ("pso-nch", "pso-schnp", "de"):
    cfg = RunConfig(scheme="constrained", target=str(target), optimizer=opt,
                    population=100, iterations=400, seed=5)
    run_experiment(cfg, OUT / f"constrained_{opt}")
    with open(OUT / f"constrained_{opt}" / "log.csv") as fh:
        rows = list(csv.DictReader(fh))
    feasible = [int(r["iteration"]) for r in rows if float(r["violation_sum"]) == 0.0]
    first = feasible[0] if feasible else None
    print(f"{opt:9s} final SAE {float(rows[-1]['best_fitness']):8.3f}  "
          f"violation {float(rows[-1]['violation_sum']):.3f}  first feasible at {first}")

# without constraint handling the swarm happily scores pixels outside [0, 1];
# with the feasibility-first rule it settles inside and stays there
