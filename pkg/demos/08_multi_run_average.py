# Several seeds of the same experiment, summarized as one average image per
# sampled iteration plus a strip of the individual runs.
# %%
from pixelopt import RunConfig
from pixelopt.runner import run_suite
from _targets import OUT, face, save_target

target = save_target("face.png", face(30))
for opt in ("pso", "de"):
    cfg = RunConfig(target=str(target), optimizer=opt, population=50, iterations=300,
                    frames=(10, 100, 299))
    res = run_suite(cfg, seeds=range(5), out_dir=OUT / f"suite_{opt}", jobs=2)
    for it, r in res.items():
        print(opt, it, "per-run SAE", [round(f, 2) for f in r["fitness"]])
# output/suite_*/aggregate/montage_*.png: five runs then their average
