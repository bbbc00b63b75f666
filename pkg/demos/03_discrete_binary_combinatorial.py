# Continuous optimizers on discrete, binary and permutation problems.
# %%
import numpy as np

from pixelopt import RunConfig, run_experiment
from pixelopt.optimizers import rpi_decode, rpi_encode
from _targets import OUT, binary_face, face, save_target

gray = save_target("face16.png", face(16))
binary = save_target("face16_binary.png", binary_face(16))

# %%
# Discrete: positions live in [0, 255] and get rounded right before scoring.
# Binary: positions in [0, 1] thresholded at 0.5.
for scheme, path, mode in (("discrete", gray, "discrete8"), ("binary", binary, "binary")):
    for opt in ("pso", "de"):
        cfg = RunConfig(scheme=scheme, target=str(path), mode=mode, optimizer=opt,
                        population=100, iterations=300, seed=3)
        m = run_experiment(cfg, OUT / f"{scheme}_{opt}")
        print(scheme, opt, "final SAE", m["final_best_fitness"])

# %%
# Combinatorial: rearrange the target's own pixels. PSO works on real keys
# decoded by rank; DE swaps positions directly.
perm = [150, 10, 250, 40, 190]
print("encode", rpi_encode(perm), "decode", rpi_decode([0.32, 0.8, 0.1, 0.51, 0.02], perm))

for opt in ("pso", "de"):
    cfg = RunConfig(scheme="combinatorial", target=str(gray), mode="discrete8", optimizer=opt,
                    population=100, iterations=300, seed=3)
    m = run_experiment(cfg, OUT / f"combinatorial_{opt}")
    print("combinatorial", opt, "final SAE", m["final_best_fitness"])

# every image in the run is a shuffle of the same pixels
print("pixel multiset kept:", np.allclose(np.sort(np.load(OUT / "combinatorial_de" / "frame_vectors.npy")[-1]),
                                          np.sort(face(16).ravel())))
