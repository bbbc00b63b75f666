# Image metrics as fitness functions, and what their landscapes look like
# on a two-pixel image.
# %%
import numpy as np

from pixelopt import landscape_grid, mse, pcc, psnr, sae, ssim, to_minimization
from pixelopt.runner import write_landscape
from _targets import OUT

a = np.array([[0.0, 1.0]])
b = np.array([[1.0, 0.0]])
print("sae", sae(a, b), "mse", mse(a, b))
print("psnr of an mse 0.01 pair:", psnr(np.zeros(1), np.array([0.1])))
print("pcc of an image with its negative:", pcc(a, b))
print("ssim(all black, all white):", ssim(np.zeros((4, 4)), np.ones((4, 4))))

# similarity metrics get flipped so every objective is minimized
print("minimized pcc of 1.0 ->", to_minimization("pcc")(1.0))

# %%
# Landscapes: x1 and x2 are the two pixel values, the target sits at (0.25, 0.75).
OUT.mkdir(exist_ok=True)
for name in ("sae", "mse", "psnr", "pcc", "ssim"):
    grid = landscape_grid(name, (0.25, 0.75), resolution=101)
    write_landscape(OUT / f"landscape_{name}", grid)
    i, j = np.unravel_index(np.nanargmin(grid) if name in ("sae", "mse") else np.nanargmax(grid), grid.shape)
    print(f"{name:5s} best cell at x1={i / 100:.2f}, x2={j / 100:.2f}")

# pcc only sees the ordering of the two pixels: +1 above the diagonal, -1 below
p = landscape_grid("pcc", (0.25, 0.75), resolution=5)
print(np.round(p, 3))

# ssim changes shape with the target
s1 = landscape_grid("ssim", (0.5, 0.5), 21)
s2 = landscape_grid("ssim", (0.25, 0.75), 21)
print("ssim grids differ:", not np.allclose(s1, s2))
