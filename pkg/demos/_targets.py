"""Synthetic target images shared by the demo scripts."""

from pathlib import Path

import numpy as np

from pixelopt.gif import write_gif
from pixelopt.imaging import write_png

OUT = Path(__file__).parent / "output"


def face(n=30):
    """A smooth gray blob with two dark eyes, easy to recognize when blurred."""
    y, x = np.mgrid[0:n, 0:n] / (n - 1)
    img = 0.25 + 0.6 * np.exp(-((x - 0.5) ** 2 + (y - 0.5) ** 2) / 0.08)
    for ex in (0.35, 0.65):
        img[(x - ex) ** 2 + (y - 0.4) ** 2 < 0.004] = 0.05
    img[(np.abs(y - 0.7) < 0.03) & (np.abs(x - 0.5) < 0.15)] = 0.15
    return np.round(img * 255) / 255


def save_target(name, img):
    OUT.mkdir(exist_ok=True)
    path = OUT / name
    write_png(path, img)
    return path


def binary_face(n=16):
    return (face(n) > 0.5).astype(float)


def moving_bar(n=12, frames=21):
    """Frames of a bright bar sweeping left to right."""
    OUT.mkdir(exist_ok=True)
    out = []
    for k in range(frames):
        f = np.full((n, n), 40, dtype=np.uint8)
        col = int(round(k * (n - 3) / (frames - 1)))
        f[:, col:col + 3] = 230
        out.append(f)
    path = OUT / "moving_bar.gif"
    write_gif(path, out, delay=10)
    return path
