"""Per-run random streams.

One seed produces independent generators for initialization, movement draws
(PSO coefficients, DE crossover) and index selection, so extra draws in one
purpose never shift another.
"""

from types import SimpleNamespace

import numpy as np

STREAMS = ("init", "move", "select")


def make_streams(seed):
    children = np.random.SeedSequence(int(seed)).spawn(len(STREAMS))
    return SimpleNamespace(**{n: np.random.default_rng(c) for n, c in zip(STREAMS, children)})
