"""Domain adapters that let continuous optimizers handle other problem types.

The discrete and binary adapters are applied to a copy of the position just
before evaluation; optimizer state keeps the continuous values.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "discretize_round",
    "binarize_threshold",
    "rpi_encode",
    "rpi_decode",
    "matching_permutation",
    "transpositions",
    "permutation_de_trial",
]


def discretize_round(x):
    """Round half up to the nearest integer in ``[0, 255]``."""
    x = np.asarray(x, dtype=np.float64)
    return np.clip(np.floor(x + 0.5), 0, 255)


def binarize_threshold(x):
    """Values below 0.5 become 0, everything else 1."""
    x = np.asarray(x, dtype=np.float64)
    return (x >= 0.5).astype(np.float64)


def rpi_encode(perm):
    """Relative position indexing: divide every element by the largest one.

    >>> rpi_encode([150, 10, 250, 40, 190]).tolist()
    [0.6, 0.04, 1.0, 0.16, 0.76]
    """
    perm = np.asarray(perm, dtype=np.float64)
    if perm.size == 0:
        raise ValueError("cannot encode an empty permutation")
    top = perm.max()
    if top <= 0:
        raise ValueError("the largest element must be positive")
    return perm / top


def rpi_decode(x, base):
    """Give the k-th smallest real the k-th smallest element of ``base``.

    Ties among the reals are broken by position (lower index first).
    """
    x = np.asarray(x, dtype=np.float64)
    base = np.sort(np.asarray(base).ravel())
    if x.shape != base.shape:
        raise ValueError(f"size mismatch: {x.size} reals for {base.size} elements")
    out = np.empty_like(base)
    out[np.argsort(x, kind="stable")] = base
    return out


def matching_permutation(b, c):
    """Index array ``sigma`` with ``b[sigma] == c``.

    Repeated values are matched in order of appearance, so the result is
    deterministic for multisets.
    """
    b = np.asarray(b)
    c = np.asarray(c)
    if b.shape != c.shape:
        raise ValueError("permutations differ in length")
    ob = np.argsort(b, kind="stable")
    oc = np.argsort(c, kind="stable")
    if not np.array_equal(b[ob], c[oc]):
        raise ValueError("arguments are not permutations of the same multiset")
    sigma = np.empty_like(ob)
    sigma[oc] = ob
    return sigma


def transpositions(sigma):
    """Swaps that, applied in order to the identity, produce ``sigma``."""
    sigma = np.asarray(sigma)
    q = np.arange(sigma.size)
    where = np.arange(sigma.size)  # where[v] = position of v in q
    swaps = []
    for k in range(sigma.size):
        if q[k] != sigma[k]:
            j = where[sigma[k]]
            swaps.append((k, int(j)))
            vk, vj = q[k], q[j]
            q[k], q[j] = vj, vk
            where[vj], where[vk] = k, j
    return swaps


def permutation_de_trial(population, i, F, rng):
    """Permutation-matrix mutation for combinatorial DE.

    Draws three distinct members ``a, b, c`` (all different from ``i``), finds
    the position permutation taking ``b`` to ``c``, splits it into
    transpositions and applies each one to ``a`` with probability ``F``.

    Parameters
    ----------
    population : ndarray of shape (N, D)
        Every row is a permutation of the same multiset.
    i : int
        Index of the parent.
    F : float
        Probability of applying each transposition.
    rng : SimpleNamespace
        Streams from :func:`make_streams`; ``select`` picks members, ``move``
        decides which transpositions fire.
    """
    population = np.asarray(population)
    n = population.shape[0]
    if n < 4:
        raise ValueError("permutation DE needs at least 4 members")
    if not 0.0 <= F <= 1.0:
        raise ValueError("F must be a probability here")
    a_idx, b_idx, c_idx = _distinct_others(n, i, rng.select)
    sigma = matching_permutation(population[b_idx], population[c_idx])
    swaps = transpositions(sigma)
    fire = rng.move.random(len(swaps)) < F
    q = np.arange(population.shape[1])
    for (k, j), go in zip(swaps, fire):
        if go:
            q[k], q[j] = q[j], q[k]
    return population[a_idx][q].copy()


def _distinct_others(n, i, gen, k=3):
    idx = gen.choice(n - 1, size=k, replace=False)
    idx[idx >= i] += 1
    return idx
