"""DE/rand/1/bin with greedy in-place replacement, plus the permutation variant."""

from __future__ import annotations

import numpy as np

from .constraints import best_index, is_better
from .encodings import _distinct_others, permutation_de_trial
from .rng import make_streams

__all__ = ["DE", "PermutationDE", "de_trial", "F_DEFAULT", "CR_DEFAULT"]

F_DEFAULT = 0.5
CR_DEFAULT = 0.9


def de_trial(population, i, F, CR, rng, lower=None, upper=None):
    """Trial vector for member ``i`` of ``population``.

    ``a + F * (b - c)`` is taken in every dimension where a ``U(0, 1)`` draw
    falls below ``CR`` and in one forced random dimension; the parent is kept
    elsewhere. The result is clamped to ``[lower, upper]`` when given.
    ``rng.select`` draws the members and the forced dimension, ``rng.move``
    the crossover coins.
    """
    population = np.asarray(population, dtype=np.float64)
    n, d = population.shape
    if n < 4:
        raise ValueError("DE/rand/1 needs a population of at least 4")
    a, b, c = (population[k] for k in _distinct_others(n, i, rng.select))
    forced = rng.select.integers(d)
    cross = rng.move.random(d) < CR
    cross[forced] = True
    trial = np.where(cross, a + F * (b - c), population[i])
    if lower is not None:
        trial = np.clip(trial, lower, upper)
    return trial


class DE:
    """Differential evolution; each trial replaces its parent only if strictly better.

    Replacement happens immediately, so later members of the same generation
    may draw the new vector as a donor.
    """

    def __init__(self, objective, lower, upper, n_individuals=100, seed=0, rule="plain",
                 violation=None, F=F_DEFAULT, CR=CR_DEFAULT, initial=None):
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        self.dim = self.lower.size
        self.n = int(n_individuals)
        self.rule = rule
        self.F, self.CR = F, CR
        self.violation = violation if violation is not None else (lambda x: 0.0)
        self.rng = make_streams(seed)
        self.evaluations = 0
        self.reevaluations = 0
        if initial is None:
            self.x = self.rng.init.uniform(self.lower, self.upper, size=(self.n, self.dim))
        else:
            self.x = np.array(initial, dtype=np.float64)
        self.fx = np.array([self._eval(objective, xi) for xi in self.x])
        self.vx = np.array([self.violation(xi) for xi in self.x])

    def _eval(self, objective, x):
        self.evaluations += 1
        return float(objective(x))

    def _trial(self, i):
        return de_trial(self.x, i, self.F, self.CR, self.rng, self.lower, self.upper)

    def step(self, objective):
        for i in range(self.n):
            t = self._trial(i)
            f = self._eval(objective, t)
            viol = self.violation(t)
            if is_better(f, viol, self.fx[i], self.vx[i], self.rule):
                self.x[i] = t
                self.fx[i] = f
                self.vx[i] = viol

    def reevaluate(self, objective):
        for i in range(self.n):
            self.fx[i] = float(objective(self.x[i]))
        self.reevaluations += self.n

    @property
    def best(self):
        k = best_index(self.fx, self.vx, self.rule)
        return self.x[k].copy(), float(self.fx[k]), float(self.vx[k])

    def stored_fitness(self):
        return [(self.x, self.fx)]


class PermutationDE(DE):
    """DE over permutations of a fixed multiset (e.g. the pixels of a target).

    The initial population is uniformly shuffled copies of ``base``; trials
    come from :func:`permutation_de_trial`, so every member stays a
    permutation of ``base``.
    """

    def __init__(self, objective, base, n_individuals=100, seed=0, F=F_DEFAULT, initial=None):
        base = np.asarray(base, dtype=np.float64).ravel()
        self.base = np.sort(base)
        if initial is None:
            rng = make_streams(seed).init
            initial = np.array([rng.permutation(base) for _ in range(int(n_individuals))])
        super().__init__(objective, np.full(base.size, base.min()), np.full(base.size, base.max()),
                         n_individuals, seed, "plain", None, F, 0.0, initial)

    def _trial(self, i):
        return permutation_de_trial(self.x, i, self.F, self.rng)
