"""Inertia-weight particle swarm with a star topology and asynchronous updates."""

from __future__ import annotations

import numpy as np

from .constraints import best_index, is_better
from .rng import make_streams

__all__ = ["PSO", "pso_velocity_update", "OMEGA", "C1", "C2"]

OMEGA = 0.729844
C1 = 1.49618
C2 = 1.49618


def pso_velocity_update(x, v, y, gbest, rng, omega=OMEGA, c1=C1, c2=C2, v_max=None):
    """New velocity for one particle.

    Parameters
    ----------
    x, v, y : ndarray of shape (D,)
        Position, velocity and personal best of the particle.
    gbest : ndarray of shape (D,)
        Best position known to the swarm.
    rng : numpy.random.Generator
        Source of the per-dimension ``U(0, 1)`` coefficients; ``r1`` is drawn
        before ``r2``.
    v_max : ndarray or float, optional
        Componentwise velocity clamp. ``None`` disables clamping.

    Returns
    -------
    ndarray of shape (D,)
    """
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[0]
    r1 = rng.random(d)
    r2 = rng.random(d)
    new = omega * np.asarray(v) + c1 * r1 * (np.asarray(y) - x) + c2 * r2 * (np.asarray(gbest) - x)
    if v_max is not None:
        new = np.clip(new, -v_max, v_max)
    return new


class PSO:
    """Global-best PSO processed particle by particle.

    The swarm starts at uniform random positions inside ``[lower, upper]``
    with zero velocity. A personal best only moves to positions inside those
    bounds; ``violation`` (if given) and ``rule`` decide what "better" means
    for constrained problems.

    Parameters
    ----------
    objective : callable
        Maps a position to a scalar fitness (minimized).
    lower, upper : array_like
        Search bounds; they also set the velocity clamp ``0.1 * (upper - lower)``.
    n_particles : int
    seed : int
    rule : {"plain", "deb"}
    violation : callable, optional
        Maps a position to its total constraint violation.
    initial : ndarray of shape (N, D), optional
        Starting positions instead of uniform sampling.
    """

    def __init__(self, objective, lower, upper, n_particles=100, seed=0, rule="plain",
                 violation=None, omega=OMEGA, c1=C1, c2=C2, initial=None):
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        self.dim = self.lower.size
        self.n = int(n_particles)
        self.rule = rule
        self.omega, self.c1, self.c2 = omega, c1, c2
        self.v_max = 0.1 * (self.upper - self.lower)
        self.violation = violation if violation is not None else (lambda x: 0.0)
        self.rng = make_streams(seed)
        self.evaluations = 0
        self.reevaluations = 0

        if initial is None:
            self.x = self.rng.init.uniform(self.lower, self.upper, size=(self.n, self.dim))
        else:
            self.x = np.array(initial, dtype=np.float64)
        self.v = np.zeros_like(self.x)
        self.fx = np.array([self._eval(objective, xi) for xi in self.x])
        self.vx = np.array([self.violation(xi) for xi in self.x])
        self.y = self.x.copy()
        self.fy = self.fx.copy()
        self.vy = self.vx.copy()
        self._refresh_gbest()

    def _eval(self, objective, x):
        self.evaluations += 1
        return float(objective(x))

    def _refresh_gbest(self):
        k = best_index(self.fy, self.vy, self.rule)
        self.gbest = self.y[k].copy()
        self.gbest_fitness = float(self.fy[k])
        self.gbest_violation = float(self.vy[k])

    def _in_bounds(self, x):
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def step(self, objective):
        """One asynchronous iteration over all particles in index order."""
        for i in range(self.n):
            self.v[i] = pso_velocity_update(self.x[i], self.v[i], self.y[i], self.gbest,
                                            self.rng.move, self.omega, self.c1, self.c2, self.v_max)
            self.x[i] = self.x[i] + self.v[i]
            f = self._eval(objective, self.x[i])
            viol = self.violation(self.x[i])
            self.fx[i] = f
            self.vx[i] = viol
            if self._in_bounds(self.x[i]) and is_better(f, viol, self.fy[i], self.vy[i], self.rule):
                self.y[i] = self.x[i]
                self.fy[i] = f
                self.vy[i] = viol
                if is_better(f, viol, self.gbest_fitness, self.gbest_violation, self.rule):
                    self.gbest = self.x[i].copy()
                    self.gbest_fitness = f
                    self.gbest_violation = viol

    def reevaluate(self, objective):
        """Refresh current, personal-best and global-best fitness after a change."""
        for i in range(self.n):
            self.fx[i] = float(objective(self.x[i]))
            self.fy[i] = float(objective(self.y[i]))
        self.reevaluations += 2 * self.n
        self._refresh_gbest()

    @property
    def best(self):
        """``(position, fitness, violation)`` of the global best."""
        return self.gbest, self.gbest_fitness, self.gbest_violation

    def stored_fitness(self):
        """Every cached fitness value as ``(positions, values)`` pairs."""
        return [(self.x, self.fx), (self.y, self.fy), (self.gbest[None, :], np.array([self.gbest_fitness]))]
