"""Pareto dominance, non-dominated sorting, crowding distance and GDE3."""

from __future__ import annotations

import numpy as np

from .de import CR_DEFAULT, F_DEFAULT, de_trial
from .rng import make_streams

__all__ = ["dominates", "nondominated_sort", "crowding_distance", "GDE3", "gde3_select", "prune"]


def dominates(f1, f2):
    """True iff ``f1`` is no worse than ``f2`` everywhere and better somewhere."""
    f1 = np.atleast_1d(np.asarray(f1, dtype=np.float64))
    f2 = np.atleast_1d(np.asarray(f2, dtype=np.float64))
    if f1.shape != f2.shape:
        raise ValueError("objective vectors differ in length")
    return bool(np.all(f1 <= f2) and np.any(f1 < f2))


def nondominated_sort(points):
    """Split points into fronts; returns a list of index arrays, best front first."""
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if n == 0:
        return []
    le = np.all(pts[:, None, :] <= pts[None, :, :], axis=2)
    lt = np.any(pts[:, None, :] < pts[None, :, :], axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    count = dom.sum(axis=0)
    fronts = []
    current = np.flatnonzero(count == 0)
    while current.size:
        fronts.append(current)
        count = count - dom[current].sum(axis=0)
        count[current] = -1
        current = np.flatnonzero(count == 0)
    return fronts


def crowding_distance(front):
    """Crowding distance of each member of a front.

    For each objective the members are sorted ascending; the two ends get
    infinity and interior members add the gap between their neighbours.
    """
    f = np.asarray(front, dtype=np.float64)
    if f.ndim != 2 or f.shape[0] == 0:
        raise ValueError("crowding distance needs a non-empty 2-D front")
    n, m = f.shape
    cd = np.zeros(n)
    if n <= 2:
        cd[:] = np.inf
        return cd
    for j in range(m):
        order = np.argsort(f[:, j], kind="stable")
        cd[order[0]] = np.inf
        cd[order[-1]] = np.inf
        gaps = np.abs(f[order[2:], j] - f[order[:-2], j])
        cd[order[1:-1]] += gaps
    return cd


def gde3_select(f_parent, v_parent, f_trial, v_trial):
    """Which of parent/trial survive: returns ``(keep_parent, keep_trial)``.

    Violations may be scalars or per-constraint vectors; an individual is
    feasible when every violation is zero.
    """
    vp = np.atleast_1d(np.asarray(v_parent, dtype=np.float64))
    vt = np.atleast_1d(np.asarray(v_trial, dtype=np.float64))
    feas_p = not np.any(vp > 0)
    feas_t = not np.any(vt > 0)
    if not feas_p and not feas_t:
        return (False, True) if dominates(vt, vp) else (True, False)
    if feas_p != feas_t:
        return (feas_p, feas_t)
    if dominates(f_trial, f_parent):
        return False, True
    if dominates(f_parent, f_trial):
        return True, False
    return True, True


def prune(F, V, size):
    """Indices of the ``size`` survivors of an oversized population.

    Feasible members are ranked by non-dominated sorting, the last partially
    admitted front by descending crowding distance (stable in index order).
    Infeasible members come after all feasible ones, by total violation.
    """
    F = np.asarray(F, dtype=np.float64)
    V = np.asarray(V, dtype=np.float64).reshape(F.shape[0], -1).sum(axis=1)
    feasible = np.flatnonzero(V <= 0)
    infeasible = np.flatnonzero(V > 0)
    keep = []
    for front in nondominated_sort(F[feasible]):
        members = feasible[front]
        room = size - len(keep)
        if room <= 0:
            break
        if members.size <= room:
            keep.extend(members.tolist())
        else:
            cd = crowding_distance(F[members])
            order = np.argsort(-cd, kind="stable")
            keep.extend(members[order[:room]].tolist())
    if len(keep) < size:
        order = infeasible[np.argsort(V[infeasible], kind="stable")]
        keep.extend(order[:size - len(keep)].tolist())
    return np.array(sorted(keep), dtype=int)


class GDE3:
    """Generalized differential evolution for several objectives.

    ``objective`` returns a vector of objective values; ``violation`` (optional)
    returns a scalar or per-constraint violation vector.
    """

    def __init__(self, objective, lower, upper, n_individuals=100, seed=0, violation=None,
                 F=F_DEFAULT, CR=CR_DEFAULT, initial=None):
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        self.dim = self.lower.size
        self.n = int(n_individuals)
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
        self.vx = np.array([self.violation(xi) for xi in self.x], dtype=np.float64)
        self.last_discarded = np.empty((0, self.fx.shape[1]))

    def _eval(self, objective, x):
        self.evaluations += 1
        return np.asarray(objective(x), dtype=np.float64)

    def step(self, objective):
        xs, fs, vs = [], [], []
        for i in range(self.n):
            t = de_trial(self.x, i, self.F, self.CR, self.rng, self.lower, self.upper)
            ft = self._eval(objective, t)
            vt = self.violation(t)
            keep_p, keep_t = gde3_select(self.fx[i], self.vx[i], ft, vt)
            if keep_p:
                xs.append(self.x[i])
                fs.append(self.fx[i])
                vs.append(self.vx[i])
            if keep_t:
                xs.append(t)
                fs.append(ft)
                vs.append(vt)
        X = np.array(xs)
        F = np.array(fs)
        V = np.array(vs, dtype=np.float64)
        if X.shape[0] > self.n:
            keep = prune(F, V, self.n)
            mask = np.zeros(X.shape[0], dtype=bool)
            mask[keep] = True
            self.last_discarded = F[~mask]
            X, F, V = X[keep], F[keep], V[keep]
        else:
            self.last_discarded = np.empty((0, F.shape[1]))
        self.x, self.fx, self.vx = X, F, V

    def reevaluate(self, objective):
        self.fx = np.array([np.asarray(objective(xi), dtype=np.float64) for xi in self.x])
        self.reevaluations += self.n

    def extremes(self):
        """Index of the best member for each objective (ties: lowest index)."""
        return [int(np.argmin(self.fx[:, j])) for j in range(self.fx.shape[1])]

    @property
    def best(self):
        k = self.extremes()[0]
        return self.x[k].copy(), self.fx[k].copy(), float(np.sum(self.vx[k]))

    def stored_fitness(self):
        return [(self.x, self.fx)]
