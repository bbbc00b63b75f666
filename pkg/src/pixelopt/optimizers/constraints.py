"""Constraint handling: violation sums and feasibility-first comparison."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Individual", "violation_sum", "deb_key", "deb_compare", "is_better", "best_index", "RULES"]

RULES = ("plain", "deb")


@dataclass
class Individual:
    position: np.ndarray
    fitness: object
    violation: float = 0.0


def violation_sum(x, feasible_lower, feasible_upper):
    """Total distance of ``x`` outside the box ``[feasible_lower, feasible_upper]``."""
    x = np.asarray(x, dtype=np.float64)
    below = np.maximum(0.0, np.asarray(feasible_lower, dtype=np.float64) - x)
    above = np.maximum(0.0, x - np.asarray(feasible_upper, dtype=np.float64))
    return float(below.sum() + above.sum())


def deb_key(fitness, violation):
    """Sort key realizing the feasibility-first order (smaller is better)."""
    if violation > 0:
        return (1, float(violation))
    return (0, float(fitness))


def deb_compare(a, b):
    """Return -1 if ``a`` is better than ``b``, 1 if worse, 0 if tied.

    Feasible beats infeasible; two infeasible individuals are ranked by total
    violation regardless of fitness; two feasible ones by fitness.
    """
    ka = deb_key(a.fitness, a.violation)
    kb = deb_key(b.fitness, b.violation)
    return (ka > kb) - (ka < kb)


def is_better(f_new, v_new, f_old, v_old, rule="plain"):
    """Strict improvement test under a comparison rule."""
    if rule == "plain":
        return f_new < f_old
    if rule == "deb":
        return deb_key(f_new, v_new) < deb_key(f_old, v_old)
    raise ValueError(f"unknown comparison rule {rule!r}")


def best_index(fitness, violation, rule="plain"):
    """Index of the best member; ties go to the lowest index."""
    fitness = np.asarray(fitness, dtype=np.float64)
    if rule == "plain":
        return int(np.argmin(fitness))
    violation = np.asarray(violation, dtype=np.float64)
    infeasible = violation > 0
    primary = np.where(infeasible, violation, fitness)
    order = np.lexsort((np.arange(fitness.size), primary, infeasible))
    return int(order[0])
