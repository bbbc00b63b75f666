"""Population-based optimizers and their helpers."""

from .constraints import RULES, Individual, best_index, deb_compare, deb_key, is_better, violation_sum
from .de import DE, PermutationDE, de_trial
from .encodings import (
    binarize_threshold,
    discretize_round,
    permutation_de_trial,
    rpi_decode,
    rpi_encode,
)
from .gde3 import GDE3, crowding_distance, dominates, nondominated_sort, prune
from .pso import PSO, pso_velocity_update
from .rng import make_streams


def reevaluate_on_change(optimizer, objective):
    """Recompute every stored fitness of ``optimizer`` under a new objective.

    Positions are left untouched. Returns the optimizer for chaining.
    """
    optimizer.reevaluate(objective)
    return optimizer


__all__ = [
    "PSO",
    "DE",
    "PermutationDE",
    "GDE3",
    "Individual",
    "RULES",
    "best_index",
    "binarize_threshold",
    "crowding_distance",
    "de_trial",
    "deb_compare",
    "deb_key",
    "discretize_round",
    "dominates",
    "is_better",
    "make_streams",
    "nondominated_sort",
    "permutation_de_trial",
    "prune",
    "pso_velocity_update",
    "reevaluate_on_change",
    "rpi_decode",
    "rpi_encode",
    "violation_sum",
]
