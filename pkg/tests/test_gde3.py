import numpy as np
import pytest

from pixelopt.optimizers import GDE3, crowding_distance, dominates, nondominated_sort, prune
from pixelopt.optimizers.gde3 import gde3_select


def brute_fronts(P):
    """O(n^3) peeling: repeatedly extract members nobody remaining dominates."""
    left = list(range(len(P)))
    fronts = []
    while left:
        front = [i for i in left if not any(
            all(P[j][k] <= P[i][k] for k in range(len(P[i]))) and any(P[j][k] < P[i][k] for k in range(len(P[i])))
            for j in left)]
        fronts.append(sorted(front))
        left = [i for i in left if i not in front]
    return fronts


def test_dominance_examples():
    assert dominates((1, 1), (2, 2))
    assert not dominates((1, 2), (2, 1)) and not dominates((2, 1), (1, 2))
    assert not dominates((1, 1), (1, 1))


def test_crowding_examples():
    assert np.all(np.isinf(crowding_distance([[0, 1], [1, 0]])))
    cd = crowding_distance([[0, 4], [1, 2], [2, 0]])
    assert cd[1] == 6.0 and np.isinf(cd[0]) and np.isinf(cd[2])


def test_sort_examples():
    assert [f.tolist() for f in nondominated_sort([[0, 3], [1, 2], [3, 0]])] == [[0, 1, 2]]
    chain = [[3, 3], [1, 1], [2, 2], [0, 0]]
    assert [f.tolist() for f in nondominated_sort(chain)] == [[3], [1], [2], [0]]


def test_sort_matches_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(30):
        P = rng.integers(0, 6, (20, 2)).astype(float)
        got = [sorted(f.tolist()) for f in nondominated_sort(P)]
        assert got == brute_fronts(P.tolist())


def test_selection_rules():
    assert gde3_select((1, 1), 0.0, (2, 2), 0.0) == (True, False)
    assert gde3_select((2, 2), 0.0, (1, 1), 0.0) == (False, True)
    assert gde3_select((1, 2), 0.0, (2, 1), 0.0) == (True, True)
    assert gde3_select((100, 100), 0.0, (1, 1), 0.5) == (True, False)
    assert gde3_select((100, 100), 0.5, (1, 1), 0.2) == (False, True)


def test_step_keeps_parents_when_trials_dominated():
    opt = GDE3(lambda x: np.array([0.0, 0.0]), [0, 0], [1, 1], n_individuals=6, seed=0)
    before = opt.x.copy()
    opt.step(lambda x: np.array([1.0, 1.0]))
    np.testing.assert_array_equal(opt.x, before)


def test_nondominated_pairs_are_pruned_back():
    obj = lambda x: np.array([x[0], 1 - x[0]])  # noqa: E731
    opt = GDE3(obj, [0, 0], [1, 1], n_individuals=8, seed=1)
    opt.step(obj)
    assert opt.x.shape[0] == 8
    assert opt.last_discarded.shape[0] == 8


def test_pruning_never_keeps_a_member_dominated_by_a_discarded_one():
    rng = np.random.default_rng(3)
    for _ in range(50):
        F = rng.integers(0, 10, (30, 2)).astype(float)
        keep = prune(F, np.zeros(30), 15)
        gone = np.setdiff1d(np.arange(30), keep)
        for k in keep:
            assert not any(dominates(F[g], F[k]) for g in gone)


def test_pruning_puts_infeasible_last():
    F = np.array([[0, 0], [5, 5], [1, 1], [9, 9]], dtype=float)
    V = np.array([0.3, 0.0, 0.1, 0.0])
    assert prune(F, V, 3).tolist() == [1, 2, 3]


def test_random_dominance_audit():
    rng = np.random.default_rng(4)
    for _ in range(20):
        P = rng.random((30, 2)).round(1)
        D = [[dominates(a, b) for b in P] for a in P]
        for i in range(30):
            assert not D[i][i]
            for j in range(30):
                for k in range(30):
                    if D[i][j] and D[j][k]:
                        assert D[i][k]


def test_wrong_length():
    with pytest.raises(ValueError):
        dominates((1, 2), (1, 2, 3))
