import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from pixelopt.benchmarks import BENCHMARKS, eval_benchmark, get_benchmark, reference_optimum


def test_spherical_anchors():
    d = 65536
    assert eval_benchmark("spherical", np.full(d, 2.0)) == 262144.0
    assert eval_benchmark("spherical", np.full(d, -2.0)) == 262144.0
    assert eval_benchmark("spherical", np.zeros(d)) == 0.0


def test_rosenbrock_optimum():
    assert eval_benchmark("rosenbrock", np.ones(10)) == 0.0


def test_styblinski_tang_1d_against_numerical_minimum():
    f = get_benchmark("styblinski_tang").func
    res = minimize_scalar(lambda v: f(np.array([v])), bounds=(-5, 5), method="bounded",
                          options={"xatol": 1e-10})
    assert res.x == pytest.approx(-2.903534, abs=1e-4)
    assert f(np.array([-2.903534])) == pytest.approx(res.fun, abs=1e-3)
    assert res.fun == pytest.approx(-39.16617, abs=1e-3)


def test_reference_optima():
    assert np.all(reference_optimum("rastrigin", 900) == 0)
    assert reference_optimum("rosenbrock", 4).tolist() == [1, 1, 1, 1]
    assert reference_optimum("styblinski_tang", 2).tolist() == [-2.90354, -2.90354]


@pytest.mark.parametrize("name", sorted(set(BENCHMARKS) - {"Qing"}))
def test_optimum_is_a_local_minimum(name):
    spec = get_benchmark(name)
    o = reference_optimum(name, 5)
    f0 = spec.func(o)
    rng = np.random.default_rng(0)
    for _ in range(50):
        x = np.clip(o + rng.normal(0, 1e-3, 5), spec.lower, spec.upper)
        assert spec.func(x) >= f0 - 1e-6


@pytest.mark.parametrize("name", ["spherical", "rastrigin", "styblinski_tang"])
def test_separable_functions_sum_1d_terms(name):
    f = get_benchmark(name).func
    x = np.random.default_rng(1).uniform(-1, 1, 7)
    assert f(x) == pytest.approx(sum(f(np.array([v])) for v in x))


def test_qing_decomposes_with_index():
    x = np.random.default_rng(2).uniform(-3, 3, 4)
    want = sum((v * v - (k + 1)) ** 2 for k, v in enumerate(x))
    assert eval_benchmark("qing", x) == pytest.approx(want)


def test_wavy_is_mean_of_1d_terms():
    f = get_benchmark("wavy").func
    x = np.random.default_rng(3).uniform(-3, 3, 6)
    assert f(x) == pytest.approx(np.mean([f(np.array([v])) for v in x]))


def test_qing_listed_optimum_is_not_its_minimizer():
    # the zero vector is kept as Qing's mapping reference; the formula's minima are +-sqrt(k)
    assert reference_optimum("qing", 3).tolist() == [0, 0, 0]
    assert eval_benchmark("qing", np.sqrt([1.0, 2.0, 3.0])) == pytest.approx(0.0, abs=1e-24)
    assert eval_benchmark("qing", np.zeros(3)) == 14.0


def test_domain_check():
    with pytest.raises(ValueError):
        eval_benchmark("spherical", np.array([10.0]))
    with pytest.raises(ValueError):
        get_benchmark("ackley")
