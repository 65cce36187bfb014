import math

import numpy as np
import pytest

from rmga.core import ConfigurationError, DomainViolationError, contains
from rmga.objectives import (
    F5_OPTIMUM_VALUE,
    FOXHOLE_A,
    FUNCTION_NAMES,
    NoiseSource,
    evaluate,
    evaluate_noise_free,
    get,
    registry,
)


def sample_points(spec, n, seed=0):
    rng = np.random.default_rng(seed)
    lo = np.array(spec.domain.lower)
    hi = np.array(spec.domain.upper)
    pts = rng.uniform(lo, hi, size=(n, spec.dimension))
    return [tuple(float(c) for c in row) for row in pts]


class TestFoxholeTable:
    def test_row_one_cycles(self):
        assert FOXHOLE_A[0] == (-32.0, -16.0, 0.0, 16.0, 32.0) * 5

    def test_row_two_repeats_in_blocks(self):
        expected = tuple(c for c in (-32.0, -16.0, 0.0, 16.0, 32.0) for _ in range(5))
        assert FOXHOLE_A[1] == expected

    def test_entries(self):
        for row in FOXHOLE_A:
            assert len(row) == 25
            assert set(row) == {-32.0, -16.0, 0.0, 16.0, 32.0}


class TestRegistry:
    def test_exactly_seven(self):
        assert len(registry()) == 7
        assert FUNCTION_NAMES == ("f1", "f2", "f3", "f4", "f5", "beale", "quad")

    def test_f5_domain(self):
        spec = get("f5")
        assert spec.domain.lower == (-65.536, -65.536)
        assert spec.domain.upper == (65.536, 65.536)

    def test_f4_dimension_and_noise(self):
        spec = get("f4")
        assert spec.dimension == 30
        assert spec.noisy

    def test_known_optima_are_in_domain(self):
        for spec in registry():
            point, _ = spec.known_optimum
            assert contains(spec.domain, point)

    def test_known_optimum_values(self):
        # noise-free evaluation at the known optimum matches the stored value
        for spec in registry():
            point, value = spec.known_optimum
            tol = 1e-4 if spec.name == "f5" else 1e-12
            assert abs(evaluate_noise_free(spec, point) - value) <= tol

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            get("nosuch")


class TestPointValues:
    def test_f1_origin(self):
        assert evaluate(get("f1"), (0.0, 0.0, 0.0)) == 0.0

    def test_f2_optimum(self):
        assert evaluate(get("f2"), (1.0, 1.0)) == 0.0

    def test_f3_low_corner(self):
        # 30 + 5*floor(-5.12) = 30 - 30
        assert evaluate(get("f3"), (-5.12,) * 5) == 0.0

    def test_beale_optimum_exact(self):
        assert evaluate(get("beale"), (3.0, 0.5)) == 0.0

    def test_beale_origin(self):
        # 1.5**2 + 2.25**2 + 2.625**2, all dyadic
        assert evaluate(get("beale"), (0.0, 0.0)) == 14.203125

    def test_quad_optimum(self):
        assert evaluate(get("quad"), (0.0, 0.4)) == 0.0

    def test_f5_deepest_well(self):
        v = evaluate(get("f5"), (-32.0, -32.0))
        assert abs(v - 0.998004) < 1e-4
        assert v == F5_OPTIMUM_VALUE

    def test_f4_noise_free_zeros(self):
        assert evaluate_noise_free(get("f4"), (0.0,) * 30) == 0.0

    def test_f4_noise_free_ones(self):
        # sum of i for i=1..30
        assert evaluate_noise_free(get("f4"), (1.0,) * 30) == 465.0

    def test_f1_noise_free_matches_eval(self):
        spec = get("f1")
        assert evaluate_noise_free(spec, (1.0, 1.0, 1.0)) == evaluate(spec, (1.0, 1.0, 1.0)) == 3.0


class TestEvalContract:
    def test_out_of_domain_rejected(self):
        with pytest.raises(DomainViolationError):
            evaluate(get("quad"), (2.5, 0.0))
        with pytest.raises(DomainViolationError):
            evaluate_noise_free(get("quad"), (2.5, 0.0))

    def test_noisy_requires_noise_source(self):
        with pytest.raises(ConfigurationError):
            evaluate(get("f4"), (0.0,) * 30)

    def test_f4_advances_stream_by_dimension(self):
        noise = NoiseSource(1)
        evaluate(get("f4"), (0.0,) * 30, noise)
        assert noise.position == 30
        evaluate(get("f4"), (0.1,) * 30, noise)
        assert noise.position == 60

    def test_f4_same_seed_same_value_after_reset(self):
        spec = get("f4")
        point = (0.5,) * 30
        a = NoiseSource(42)
        b = NoiseSource(42)
        assert evaluate(spec, point, a) == evaluate(spec, point, b)
        a.reset()
        assert a.position == 0
        c = evaluate(spec, point, a)
        assert c == evaluate(spec, point, NoiseSource(42))

    def test_f4_different_seeds_differ(self):
        spec = get("f4")
        point = (0.5,) * 30
        assert evaluate(spec, point, NoiseSource(1)) != evaluate(spec, point, NoiseSource(2))


class TestNoiseSource:
    def test_identical_seeds_identical_sequences(self):
        a, b = NoiseSource(9), NoiseSource(9)
        assert np.array_equal(a.draw(1000), b.draw(1000))

    def test_standard_normal_moments(self):
        draws = NoiseSource(12345).draw(100_000)
        assert abs(float(draws.mean())) < 0.02
        assert abs(float(draws.var()) - 1.0) < 0.05


class TestFunctionProperties:
    @pytest.mark.parametrize("name", ["f1", "f2", "quad", "beale"])
    def test_nonnegative_everywhere(self, name):
        spec = get(name)
        for p in sample_points(spec, 10_000):
            assert evaluate(spec, p) >= 0.0

    def test_f4_noise_free_nonnegative(self):
        spec = get("f4")
        for p in sample_points(spec, 10_000):
            assert evaluate_noise_free(spec, p) >= 0.0

    def test_f3_integer_valued(self):
        spec = get("f3")
        for p in sample_points(spec, 10_000):
            v = evaluate(spec, p)
            assert v == math.floor(v)

    def test_f5_range(self):
        # the 0.002 floor in the denominator caps the value at 500
        spec = get("f5")
        for p in sample_points(spec, 10_000):
            v = evaluate(spec, p)
            assert 0.0 < v <= 500.0

    def test_f1_even_symmetry(self):
        spec = get("f1")
        for p in sample_points(spec, 100):
            assert evaluate(spec, p) == evaluate(spec, tuple(-c for c in p))

    def test_quad_mirror_symmetry(self):
        spec = get("quad")
        for x1, x2 in sample_points(spec, 100):
            assert evaluate(spec, (x1, x2)) == evaluate(spec, (-x1, x2))
