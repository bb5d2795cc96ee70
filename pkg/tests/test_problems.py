"""
Тесты стохастических задач: LIBSVM, hinge SVM, трудная пара, синтетика
"""

import gzip
import math

import numpy as np
import pytest

from poem_zo.problems import (
    EmptyDatasetError,
    LibsvmParseError,
    LinearProblem,
    QuadraticProblem,
    ZeroProblem,
    all_zero_probability,
    known_datasets,
    load_libsvm,
    make_hard_instance,
    make_hinge_svm,
    make_synthetic_known_optimum,
    parse_libsvm,
)
from poem_zo.sampling import RngStream
from poem_zo.vectorspace import Ball, DimensionMismatchError, Unbounded


class TestParseLibsvm:
    """Тесты разбора LIBSVM"""

    def test_tiny_dataset_shape(self, tiny_dataset):
        assert tiny_dataset.n == 6
        assert tiny_dataset.d == 4
        assert tiny_dataset.name == "tiny"
        np.testing.assert_array_equal(tiny_dataset.labels, [1, -1, 1, -1, 1, -1])

    def test_feature_values(self, tiny_dataset):
        dense = tiny_dataset.features.toarray()
        np.testing.assert_array_equal(dense[0], [0.5, 0.0, 1.0, 0.0])
        np.testing.assert_array_equal(dense[2], [1.0, 0.5, 0.0, 0.25])

    def test_labels_one_two(self):
        """Метки 1/2 (как в mushrooms): 1 → +1, 2 → −1"""
        dataset = parse_libsvm(["1 1:1", "2 2:1"])
        np.testing.assert_array_equal(dataset.labels, [1.0, -1.0])

    def test_labels_zero_one(self):
        dataset = parse_libsvm(["0 1:1", "1 2:1"])
        np.testing.assert_array_equal(dataset.labels, [-1.0, 1.0])

    def test_blank_lines_skipped(self):
        dataset = parse_libsvm(["", "+1 1:1", "   ", "-1 2:1"])
        assert dataset.n == 2

    def test_row_without_features(self):
        dataset = parse_libsvm(["+1", "-1 3:2"])
        assert dataset.d == 3
        assert dataset.features[0].nnz == 0

    def test_forced_dimension(self):
        dataset = parse_libsvm(["+1 1:1"], n_features=10)
        assert dataset.d == 10

    def test_forced_dimension_too_small(self):
        with pytest.raises(LibsvmParseError):
            parse_libsvm(["+1 5:1"], n_features=3)

    @pytest.mark.parametrize(
        "line",
        [
            "+1 1:abc",
            "+1 0:1",
            "+1 3:1 2:1",
            "+1 2:1 2:1",
            "+1 1-1",
            "abc 1:1",
            "+3 1:1",
            "+1 1:inf",
        ],
    )
    def test_malformed_lines(self, line):
        """Тест отказа на некорректных строках"""
        with pytest.raises(LibsvmParseError) as excinfo:
            parse_libsvm(["+1 1:1", line])
        assert excinfo.value.line_number == 2

    def test_mixed_label_schemes(self):
        with pytest.raises(LibsvmParseError):
            parse_libsvm(["-1 1:1", "2 1:1"])

    def test_empty(self):
        with pytest.raises(EmptyDatasetError):
            parse_libsvm(["", "  "])


class TestLoadLibsvm:
    """Тесты чтения с диска"""

    def test_load_plain(self, tiny_dataset_file):
        dataset = load_libsvm(tiny_dataset_file)
        assert (dataset.n, dataset.d) == (6, 4)
        assert dataset.name == "tiny"

    def test_load_gzip(self, tmp_path):
        path = tmp_path / "small.gz"
        with gzip.open(path, "wt", encoding="utf-8") as fh:
            fh.write("+1 1:1\n-1 2:1\n")
        dataset = load_libsvm(path)
        assert (dataset.n, dataset.d) == (2, 2)
        assert dataset.name == "small"

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_libsvm(tmp_path / "absent")

    def test_manifest(self):
        datasets = known_datasets()
        assert (datasets["mushrooms"].n, datasets["mushrooms"].d) == (8124, 112)
        assert (datasets["a9a"].n, datasets["a9a"].d) == (32561, 123)
        assert (datasets["w8a"].n, datasets["w8a"].d) == (49749, 300)
        assert datasets["w8a"].url.startswith("https://")

    @pytest.mark.integration
    @pytest.mark.parametrize("name,expected", [("mushrooms", (8124, 112)), ("a9a", (32561, 123)), ("w8a", (49749, 300))])
    def test_real_dataset_sizes(self, dataset_path, name, expected):
        """Тест размеров реальных датасетов (пропускается без файлов)"""
        dataset = load_libsvm(dataset_path(name))
        assert (dataset.n, dataset.d) == expected
        assert set(np.unique(dataset.labels)) == {-1.0, 1.0}


class TestHingeSvm:
    """Тесты задачи hinge SVM"""

    def test_lipschitz_is_max_row_norm(self, tiny_dataset):
        problem = make_hinge_svm(tiny_dataset, radius=1.0)
        assert problem.lipschitz_bound == pytest.approx(math.sqrt(1.0 + 0.25 + 0.0625))
        assert isinstance(problem.domain, Ball)
        assert problem.domain.radius == 1.0

    def test_objective_at_zero(self, tiny_dataset):
        problem = make_hinge_svm(tiny_dataset)
        assert problem.objective(np.zeros(4)) == 1.0

    def test_evaluate_matches_objective(self, tiny_dataset):
        """Среднее F(x; i) по всем примерам равно f(x)"""
        problem = make_hinge_svm(tiny_dataset)
        x = np.array([0.3, -0.2, 0.5, 0.1])
        mean = np.mean([problem.evaluate(x, i) for i in range(6)])
        assert mean == pytest.approx(problem.objective(x), rel=1e-12)

    def test_evaluate_single(self, tiny_dataset):
        problem = make_hinge_svm(tiny_dataset)
        x = np.array([1.0, 0.0, 1.0, 0.0])
        # пример 0: margin = 0.5 + 1.0 = 1.5, hinge = 0
        assert problem.evaluate(x, 0) == 0.0
        # пример 3: margin = −(0.5) = −0.5, hinge = 1.5
        assert problem.evaluate(x, 3) == pytest.approx(1.5)

    def test_batch_matches_scalar(self, tiny_dataset, rng):
        problem = make_hinge_svm(tiny_dataset)
        points = rng.standard_normal((20, 4))
        noises = problem.sample_noise_batch(rng, 20)
        expected = [problem.evaluate(p, int(i)) for p, i in zip(points, noises)]
        np.testing.assert_allclose(problem.evaluate_batch(points, noises), expected, rtol=1e-12)

    def test_noise_is_index(self, tiny_dataset, rng):
        problem = make_hinge_svm(tiny_dataset)
        draws = {problem.sample_noise(rng) for _ in range(200)}
        assert draws == set(range(6))


class TestHardInstance:
    """Тесты трудной пары f₁/f₂"""

    def test_expectation_identity(self):
        """E_ξ[F₂(x; ξ)] = f₂(x)"""
        T = 4
        problem = make_hard_instance("f2", 1.0, T, 1)
        for x in (-1.0, 0.0, 0.3, 0.75, 2.0):
            point = np.array([x])
            mean = (1 - 1 / T) * problem.evaluate(point, 0) + problem.evaluate(point, 1) / T
            assert mean == pytest.approx(problem.objective(point), abs=1e-12)

    def test_oracles_agree_on_zero_noise(self):
        f1 = make_hard_instance("f1", 2.0, 10, 3)
        f2 = make_hard_instance("f2", 2.0, 10, 3)
        x = np.array([0.1, -0.4, 2.0])
        assert f1.evaluate(x, 0) == f2.evaluate(x, 0)
        assert f1.evaluate(x, 1) == f1.evaluate(x, 0)

    def test_minimizers(self):
        f2 = make_hard_instance("f2", 1.0, 100, 2)
        np.testing.assert_allclose(f2.minimizer, [0.99, 0.99])
        assert f2.objective(f2.minimizer) == pytest.approx(0.0)
        assert isinstance(f2.domain, Unbounded)

    def test_lipschitz_scaling(self):
        problem = make_hard_instance("f1", 2.0, 10, 4)
        assert problem.lipschitz_bound == pytest.approx(4.0)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            make_hard_instance("f3", 1.0, 10, 1)
        with pytest.raises(ValueError):
            make_hard_instance("f1", 1.0, 1, 1)
        with pytest.raises(ValueError):
            make_hard_instance("f1", 0.0, 10, 1)

    @pytest.mark.slow
    def test_all_zero_probability(self):
        """Частота «все ξ = 0» при T=100 по 10⁵ испытаниям ≈ 0.3660 ± 3σ"""
        trials = 100_000
        frequency, exact = all_zero_probability(100, trials, RngStream(31))
        assert exact == pytest.approx(0.3660, abs=1e-4)
        sigma = math.sqrt(exact * (1 - exact) / trials)
        assert abs(frequency - exact) <= 3 * sigma
        assert frequency >= 1 / math.e - 0.01


class TestSynthetic:
    """Тесты синтетических задач"""

    def test_known_optimum(self, synthetic_problem):
        x_star = synthetic_problem.minimizer
        assert np.linalg.norm(x_star) == pytest.approx(0.5)
        assert synthetic_problem.objective(x_star) == 0.0
        assert synthetic_problem.optimum_value == 0.0
        assert synthetic_problem.lipschitz_bound == pytest.approx(1.1)

    def test_same_seed_same_minimizer(self):
        a = make_synthetic_known_optimum(6, 0.1, rng_seed=3)
        b = make_synthetic_known_optimum(6, 0.1, rng_seed=3)
        assert np.array_equal(a.minimizer, b.minimizer)

    def test_unbounded(self, unbounded_synthetic):
        assert isinstance(unbounded_synthetic.domain, Unbounded)

    def test_noise_mean_zero(self, synthetic_problem):
        noises = synthetic_problem.sample_noise_batch(RngStream(8), 20_000)
        np.testing.assert_allclose(np.linalg.norm(noises, axis=1), 0.1, rtol=1e-12)
        assert np.max(np.abs(noises.mean(axis=0))) < 5e-3

    def test_batch_matches_scalar(self, synthetic_problem, rng):
        points = rng.standard_normal((10, 10))
        noises = synthetic_problem.sample_noise_batch(rng, 10)
        expected = [synthetic_problem.evaluate(p, xi) for p, xi in zip(points, noises)]
        np.testing.assert_allclose(synthetic_problem.evaluate_batch(points, noises), expected, rtol=1e-12)

    def test_evaluate_dimension_checked(self, synthetic_problem):
        with pytest.raises(DimensionMismatchError):
            synthetic_problem.evaluate_pair(np.zeros(3), np.zeros(10), None)

    def test_linear_problem(self):
        problem = LinearProblem([3.0, 4.0])
        assert problem.lipschitz_bound == 5.0
        np.testing.assert_allclose(problem.minimizer, [-0.6, -0.8])
        assert problem.optimum_value == pytest.approx(-5.0)
        np.testing.assert_array_equal(problem.smoothed_gradient(np.zeros(2), 0.3), [3.0, 4.0])

    def test_linear_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            LinearProblem([0.0, 0.0])

    def test_quadratic_smoothing(self):
        problem = QuadraticProblem(4, coefficient=0.5)
        x = np.array([0.1, 0.2, 0.0, 0.0])
        assert problem.smoothed_value(x, 0.3) == pytest.approx(0.5 * (0.05 + 0.09 * 4 / 6))
        np.testing.assert_allclose(problem.smoothed_gradient(x, 0.3), x)

    def test_zero_problem(self):
        problem = ZeroProblem(3)
        assert problem.evaluate(np.ones(3), None) == 0.0
        assert problem.objective(np.ones(3)) == 0.0


def _component_problems(name, tiny_dataset, synthetic_problem):
    if name == "hinge":
        return make_hinge_svm(tiny_dataset)
    if name == "synthetic":
        return synthetic_problem
    if name == "hard-f1":
        return make_hard_instance("f1", 2.0, 10, 3)
    return make_hard_instance("f2", 2.0, 10, 3)


class TestComponentContract:
    """Общие свойства компонент F(·; ξ) для всех задач"""

    @pytest.mark.parametrize("name", ["hinge", "synthetic", "hard-f1", "hard-f2"])
    def test_component_lipschitz(self, name, tiny_dataset, synthetic_problem):
        """|F(x; ξ) − F(y; ξ)| ≤ L_F·‖x − y‖ для случайных x, y, ξ"""
        problem = _component_problems(name, tiny_dataset, synthetic_problem)
        rng = RngStream(21)
        d = problem.dimension
        for _ in range(300):
            x, y = rng.standard_normal(d), rng.standard_normal(d)
            xi = problem.sample_noise(rng)
            gap = abs(problem.evaluate(x, xi) - problem.evaluate(y, xi))
            assert gap <= problem.component_lipschitz * np.linalg.norm(x - y) + 1e-12

    def test_hard_instance_worst_component(self):
        """Худшая компонента F₂(·; 1) укладывается в 2TL√d"""
        problem = make_hard_instance("f2", 1.0, 10, 2)
        x, y = np.zeros(2), np.full(2, 0.05)
        gap = abs(problem.evaluate(x, 1) - problem.evaluate(y, 1))
        assert gap > problem.lipschitz_bound * np.linalg.norm(x - y)
        assert gap <= problem.component_lipschitz * np.linalg.norm(x - y) + 1e-12

    @pytest.mark.parametrize("name", ["hinge", "synthetic", "hard-f1"])
    def test_midpoint_convexity(self, name, tiny_dataset, synthetic_problem):
        """F((x+y)/2; ξ) ≤ (F(x; ξ) + F(y; ξ))/2"""
        problem = _component_problems(name, tiny_dataset, synthetic_problem)
        rng = RngStream(22)
        d = problem.dimension
        for _ in range(300):
            x, y = rng.standard_normal(d), rng.standard_normal(d)
            xi = problem.sample_noise(rng)
            middle = problem.evaluate(0.5 * (x + y), xi)
            assert middle <= 0.5 * (problem.evaluate(x, xi) + problem.evaluate(y, xi)) + 1e-12

    def test_hard_f2_convex_parts(self):
        """У f₂ выпуклы цель и компонента ξ = 0"""
        problem = make_hard_instance("f2", 2.0, 10, 3)
        rng = RngStream(23)
        for _ in range(300):
            x, y = rng.standard_normal(3), rng.standard_normal(3)
            middle = 0.5 * (x + y)
            assert problem.objective(middle) <= 0.5 * (problem.objective(x) + problem.objective(y)) + 1e-12
            assert problem.evaluate(middle, 0) <= 0.5 * (problem.evaluate(x, 0) + problem.evaluate(y, 0)) + 1e-12

    @pytest.mark.parametrize("name", ["hinge", "synthetic", "hard-f1", "hard-f2"])
    def test_pair_shares_noise(self, name, tiny_dataset, synthetic_problem):
        """Оба значения пары x ± μu вычисляются при одной и той же ξ"""
        problem = _component_problems(name, tiny_dataset, synthetic_problem)
        rng = RngStream(24)
        d = problem.dimension
        for _ in range(50):
            x, u = rng.standard_normal(d), rng.standard_normal(d)
            plus, minus = x + 0.1 * u, x - 0.1 * u
            xi = problem.sample_noise(rng)
            assert problem.evaluate_pair(plus, minus, xi) == (problem.evaluate(plus, xi), problem.evaluate(minus, xi))

    def test_hard_f2_unbiased(self):
        """Среднее F₂(x; ξ) по 2·10⁵ реализациям ξ в пределах 4σ от f₂(x)"""
        problem = make_hard_instance("f2", 1.0, 4, 2)
        x = np.array([0.3, -0.5])
        size = 200_000
        noises = problem.sample_noise_batch(RngStream(25), size)
        values = problem.evaluate_batch(np.tile(x, (size, 1)), noises)
        stderr = values.std() / math.sqrt(size)
        assert abs(values.mean() - problem.objective(x)) <= 4 * stderr
