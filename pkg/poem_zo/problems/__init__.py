# Package init for poem_zo/problems
from .base import NoiseDraw, StochasticProblem
from .hard_instance import HardInstanceProblem, all_zero_probability, make_hard_instance
from .hinge import HingeSvmProblem, make_hinge_svm
from .libsvm import (
    DatasetInfo,
    EmptyDatasetError,
    LibsvmParseError,
    SparseDataset,
    known_datasets,
    load_libsvm,
    parse_libsvm,
)
from .synthetic import (
    LinearProblem,
    QuadraticProblem,
    SyntheticNormProblem,
    ZeroProblem,
    make_synthetic_known_optimum,
)


def evaluate_pair(problem: StochasticProblem, x, y, xi):
    """(F(x; ξ), F(y; ξ)) при общей реализации ξ."""
    return problem.evaluate_pair(x, y, xi)


def sample_noise(problem: StochasticProblem, rng):
    """ξ ∼ Ξ задачи problem."""
    return problem.sample_noise(rng)


__all__ = [
    "DatasetInfo",
    "EmptyDatasetError",
    "HardInstanceProblem",
    "HingeSvmProblem",
    "LibsvmParseError",
    "LinearProblem",
    "NoiseDraw",
    "QuadraticProblem",
    "SparseDataset",
    "StochasticProblem",
    "SyntheticNormProblem",
    "ZeroProblem",
    "all_zero_probability",
    "evaluate_pair",
    "known_datasets",
    "load_libsvm",
    "make_hard_instance",
    "make_hinge_svm",
    "make_synthetic_known_optimum",
    "parse_libsvm",
]
