# Package init for poem_zo/estimator
from .smoothing import smoothed_grad_mc, smoothed_value_mc
from .two_point import SZO_CALLS_PER_ESTIMATE, TwoPointEstimate, finite_difference

__all__ = [
    "SZO_CALLS_PER_ESTIMATE",
    "TwoPointEstimate",
    "finite_difference",
    "smoothed_grad_mc",
    "smoothed_value_mc",
]
