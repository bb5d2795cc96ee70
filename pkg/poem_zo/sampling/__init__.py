# Package init for poem_zo/sampling
from .streams import RngStream, sample_uniform_index, sample_unit_ball, sample_unit_sphere

__all__ = ["RngStream", "sample_uniform_index", "sample_unit_ball", "sample_unit_sphere"]
