# Package init for poem_zo/vectorspace
from .domains import (
    Ball,
    Box,
    DimensionMismatchError,
    Domain,
    DomainError,
    NonFiniteVectorError,
    Unbounded,
    Vector,
    as_vector,
    contains,
    diameter,
    distance,
    project,
)

__all__ = [
    "Ball",
    "Box",
    "DimensionMismatchError",
    "Domain",
    "DomainError",
    "NonFiniteVectorError",
    "Unbounded",
    "Vector",
    "as_vector",
    "contains",
    "diameter",
    "distance",
    "project",
]
