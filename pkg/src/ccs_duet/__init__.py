"""Shortest coordinated translations for two convex centrally-symmetric
robots in an obstacle-free plane, with independent optimality certificates."""

from .geom import AngularInterval, Point, RigidTransform, TolerancePolicy
from .shape import CcsShape, SumBoundary, minkowski_sum, reach, separation, orientation

__all__ = [
    "AngularInterval",
    "Point",
    "RigidTransform",
    "TolerancePolicy",
    "CcsShape",
    "SumBoundary",
    "minkowski_sum",
    "reach",
    "separation",
    "orientation",
]
