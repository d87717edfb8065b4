"""Low-level planar geometry: points, angles, angular intervals, rigid
transforms and a deterministic convex hull.

Everything here is an immutable value; all predicates go through a shared
tolerance policy so that the rest of the library makes consistent calls on
what counts as equal, incident or degenerate.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TolerancePolicy:
    """Absolute tolerances used by equality and incidence predicates.

    eps_length is in scene units, eps_angle in radians. Both must be > 0.
    """

    eps_length: float = 1e-9
    eps_angle: float = 1e-9

    def __post_init__(self) -> None:
        if not (self.eps_length > 0.0 and self.eps_angle > 0.0):
            raise ValueError("tolerances must be strictly positive")


_DEFAULT_TOL = TolerancePolicy(
    eps_length=float(os.environ.get("CCS_DUET_EPS", 1e-9)),
)


def default_tolerance() -> TolerancePolicy:
    return _DEFAULT_TOL


def set_default_tolerance(tol: TolerancePolicy) -> None:
    """Install a new process-wide tolerance policy (CLI startup only)."""
    global _DEFAULT_TOL
    _DEFAULT_TOL = tol


class Point(NamedTuple):
    """A point (or free vector) in the plane."""

    x: float
    y: float

    def __add__(self, other: "Point") -> "Point":  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def scaled(self, k: float) -> "Point":
        return Point(k * self.x, k * self.y)

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def angle(self) -> float:
        """Polar angle in [0, 2*pi)."""
        return normalize_angle(math.atan2(self.y, self.x))

    def unit(self) -> "Point":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero vector")
        return Point(self.x / n, self.y / n)

    def perp(self) -> "Point":
        """Rotation by +90 degrees."""
        return Point(-self.y, self.x)


ORIGIN = Point(0.0, 0.0)


def unit_vector(theta: float) -> Point:
    return Point(math.cos(theta), math.sin(theta))


def normalize_angle(raw: float) -> float:
    """Reduce an angle to the canonical range [0, 2*pi)."""
    if not math.isfinite(raw):
        raise ValueError(f"angle must be finite, got {raw!r}")
    value = math.fmod(raw, TWO_PI)
    if value < 0.0:
        value += TWO_PI
    if value >= TWO_PI:  # fmod rounding can land exactly on 2*pi
        value -= TWO_PI
    return value


def ccw_delta(start: float, end: float) -> float:
    """Counter-clockwise angular distance from start to end, in [0, 2*pi)."""
    return normalize_angle(end - start)


def angles_close(a: float, b: float, eps: float | None = None) -> bool:
    """Equality of angles modulo 2*pi."""
    if eps is None:
        eps = default_tolerance().eps_angle
    d = ccw_delta(a, b)
    return d <= eps or TWO_PI - d <= eps


@dataclass(frozen=True)
class AngularInterval:
    """A closed arc of directions, read counter-clockwise from start to end.

    start == end denotes a single direction (zero width); the full circle is
    represented explicitly because it cannot be told apart from zero width
    by its endpoints alone.
    """

    start: float
    end: float
    full: bool = False

    @classmethod
    def from_to(cls, start: float, end: float) -> "AngularInterval":
        return cls(normalize_angle(start), normalize_angle(end))

    @classmethod
    def full_circle(cls) -> "AngularInterval":
        return cls(0.0, 0.0, full=True)

    @property
    def width(self) -> float:
        if self.full:
            return TWO_PI
        return ccw_delta(self.start, self.end)

    def contains(self, theta: float, eps: float | None = None) -> bool:
        if self.full:
            return True
        if eps is None:
            eps = default_tolerance().eps_angle
        offset = ccw_delta(self.start, theta)
        return offset <= self.width + eps or TWO_PI - offset <= eps

    def complement(self) -> "AngularInterval":
        """The closed arc covering the rest of the circle."""
        if self.full:
            return AngularInterval(self.start, self.end)
        if ccw_delta(self.start, self.end) == 0.0:
            return AngularInterval.full_circle()
        return AngularInterval(self.end, self.start)

    def midpoint(self) -> float:
        return normalize_angle(self.start + 0.5 * self.width)

    def clamp(self, theta: float) -> float:
        """Nearest direction of the interval to theta."""
        if self.contains(theta):
            return normalize_angle(theta)
        to_start = min(ccw_delta(theta, self.start), ccw_delta(self.start, theta))
        to_end = min(ccw_delta(theta, self.end), ccw_delta(self.end, theta))
        return self.start if to_start <= to_end else self.end


def interval_contains(interval: AngularInterval, theta: float) -> bool:
    """Membership of a direction in a counter-clockwise angular interval."""
    return interval.contains(theta)


@dataclass(frozen=True)
class RigidTransform:
    """Reflection across the x axis (optional), then rotation, then translation."""

    rotation: float = 0.0
    translation: Point = ORIGIN
    flipped: bool = False

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls()

    def apply(self, p: Point) -> Point:
        x, y = p
        if self.flipped:
            y = -y
        c = math.cos(self.rotation)
        s = math.sin(self.rotation)
        return Point(
            c * x - s * y + self.translation.x,
            s * x + c * y + self.translation.y,
        )

    def apply_angle(self, theta: float) -> float:
        """Image of a direction under the linear part."""
        if self.flipped:
            theta = -theta
        return normalize_angle(theta + self.rotation)

    def compose(self, inner: "RigidTransform") -> "RigidTransform":
        """The transform equivalent to applying `inner` first, then self."""
        rot_inner = -inner.rotation if self.flipped else inner.rotation
        return RigidTransform(
            rotation=normalize_angle(self.rotation + rot_inner),
            translation=self.apply(inner.translation),
            flipped=self.flipped != inner.flipped,
        )

    def inverse(self) -> "RigidTransform":
        rot = self.rotation if self.flipped else -self.rotation
        rot = normalize_angle(rot)
        inv_linear = RigidTransform(rotation=rot, flipped=self.flipped)
        return RigidTransform(
            rotation=rot,
            translation=inv_linear.apply(-self.translation),
            flipped=self.flipped,
        )


def apply_transform(transform: RigidTransform, p: Point) -> Point:
    return transform.apply(p)


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Convex hull as a CCW vertex list, collinear interior points removed.

    Deterministic: input points are deduplicated and sorted lexicographically,
    and the returned cycle starts at the lexicographically smallest vertex.
    Degenerate inputs of one or two distinct points come back as-is.
    """
    eps = default_tolerance().eps_length
    pts = sorted(set((float(p[0]), float(p[1])) for p in points))
    # fuse points that coincide within tolerance (keep the lexicographic min)
    fused: list[tuple[float, float]] = []
    for q in pts:
        if fused and abs(q[0] - fused[-1][0]) <= eps and abs(q[1] - fused[-1][1]) <= eps:
            continue
        fused.append(q)
    if not fused:
        raise ValueError("convex_hull needs at least one point")
    if len(fused) <= 2:
        return [Point(*q) for q in fused]

    def build(seq: list[tuple[float, float]]) -> list[tuple[float, float]]:
        chain: list[tuple[float, float]] = []
        for q in seq:
            while len(chain) >= 2:
                ox, oy = chain[-2]
                ax, ay = chain[-1]
                turn = (ax - ox) * (q[1] - oy) - (ay - oy) * (q[0] - ox)
                if turn <= eps:  # clockwise or collinear: drop middle point
                    chain.pop()
                else:
                    break
            chain.append(q)
        return chain

    lower = build(fused)
    upper = build(fused[::-1])
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 3:  # all points collinear
        return [Point(*fused[0]), Point(*fused[-1])]
    return [Point(*q) for q in cycle]


def polygon_perimeter(vertices: list[Point]) -> float:
    n = len(vertices)
    return sum(vertices[i].dist(vertices[(i + 1) % n]) for i in range(n))


def dist_point_segment(p: Point, a: Point, b: Point) -> float:
    d = b - a
    denom = d.dot(d)
    if denom == 0.0:
        return p.dist(a)
    t = max(0.0, min(1.0, (p - a).dot(d) / denom))
    return p.dist(a + d.scaled(t))


def line_intersection(
    anchor1: Point, dir1: Point, anchor2: Point, dir2: Point
) -> Point | None:
    """Intersection of two lines given by anchor and direction, or None if
    they are parallel within the angle tolerance."""
    denom = dir1.cross(dir2)
    scale = dir1.norm() * dir2.norm()
    if scale == 0.0 or abs(denom) <= default_tolerance().eps_angle * scale:
        return None
    t = (anchor2 - anchor1).cross(dir2) / denom
    return anchor1 + dir1.scaled(t)


def reflect_through(p: Point, center: Point) -> Point:
    """Point reflection through a center."""
    return Point(2.0 * center.x - p.x, 2.0 * center.y - p.y)
