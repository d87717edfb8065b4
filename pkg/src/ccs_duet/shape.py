"""Convex centrally-symmetric robot bodies and Minkowski-sum boundaries.

A body is either a disc or a centrally-symmetric convex polygon.  The sum of
two bodies is represented canonically as a cyclic list of boundary features
(segments and circular arcs, arcs of radius zero standing in for polygon
vertices) ordered by outward-normal angle.  Every feature stores the closed
interval of outward normals it supports, and those intervals tile the circle,
which gives exact logarithmic-time support queries and exact arc-length
bookkeeping along the boundary.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .geom import (
    TWO_PI,
    AngularInterval,
    Point,
    ccw_delta,
    default_tolerance,
    normalize_angle,
    unit_vector,
)

__all__ = [
    "CcsShape",
    "ArcFeature",
    "SegmentFeature",
    "SumBoundary",
    "OrientationResult",
    "reach",
    "support_point",
    "minkowski_sum",
    "contains",
    "separation",
    "orientation",
    "boundary_walk",
    "corridor_region",
]


# ---------------------------------------------------------------------------
# robot bodies


@dataclass(frozen=True)
class CcsShape:
    """A convex centrally-symmetric body, centred at the origin of its frame.

    kind is "disc" (radius > 0) or "polygon" (an even number >= 4 of CCW
    vertices, with vertex k + n/2 the negation of vertex k).
    """

    kind: str
    radius: float = 0.0
    vertices: tuple[Point, ...] = ()

    @classmethod
    def disc(cls, radius: float) -> "CcsShape":
        if not (radius > 0.0 and math.isfinite(radius)):
            raise ValueError(f"disc radius must be positive and finite, got {radius}")
        return cls(kind="disc", radius=float(radius))

    @classmethod
    def polygon(cls, vertices: list[Point] | tuple[Point, ...]) -> "CcsShape":
        verts = tuple(Point(float(x), float(y)) for x, y in vertices)
        _validate_cs_polygon(verts)
        return cls(kind="polygon", vertices=verts)

    @property
    def is_disc(self) -> bool:
        return self.kind == "disc"

    def reach(self, theta: float) -> float:
        """Support value of the body in direction theta."""
        if self.is_disc:
            return self.radius
        u = unit_vector(theta)
        return max(v.dot(u) for v in self.vertices)

    def max_reach(self) -> float:
        if self.is_disc:
            return self.radius
        return max(v.norm() for v in self.vertices)

    def support_point(self, theta: float):
        """Boundary point(s) attaining the reach: a Point, or the two
        endpoints of an edge whose outward normal is theta."""
        return support_point(self, theta)

    def flipped(self) -> "CcsShape":
        """Reflection across the x axis."""
        if self.is_disc:
            return self
        verts = tuple(Point(v.x, -v.y) for v in reversed(self.vertices))
        return CcsShape.polygon(verts)

    def rotated(self, angle: float) -> "CcsShape":
        if self.is_disc:
            return self
        c, s = math.cos(angle), math.sin(angle)
        verts = tuple(Point(c * v.x - s * v.y, s * v.x + c * v.y) for v in self.vertices)
        return CcsShape.polygon(verts)


def _validate_cs_polygon(verts: tuple[Point, ...]) -> None:
    eps = default_tolerance().eps_length
    n = len(verts)
    if n < 4 or n % 2 != 0:
        raise ValueError(f"polygon needs an even vertex count >= 4, got {n}")
    area2 = 0.0
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        area2 += a.cross(b)
    if area2 <= eps:
        raise ValueError("polygon must be counter-clockwise with positive area")
    half = n // 2
    for k in range(half):
        v, w = verts[k], verts[k + half]
        if abs(v.x + w.x) > eps or abs(v.y + w.y) > eps:
            raise ValueError(
                f"polygon is not centrally symmetric: vertex {k} = {tuple(v)} "
                f"vs vertex {k + half} = {tuple(w)}"
            )
    for i in range(n):
        o, a, b = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
        if (a - o).cross(b - a) <= eps:
            raise ValueError("polygon must be strictly convex (no reflex or collinear vertices)")


# ---------------------------------------------------------------------------
# boundary features


@dataclass(frozen=True)
class SegmentFeature:
    """A straight boundary edge, supporting a single outward normal."""

    p0: Point
    p1: Point
    normal: float

    @property
    def kind(self) -> str:
        return "segment"

    @property
    def normal_range(self) -> AngularInterval:
        return AngularInterval(self.normal, self.normal)

    @property
    def length(self) -> float:
        return self.p0.dist(self.p1)

    @property
    def start_point(self) -> Point:
        return self.p0

    @property
    def end_point(self) -> Point:
        return self.p1

    def translated(self, offset: Point) -> "SegmentFeature":
        return SegmentFeature(self.p0 + offset, self.p1 + offset, self.normal)


@dataclass(frozen=True)
class ArcFeature:
    """A circular boundary arc (radius zero encodes a polygon vertex).

    The arc covers outward normals counter-clockwise from angle_from to
    angle_to; the boundary point at normal t is center + radius * u(t).
    """

    center: Point
    radius: float
    angle_from: float
    angle_to: float
    full: bool = False

    @property
    def kind(self) -> str:
        return "arc"

    @property
    def normal_range(self) -> AngularInterval:
        return AngularInterval(self.angle_from, self.angle_to, full=self.full)

    @property
    def span(self) -> float:
        return TWO_PI if self.full else ccw_delta(self.angle_from, self.angle_to)

    @property
    def length(self) -> float:
        return self.radius * self.span

    def point_at(self, theta: float) -> Point:
        return self.center + unit_vector(theta).scaled(self.radius)

    @property
    def start_point(self) -> Point:
        return self.point_at(self.angle_from)

    @property
    def end_point(self) -> Point:
        return self.point_at(self.angle_to)

    def translated(self, offset: Point) -> "ArcFeature":
        return ArcFeature(self.center + offset, self.radius, self.angle_from, self.angle_to, self.full)


Feature = SegmentFeature | ArcFeature


@dataclass(frozen=True)
class OrientationResult:
    """Maximizing direction(s) of the separation; an interval only at a
    vertex-contact configuration, zero width otherwise."""

    interval: AngularInterval

    @property
    def is_interval(self) -> bool:
        return self.interval.width > default_tolerance().eps_angle and not self.interval.full

    @property
    def angle(self) -> float:
        return self.interval.start if not self.is_interval else self.interval.midpoint()


# ---------------------------------------------------------------------------
# the sum boundary


class SumBoundary:
    """Closed convex centrally-symmetric boundary as a cyclic feature list.

    Treat instances as immutable: all derived arrays are precomputed at
    construction time and queries are read-only.
    """

    def __init__(self, features: list[Feature], center: Point):
        if not features:
            raise ValueError("a boundary needs at least one feature")
        self.features: tuple[Feature, ...] = tuple(features)
        self.center = center
        self.perimeter = sum(f.length for f in self.features)
        self._build_tables()

    def _build_tables(self) -> None:
        n = len(self.features)
        base = self.features[0].normal_range.start
        self._base_angle = base
        widths = np.empty(n)
        qx = np.empty(n)
        qy = np.empty(n)
        rr = np.empty(n)
        lengths = np.empty(n)
        for i, f in enumerate(self.features):
            if isinstance(f, ArcFeature):
                widths[i] = f.span
                qx[i], qy[i] = f.center
                rr[i] = f.radius
            else:
                widths[i] = 0.0
                qx[i], qy[i] = f.p0
                rr[i] = 0.0
            lengths[i] = f.length
        bounds = np.concatenate([[0.0], np.cumsum(widths)])
        if abs(bounds[-1] - TWO_PI) > 1e-7:
            raise ValueError("feature normal ranges must tile the circle")
        bounds[-1] = TWO_PI
        self._bounds = bounds
        self._qx, self._qy, self._rr = qx, qy, rr
        self._lengths = lengths
        self._cumlen = np.concatenate([[0.0], np.cumsum(lengths)])
        # piecewise-linear map from normal offset to CCW arc length; straight
        # edges appear as vertical jumps (duplicated x with stepped y)
        xs = [0.0]
        ys = [0.0]
        for i in range(n):
            if widths[i] == 0.0:
                xs.append(bounds[i])
                ys.append(self._cumlen[i + 1])
            else:
                xs.append(bounds[i + 1])
                ys.append(self._cumlen[i + 1])
        self._walk_x = np.asarray(xs)
        self._walk_y = np.asarray(ys)

    # -- basic queries ------------------------------------------------------

    def max_reach(self) -> float:
        c = self.center
        return max(
            (f.center.dist(c) + f.radius) if isinstance(f, ArcFeature) else max(f.p0.dist(c), f.p1.dist(c))
            for f in self.features
        )

    def translated(self, new_center: Point) -> "SumBoundary":
        offset = new_center - self.center
        if offset.norm() == 0.0:
            return self
        return SumBoundary([f.translated(offset) for f in self.features], new_center)

    def feature_index_at(self, theta: float) -> int:
        """Index of the feature whose normal range contains theta (arcs win
        over zero-width edges on exact hits)."""
        offset = ccw_delta(self._base_angle, theta)
        i = int(np.searchsorted(self._bounds, offset, side="right")) - 1
        return min(max(i, 0), len(self.features) - 1)

    def reach(self, theta: float) -> float:
        """Support value about the boundary's own center."""
        i = self.feature_index_at(theta)
        u = unit_vector(theta)
        return (Point(self._qx[i], self._qy[i]) - self.center).dot(u) + self._rr[i]

    def reach_many(self, thetas: np.ndarray) -> np.ndarray:
        offs = np.mod(thetas - self._base_angle, TWO_PI)
        idx = np.clip(np.searchsorted(self._bounds, offs, side="right") - 1, 0, len(self.features) - 1)
        ux, uy = np.cos(thetas), np.sin(thetas)
        return (self._qx[idx] - self.center.x) * ux + (self._qy[idx] - self.center.y) * uy + self._rr[idx]

    def boundary_point(self, theta: float) -> Point:
        """Boundary point at outward normal theta (an arc point; on an exact
        edge normal, the edge's counter-clockwise end)."""
        f = self.features[self.feature_index_at(theta)]
        if isinstance(f, ArcFeature):
            return f.point_at(theta)
        return f.p1

    def breakpoint_angles(self) -> list[float]:
        """Normal angles separating features (integration kink locations)."""
        return [normalize_angle(self._base_angle + b) for b in self._bounds[:-1]]

    # -- separation and containment -----------------------------------------

    def signed_distance(self, p: Point) -> float:
        """Signed distance from p to the boundary: positive outside, zero on
        the boundary, negative (minus the depth) inside."""
        best, _, _ = self._signed_distance_argmax(p)
        return best

    def _signed_distance_argmax(self, p: Point) -> tuple[float, float, int]:
        """(value, maximizing normal angle, feature index).

        The signed distance is max over directions t of (p - x(t)) . u(t)
        restricted feature-wise, which is exact for a convex boundary.
        """
        eps = default_tolerance().eps_length
        best = -math.inf
        best_theta = 0.0
        best_idx = -1
        for i, f in enumerate(self.features):
            if isinstance(f, ArcFeature):
                d = p - f.center
                dn = d.norm()
                if dn <= eps:
                    val = dn - f.radius
                    th = f.normal_range.midpoint()
                elif f.normal_range.contains(d.angle()):
                    val = dn - f.radius
                    th = d.angle()
                else:
                    va = d.dot(unit_vector(f.angle_from)) - f.radius
                    vb = d.dot(unit_vector(f.angle_to)) - f.radius
                    val, th = (va, f.angle_from) if va >= vb else (vb, f.angle_to)
            else:
                th = f.normal
                val = (p - f.p0).dot(unit_vector(th))
            if val > best:
                best, best_theta, best_idx = val, th, i
        return best, best_theta, best_idx

    def signed_distance_many(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized signed distance for an (n, 2) array of query points."""
        px = pts[:, 0]
        py = pts[:, 1]
        best = np.full(len(pts), -np.inf)
        for i, f in enumerate(self.features):
            if isinstance(f, ArcFeature):
                dx = px - self._qx[i]
                dy = py - self._qy[i]
                dn = np.hypot(dx, dy)
                ang = np.arctan2(dy, dx)
                offs = np.mod(ang - f.angle_from, TWO_PI)
                inside = (offs <= f.span) | (dn <= 1e-15) | f.full
                ua = unit_vector(f.angle_from)
                ub = unit_vector(f.angle_to)
                end_val = np.maximum(dx * ua.x + dy * ua.y, dx * ub.x + dy * ub.y)
                val = np.where(inside, dn, end_val) - f.radius
            else:
                u = unit_vector(f.normal)
                val = (px - self._qx[i]) * u.x + (py - self._qy[i]) * u.y
            np.maximum(best, val, out=best)
        return best

    def orientation_interval(self, p: Point) -> AngularInterval:
        """Maximizing direction(s) of the signed distance from p.

        Returns the full normal cone when p sits on a polygon-type vertex of
        the boundary, a zero-width interval otherwise.
        """
        eps = default_tolerance().eps_length
        val, theta, idx = self._signed_distance_argmax(p)
        # a contact exactly on a polygon-type vertex realizes the whole cone;
        # ties with neighbouring features must not shadow it
        for f in self.features:
            if (
                isinstance(f, ArcFeature)
                and p.dist(f.center) <= eps
                and abs((p.dist(f.center) - f.radius) - val) <= eps
            ):
                return f.normal_range
        return AngularInterval(theta, theta)

    # -- positions and walks --------------------------------------------------

    def arc_position_of_normal(self, theta: float) -> float:
        """CCW arc length from the feature-list origin to the boundary point
        at outward normal theta."""
        i = self.feature_index_at(theta)
        f = self.features[i]
        if isinstance(f, ArcFeature):
            local = ccw_delta(f.angle_from, theta)
            if f.full:
                local = ccw_delta(self._base_angle, theta)
            return float(self._cumlen[i] + f.radius * min(local, f.span))
        return float(self._cumlen[i + 1])

    def locate(self, p: Point, tol: float | None = None) -> tuple[int, float, float]:
        """(feature index, local parameter, gap) of the boundary point
        nearest to p.  Local parameter is a normal angle on arcs and a [0, 1]
        fraction on segments.  Raises if the gap exceeds tol."""
        if tol is None:
            tol = max(default_tolerance().eps_length, 1e-9)
        best_gap = math.inf
        best: tuple[int, float] = (0, 0.0)
        for i, f in enumerate(self.features):
            if isinstance(f, ArcFeature):
                d = p - f.center
                dn = d.norm()
                if f.radius <= 0.0:
                    gap = dn
                    local = f.angle_from
                elif dn == 0.0:
                    gap = f.radius
                    local = f.angle_from
                else:
                    ang = d.angle()
                    if f.normal_range.contains(ang):
                        gap = abs(dn - f.radius)
                        local = ang
                    else:
                        ga = p.dist(f.start_point)
                        gb = p.dist(f.end_point)
                        gap, local = (ga, f.angle_from) if ga <= gb else (gb, f.angle_to)
            else:
                d = f.p1 - f.p0
                denom = d.dot(d)
                t = 0.0 if denom == 0.0 else max(0.0, min(1.0, (p - f.p0).dot(d) / denom))
                gap = p.dist(f.p0 + d.scaled(t))
                local = t
            if gap < best_gap:
                best_gap = gap
                best = (i, local)
        if best_gap > tol:
            raise ValueError(f"point {tuple(p)} is off the boundary by {best_gap:.3e}")
        return best[0], best[1], best_gap

    def arc_position(self, idx: int, local: float) -> float:
        f = self.features[idx]
        if isinstance(f, ArcFeature):
            span = ccw_delta(f.angle_from, local) if not f.full else ccw_delta(self._base_angle, local)
            return float(self._cumlen[idx] + f.radius * min(span, f.span))
        return float(self._cumlen[idx] + local * f.length)

    def walk_pieces(self, s_from: float, s_to: float):
        """Boundary pieces walking CCW from arc position s_from to s_to.

        Returns a list of (feature, local_start, local_end) with local values
        as in locate(); s values are taken modulo the perimeter.
        """
        per = self.perimeter
        s0 = s_from % per
        delta = (s_to - s_from) % per
        out = []
        n = len(self.features)
        i = int(np.searchsorted(self._cumlen, s0, side="right")) - 1
        i = min(max(i, 0), n - 1)
        pos = s0
        remaining = delta
        while remaining > 1e-15 * max(per, 1.0):
            f = self.features[i]
            f_end = self._cumlen[i + 1]
            take = min(remaining, f_end - pos)
            if take > 0.0 and f.length > 0.0:
                out.append((f, pos - self._cumlen[i], pos - self._cumlen[i] + take))
            remaining -= take
            pos = f_end
            i = (i + 1) % n
            if i == 0:
                pos = 0.0
        return out

    def walk_length(self, theta_from: float, theta_to: float) -> float:
        """CCW boundary length between the points at two outward normals."""
        a = self.arc_position_of_normal(theta_from)
        b = self.arc_position_of_normal(theta_to)
        return (b - a) % self.perimeter

    def walk_length_many(self, th_from: np.ndarray, th_to: np.ndarray) -> np.ndarray:
        sa = self._arc_positions_of_normals(th_from)
        sb = self._arc_positions_of_normals(th_to)
        return np.mod(sb - sa, self.perimeter)

    def _arc_positions_of_normals(self, thetas: np.ndarray) -> np.ndarray:
        offs = np.mod(thetas - self._base_angle, TWO_PI)
        return np.interp(offs, self._walk_x, self._walk_y)


# ---------------------------------------------------------------------------
# construction


@functools.lru_cache(maxsize=256)
def shape_boundary(shape: CcsShape) -> SumBoundary:
    """The shape's own boundary at the origin (a degenerate one-body sum)."""
    if shape.is_disc:
        return SumBoundary([ArcFeature(Point(0.0, 0.0), shape.radius, 0.0, 0.0, full=True)], Point(0.0, 0.0))
    return SumBoundary(_features_from_polygon(list(shape.vertices), 0.0), Point(0.0, 0.0))


def _edge_normal(a: Point, b: Point) -> float:
    return normalize_angle((b - a).angle() - 0.5 * math.pi)


def _features_from_polygon(verts: list[Point], radius: float) -> list[Feature]:
    """Alternating vertex arcs and edge segments for a CCW convex polygon,
    optionally rounded outward by a disc radius."""
    n = len(verts)
    normals = [_edge_normal(verts[i], verts[(i + 1) % n]) for i in range(n)]
    # rotate so edge normals ascend from the smallest; keeps construction
    # deterministic for congruent inputs
    k = min(range(n), key=lambda i: normals[i])
    verts = verts[k:] + verts[:k]
    normals = normals[k:] + normals[:k]
    feats: list[Feature] = []
    for i in range(n):
        prev_normal = normals[i - 1]
        v = verts[i]
        feats.append(ArcFeature(v, radius, prev_normal, normals[i]))
        off = unit_vector(normals[i]).scaled(radius)
        feats.append(SegmentFeature(v + off, verts[(i + 1) % n] + off, normals[i]))
    return feats


def _merge_polygon_edges(pa: tuple[Point, ...], pb: tuple[Point, ...]) -> list[Point]:
    """Vertices of the sum of two CCW convex polygons by merging edge vectors
    in angular order."""
    eps_len = default_tolerance().eps_length
    eps_ang = default_tolerance().eps_angle

    def bottom_start(poly: tuple[Point, ...]) -> list[Point]:
        k = min(range(len(poly)), key=lambda i: (poly[i].y, poly[i].x))
        return list(poly[k:]) + list(poly[:k])

    def edges(poly: list[Point]) -> list[Point]:
        return [poly[(i + 1) % len(poly)] - poly[i] for i in range(len(poly))]

    a = bottom_start(pa)
    b = bottom_start(pb)
    ea, eb = edges(a), edges(b)

    def dir_key(v: Point) -> float:
        # edge directions of a bottom-started CCW polygon ascend in [0, 2*pi)
        return normalize_angle(math.atan2(v.y, v.x))

    merged: list[Point] = []
    i = j = 0
    while i < len(ea) or j < len(eb):
        if j >= len(eb) or (i < len(ea) and dir_key(ea[i]) <= dir_key(eb[j])):
            v = ea[i]
            i += 1
        else:
            v = eb[j]
            j += 1
        if merged and abs(normalize_angle(dir_key(merged[-1]) - dir_key(v) + math.pi) - math.pi) <= eps_ang:
            merged[-1] = merged[-1] + v  # collinear edges fuse
        else:
            merged.append(v)
    start = a[0] + b[0]
    out = [start]
    for v in merged[:-1]:
        out.append(out[-1] + v)
    # fuse vertices that collapsed within tolerance
    cleaned = [out[0]]
    for p in out[1:]:
        if p.dist(cleaned[-1]) > eps_len:
            cleaned.append(p)
    if len(cleaned) > 1 and cleaned[0].dist(cleaned[-1]) <= eps_len:
        cleaned.pop()
    return cleaned


def minkowski_sum(a: CcsShape, b: CcsShape, center: Point = Point(0.0, 0.0)) -> SumBoundary:
    """Boundary of the Minkowski sum of two bodies, placed at center."""
    if a.is_disc and b.is_disc:
        feats: list[Feature] = [ArcFeature(center, a.radius + b.radius, 0.0, 0.0, full=True)]
        return SumBoundary(feats, center)
    if a.is_disc or b.is_disc:
        disc, poly = (a, b) if a.is_disc else (b, a)
        feats = _features_from_polygon([v + center for v in poly.vertices], disc.radius)
        return SumBoundary(feats, center)
    verts = _merge_polygon_edges(a.vertices, b.vertices)
    return SumBoundary(_features_from_polygon([v + center for v in verts], 0.0), center)


def corridor_region(q0: Point, q1: Point, template: SumBoundary) -> SumBoundary:
    """The region swept by the sum boundary translating from q0 to q1 (the
    Minkowski sum of segment q0-q1 with the summed body)."""
    if q0.dist(q1) <= default_tolerance().eps_length:
        return template.translated(q0)
    phi = (q1 - q0).angle()
    top = normalize_angle(phi + 0.5 * math.pi)
    bot = normalize_angle(phi - 0.5 * math.pi)
    cap1 = extract_portion(template.translated(q1), AngularInterval(bot, top))
    cap0 = extract_portion(template.translated(q0), AngularInterval(top, bot))
    feats: list[Feature] = []
    feats.extend(cap1)
    feats.append(SegmentFeature(cap1[-1].end_point, cap0[0].start_point, top))
    feats.extend(cap0)
    feats.append(SegmentFeature(cap0[-1].end_point, cap1[0].start_point, bot))
    mid = Point(0.5 * (q0.x + q1.x), 0.5 * (q0.y + q1.y))
    return SumBoundary(feats, mid)


def extract_portion(boundary: SumBoundary, interval: AngularInterval) -> list[Feature]:
    """Boundary features clipped to an interval of outward normals, in
    traversal order from the interval's start.

    Zero-width (edge) features on the interval's start angle are excluded and
    ones on its end angle included, so adjacent extractions share endpoints
    without duplicating edges.
    """
    eps = default_tolerance().eps_angle
    if interval.full:
        return list(boundary.features)
    width = interval.width
    clips: list[tuple[float, Feature]] = []
    for f in boundary.features:
        if isinstance(f, SegmentFeature):
            off = ccw_delta(interval.start, f.normal)
            if eps < off <= width + eps:
                clips.append((off, f))
            continue
        if f.full:
            clips.append((0.0, ArcFeature(f.center, f.radius, interval.start, interval.end)))
            continue
        lo = ccw_delta(interval.start, f.angle_from)
        # the arc occupies [lo, lo + span] in interval-local coordinates and
        # may wrap past 2*pi; intersect both copies with [0, width]
        for s in (lo, lo - TWO_PI):
            cs = max(s, 0.0)
            ce = min(s + f.span, width)
            if ce > cs + eps:
                clips.append(
                    (
                        cs,
                        ArcFeature(
                            f.center,
                            f.radius,
                            normalize_angle(interval.start + cs),
                            normalize_angle(interval.start + ce),
                        ),
                    )
                )
    clips.sort(key=lambda item: item[0])
    out = [f for _, f in clips]
    if not out:
        # degenerate interval: the portion is the single boundary point
        theta = interval.start
        f = boundary.features[boundary.feature_index_at(theta)]
        if isinstance(f, ArcFeature):
            out = [ArcFeature(f.center, f.radius, theta, normalize_angle(interval.start + width))]
        else:
            out = [f]
    return out


# ---------------------------------------------------------------------------
# module-level operations


def reach(obj: CcsShape | SumBoundary, theta: float) -> float:
    """Support value of a body (about the origin) or a sum boundary (about
    its center) in direction theta."""
    if isinstance(obj, CcsShape):
        return obj.reach(theta)
    return obj.reach(theta)


def support_point(obj: CcsShape | SumBoundary, theta: float):
    """Support point in direction theta; the two endpoints of an edge when
    the direction is that edge's outward normal."""
    eps = default_tolerance().eps_angle
    boundary = shape_boundary(obj) if isinstance(obj, CcsShape) else obj
    theta = normalize_angle(theta)
    for f in boundary.features:
        if isinstance(f, SegmentFeature) and f.length > default_tolerance().eps_length:
            d = ccw_delta(f.normal, theta)
            if d <= eps or TWO_PI - d <= eps:
                return (f.p0, f.p1)
    f = boundary.features[boundary.feature_index_at(theta)]
    if isinstance(f, ArcFeature):
        return f.point_at(theta)
    return f.p1


def contains(boundary: SumBoundary, p: Point, closed: bool = True) -> bool:
    """Whether p lies in the region bounded by the sum boundary."""
    eps = default_tolerance().eps_length
    sd = boundary.signed_distance(p)
    return sd <= eps if closed else sd < -eps


def separation(
    shape_a: CcsShape,
    pos_a: Point,
    shape_b: CcsShape,
    pos_b: Point,
    template: SumBoundary | None = None,
) -> float:
    """Signed clearance of the configuration: the distance from a's position
    to the boundary of the summed body placed at b's position (negative
    inside, with magnitude the penetration depth)."""
    if template is None:
        template = minkowski_sum(shape_a, shape_b)
    return template.signed_distance(pos_a - pos_b + template.center)


def orientation(
    shape_a: CcsShape,
    pos_a: Point,
    shape_b: CcsShape,
    pos_b: Point,
    template: SumBoundary | None = None,
) -> OrientationResult:
    """The direction(s) maximizing the separation of a viable configuration."""
    if template is None:
        template = minkowski_sum(shape_a, shape_b)
    rel = pos_a - pos_b + template.center
    sd = template.signed_distance(rel)
    if sd < -default_tolerance().eps_length:
        raise ValueError(f"configuration is not viable: separation {sd:.3e} < 0")
    return OrientationResult(template.orientation_interval(rel))


def walk_path_pieces(boundary: SumBoundary, s_from: float, s_to: float, direction: str = "ccw"):
    """Primitive pieces for a boundary walk between two arc positions.

    Each piece is a tuple ("segment", p_start, p_end) or ("arc", center,
    radius, start_angle, sweep), in traversal order; sweep is positive for
    counter-clockwise traversal and negative for clockwise.
    """
    if direction == "ccw":
        raw = boundary.walk_pieces(s_from, s_to)
    elif direction == "cw":
        raw = [(f, e, s) for (f, s, e) in reversed(boundary.walk_pieces(s_to, s_from))]
    else:
        raise ValueError(f"direction must be 'ccw' or 'cw', got {direction!r}")
    out = []
    for f, a, b in raw:
        if isinstance(f, SegmentFeature):
            d = (f.p1 - f.p0).unit()
            out.append(("segment", f.p0 + d.scaled(a), f.p0 + d.scaled(b)))
        else:
            th0 = f.angle_from + a / f.radius
            th1 = f.angle_from + b / f.radius
            out.append(("arc", f.center, f.radius, normalize_angle(th0), th1 - th0))
    return out


def boundary_walk(
    boundary: SumBoundary,
    frm: Point,
    to: Point,
    direction: str = "ccw",
):
    """Contiguous boundary portion between two on-boundary points.

    Returns (pieces, length) with pieces formatted as in walk_path_pieces;
    direction is "ccw" or "cw".  Coincident endpoints give an empty walk.
    """
    if direction not in ("ccw", "cw"):
        raise ValueError(f"direction must be 'ccw' or 'cw', got {direction!r}")
    ia, la, _ = boundary.locate(frm)
    ib, lb, _ = boundary.locate(to)
    sa = boundary.arc_position(ia, la)
    sb = boundary.arc_position(ib, lb)
    if frm.dist(to) <= default_tolerance().eps_length:
        return [], 0.0
    length = (sb - sa) % boundary.perimeter if direction == "ccw" else (sa - sb) % boundary.perimeter
    return walk_path_pieces(boundary, sa, sb, direction), length
