"""Tangents from points to sum boundaries, corridor membership, and shortest
point paths around a single convex obstacle with a prescribed passing side.

Paths are sequences of straight segments and contiguous boundary portions; a
portion counts as one logical piece no matter how many primitive arcs and
edges it crosses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geom import (
    TWO_PI,
    Point,
    RigidTransform,
    ccw_delta,
    default_tolerance,
    normalize_angle,
    unit_vector,
)
from .shape import ArcFeature, SumBoundary, walk_path_pieces

__all__ = [
    "SegmentPiece",
    "ArcPiece",
    "BoundaryPortion",
    "PointPath",
    "TangentLine",
    "tangents_from_point",
    "in_corridor",
    "shortest_path_around",
]


# ---------------------------------------------------------------------------
# path pieces


@dataclass(frozen=True)
class SegmentPiece:
    p0: Point
    p1: Point

    @property
    def length(self) -> float:
        return self.p0.dist(self.p1)

    def point_at(self, s: float) -> Point:
        if self.length == 0.0:
            return self.p0
        t = min(max(s / self.length, 0.0), 1.0)
        return self.p0 + (self.p1 - self.p0).scaled(t)

    @property
    def start(self) -> Point:
        return self.p0

    @property
    def end(self) -> Point:
        return self.p1

    def heading_in(self) -> float | None:
        if self.length <= default_tolerance().eps_length:
            return None
        return (self.p1 - self.p0).angle()

    heading_out = heading_in

    def reversed(self) -> "SegmentPiece":
        return SegmentPiece(self.p1, self.p0)

    def transformed(self, t: RigidTransform) -> "SegmentPiece":
        return SegmentPiece(t.apply(self.p0), t.apply(self.p1))


@dataclass(frozen=True)
class ArcPiece:
    """Circular arc from start_angle sweeping by `sweep` (positive is CCW).

    Angles are boundary normals, which for circular pieces coincide with
    polar angles about the centre.
    """

    center: Point
    radius: float
    start_angle: float
    sweep: float

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def angle_at(self, s: float) -> float:
        if self.length == 0.0:
            return self.start_angle
        return self.start_angle + self.sweep * min(max(s / self.length, 0.0), 1.0)

    def point_at(self, s: float) -> Point:
        return self.center + unit_vector(self.angle_at(s)).scaled(self.radius)

    @property
    def start(self) -> Point:
        return self.point_at(0.0)

    @property
    def end(self) -> Point:
        return self.point_at(self.length)

    def heading_in(self) -> float | None:
        return normalize_angle(self.start_angle + math.copysign(0.5 * math.pi, self.sweep))

    def heading_out(self) -> float | None:
        return normalize_angle(self.start_angle + self.sweep + math.copysign(0.5 * math.pi, self.sweep))

    def reversed(self) -> "ArcPiece":
        return ArcPiece(self.center, self.radius, normalize_angle(self.start_angle + self.sweep), -self.sweep)

    def transformed(self, t: RigidTransform) -> "ArcPiece":
        a0 = self.start_angle
        if t.flipped:
            return ArcPiece(t.apply(self.center), self.radius, t.apply_angle(a0), -self.sweep)
        return ArcPiece(t.apply(self.center), self.radius, t.apply_angle(a0), self.sweep)


Primitive = SegmentPiece | ArcPiece


@dataclass(frozen=True)
class BoundaryPortion:
    """A contiguous walk along a sum boundary: one logical path piece."""

    primitives: tuple[Primitive, ...]

    @property
    def length(self) -> float:
        return sum(p.length for p in self.primitives)

    @property
    def start(self) -> Point:
        return self.primitives[0].start

    @property
    def end(self) -> Point:
        return self.primitives[-1].end

    def point_at(self, s: float) -> Point:
        for p in self.primitives:
            if s <= p.length:
                return p.point_at(s)
            s -= p.length
        return self.primitives[-1].end

    def heading_in(self) -> float | None:
        for p in self.primitives:
            h = p.heading_in()
            if h is not None:
                return h
        return None

    def heading_out(self) -> float | None:
        for p in reversed(self.primitives):
            h = p.heading_out()
            if h is not None:
                return h
        return None

    def reversed(self) -> "BoundaryPortion":
        return BoundaryPortion(tuple(p.reversed() for p in reversed(self.primitives)))

    def transformed(self, t: RigidTransform) -> "BoundaryPortion":
        prims = tuple(p.transformed(t) for p in self.primitives)
        return BoundaryPortion(prims if not t.flipped else prims)


PathPiece = SegmentPiece | BoundaryPortion


@dataclass(frozen=True)
class PointPath:
    """A continuous path for one robot centre."""

    start_point: Point
    pieces: tuple[PathPiece, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "_cums", None)

    @property
    def length(self) -> float:
        return sum(p.length for p in self.pieces)

    @property
    def end_point(self) -> Point:
        return self.pieces[-1].end if self.pieces else self.start_point

    def piece_count(self) -> int:
        """Logical piece count: boundary portions count once, zero-length
        pieces not at all."""
        eps = default_tolerance().eps_length
        return sum(1 for p in self.pieces if p.length > eps)

    def _cumulative(self):
        cums = getattr(self, "_cums")
        if cums is None:
            vals = [0.0]
            for p in self.pieces:
                vals.append(vals[-1] + p.length)
            cums = vals
            object.__setattr__(self, "_cums", cums)
        return cums

    def point_at(self, s: float) -> Point:
        if not self.pieces:
            return self.start_point
        cums = self._cumulative()
        s = min(max(s, 0.0), cums[-1])
        import bisect

        i = min(bisect.bisect_right(cums, s) - 1, len(self.pieces) - 1)
        return self.pieces[i].point_at(s - cums[i])

    def points_at(self, svals: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at arc-length positions (n,) -> (n, 2)."""
        out = np.empty((len(svals), 2))
        if not self.pieces:
            out[:, 0] = self.start_point.x
            out[:, 1] = self.start_point.y
            return out
        cums = np.asarray(self._cumulative())
        s = np.clip(svals, 0.0, cums[-1])
        flat: list[Primitive] = []
        flat_offsets: list[float] = []
        # expand portions so every primitive gets a global offset
        offs = 0.0
        for p in self.pieces:
            prims = p.primitives if isinstance(p, BoundaryPortion) else (p,)
            for pr in prims:
                flat.append(pr)
                flat_offsets.append(offs)
                offs += pr.length
        flat_off = np.asarray(flat_offsets + [offs])
        j = np.clip(np.searchsorted(flat_off, s, side="right") - 1, 0, len(flat) - 1)
        local = s - flat_off[j]
        for k, pr in enumerate(flat):
            mask = j == k
            if not np.any(mask):
                continue
            sl = local[mask]
            if isinstance(pr, SegmentPiece):
                if pr.length == 0.0:
                    out[mask, 0] = pr.p0.x
                    out[mask, 1] = pr.p0.y
                else:
                    t = sl / pr.length
                    out[mask, 0] = pr.p0.x + (pr.p1.x - pr.p0.x) * t
                    out[mask, 1] = pr.p0.y + (pr.p1.y - pr.p0.y) * t
            else:
                ang = pr.start_angle + pr.sweep * (sl / pr.length if pr.length else 0.0)
                out[mask, 0] = pr.center.x + pr.radius * np.cos(ang)
                out[mask, 1] = pr.center.y + pr.radius * np.sin(ang)
        return out

    def sample_points(self, spacing: float) -> list[Point]:
        """Points along the path at roughly the given spacing (arcs included
        densely enough to bound chord error)."""
        pts = [self.start_point]
        for p in self.pieces:
            prims = p.primitives if isinstance(p, BoundaryPortion) else (p,)
            for pr in prims:
                if pr.length == 0.0:
                    continue
                n = max(2, int(math.ceil(pr.length / spacing)) + 1)
                for k in range(1, n):
                    pts.append(pr.point_at(pr.length * k / (n - 1)))
        return pts

    def reversed(self) -> "PointPath":
        return PointPath(self.end_point, tuple(p.reversed() for p in reversed(self.pieces)))

    def transformed(self, t: RigidTransform) -> "PointPath":
        return PointPath(t.apply(self.start_point), tuple(p.transformed(t) for p in self.pieces))

    def concat(self, other: "PointPath") -> "PointPath":
        if self.end_point.dist(other.start_point) > 1e-6:
            raise ValueError("paths do not join continuously")
        return PointPath(self.start_point, merge_pieces(self.pieces + other.pieces))


def merge_pieces(pieces: tuple[PathPiece, ...]) -> tuple[PathPiece, ...]:
    """Drop zero-length pieces and fuse collinear consecutive segments."""
    eps = default_tolerance().eps_length
    eps_a = default_tolerance().eps_angle
    out: list[PathPiece] = []
    for p in pieces:
        if p.length <= eps:
            continue
        if out and isinstance(p, SegmentPiece) and isinstance(out[-1], SegmentPiece):
            prev = out[-1]
            same_dir = abs(normalize_angle(prev.heading_out() - p.heading_in() + math.pi) - math.pi) <= max(
                eps_a, 1e-9
            )
            if same_dir and prev.p1.dist(p.p0) <= math.sqrt(eps):
                out[-1] = SegmentPiece(prev.p0, p.p1)
                continue
        out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# tangents


@dataclass(frozen=True)
class TangentLine:
    """A support line through an external point.

    `touch` is the effective tangency point; `polyline` carries the full
    route from the through point to the touch point (two pieces in the
    composite narrow-corridor construction, a single segment otherwise).
    """

    through: Point
    touch: Point
    side: str  # "upper" | "lower"
    touch_normal: float
    polyline: tuple[Point, ...] = field(default=())

    def direction(self) -> Point:
        """Unit direction of travel along the tangent, through -> touch;
        falls back to the boundary heading when the two coincide."""
        d = self.touch - self.through
        if d.norm() > default_tolerance().eps_length:
            return d.unit()
        return unit_vector(self.touch_normal + 0.5 * math.pi)


def _tangent_touch_normals(p: Point, boundary: SumBoundary) -> list[float]:
    """Outward normals at which the support line passes through p (the roots
    of (p - x(t)) . u(t) = 0, solved feature-wise in closed form)."""
    eps_a = default_tolerance().eps_angle
    roots: list[float] = []
    for f in boundary.features:
        if not isinstance(f, ArcFeature):
            continue  # an edge root coincides with a vertex-cone root
        d = p - f.center
        dn = d.norm()
        if dn < f.radius or dn == 0.0:
            continue
        alpha = math.acos(min(1.0, f.radius / dn))
        phi = d.angle()
        for cand in (phi - alpha, phi + alpha):
            cand = normalize_angle(cand)
            if f.normal_range.contains(cand, eps=1e-12):
                roots.append(cand)
    # dedupe modulo 2*pi
    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or (ccw_delta(out[-1], r) > eps_a and ccw_delta(r, out[0]) > eps_a):
            out.append(r)
    return out


def _touch_point(boundary: SumBoundary, theta: float) -> Point:
    f = boundary.features[boundary.feature_index_at(theta)]
    if isinstance(f, ArcFeature):
        return f.point_at(theta)
    return f.p1


def tangents_from_point(p: Point, boundary: SumBoundary, primary: SumBoundary | None = None):
    """The two support lines through p, labelled (upper, lower).

    Upper is the tangent whose touch point is higher (ties broken by nudging
    the touch normal counter-clockwise).  If p lies inside `boundary` but
    outside a designated `primary` boundary, composite tangents are built:
    each follows the corresponding tangent to the primary until it crosses
    this boundary, and that crossing becomes the effective touch point.
    """
    eps = default_tolerance().eps_length
    sd = boundary.signed_distance(p)
    if sd < -eps:
        if primary is None:
            raise ValueError(f"tangent from an interior point (depth {-sd:.3e}) needs a composite context")
        return _composite_tangents(p, boundary, primary)
    if sd <= eps:
        # p on the boundary: both tangents degenerate to p itself
        interval = boundary.orientation_interval(p)
        up = TangentLine(p, p, "upper", interval.end, polyline=(p,))
        lo = TangentLine(p, p, "lower", interval.start, polyline=(p,))
        return up, lo
    roots = _tangent_touch_normals(p, boundary)
    if len(roots) != 2:
        raise ValueError(f"expected two tangent touch points, found {len(roots)}")
    t0, t1 = roots
    a = TangentLine(p, _touch_point(boundary, t0), "?", t0, polyline=(p, _touch_point(boundary, t0)))
    b = TangentLine(p, _touch_point(boundary, t1), "?", t1, polyline=(p, _touch_point(boundary, t1)))
    upper, lower = _label_upper_lower(boundary, a, b)
    return upper, lower


def _label_upper_lower(boundary: SumBoundary, a: TangentLine, b: TangentLine):
    eps = default_tolerance().eps_length
    ya, yb = a.touch.y, b.touch.y
    if abs(ya - yb) <= eps:
        # nudge both touch normals counter-clockwise and compare again
        da = default_tolerance().eps_angle * 16
        ya = _touch_point(boundary, normalize_angle(a.touch_normal + da)).y
        yb = _touch_point(boundary, normalize_angle(b.touch_normal + da)).y
    import dataclasses

    if ya >= yb:
        hi, lo = a, b
    else:
        hi, lo = b, a
    return dataclasses.replace(hi, side="upper"), dataclasses.replace(lo, side="lower")


def _composite_tangents(p: Point, boundary: SumBoundary, primary: SumBoundary):
    """Tangents through a point inside `boundary`: follow the tangent to the
    primary boundary until it crosses this one."""
    up_p, lo_p = tangents_from_point(p, primary)
    out = []
    for base, side in ((up_p, "upper"), (lo_p, "lower")):
        d = base.direction()
        hit = _ray_boundary_exit(p, d, boundary)
        normal = boundary.orientation_interval(hit).midpoint()
        out.append(TangentLine(p, hit, side, normal, polyline=(p, hit)))
    return out[0], out[1]


def _ray_boundary_exit(p: Point, d: Point, boundary: SumBoundary) -> Point:
    """Exit point of the forward ray p + s d (s >= 0) from a convex region
    containing p, found by bisection on the signed distance."""
    lo = 0.0
    hi = 1.0
    reach_bound = 2.0 * boundary.max_reach() + (p - boundary.center).norm() + 1.0
    while boundary.signed_distance(p + d.scaled(hi)) < 0.0:
        hi *= 2.0
        if hi > 4.0 * reach_bound:
            raise ValueError("ray does not exit the region")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if boundary.signed_distance(p + d.scaled(mid)) < 0.0:
            lo = mid
        else:
            hi = mid
    return p + d.scaled(0.5 * (lo + hi))


# ---------------------------------------------------------------------------
# corridor membership and shortest paths


def in_corridor(p: Point, q0: Point, q1: Point, template: SumBoundary, closed: bool = True) -> bool:
    """Whether p lies in the region swept by the summed body moving from q0
    to q1 (exact for discs and polygons alike)."""
    from .shape import contains, corridor_region

    return contains(corridor_region(q0, q1, template), p, closed=closed)


def _segment_clearance(p: Point, q: Point, boundary: SumBoundary) -> float:
    """Minimum signed distance from the segment pq to the region boundary,
    computed feature-wise in closed form (negative if the open segment cuts
    into the region)."""
    best = -math.inf
    for f in boundary.features:
        if isinstance(f, ArcFeature):
            dp = p - f.center
            dq = q - f.center
            cands: list[float] = []
            for d in (dp, dq):
                if d.norm() > 0.0:
                    cands.append(d.angle())
            pq = q - p
            if pq.norm() > 0.0:
                cands.append(normalize_angle(pq.angle() + 0.5 * math.pi))
                cands.append(normalize_angle(pq.angle() - 0.5 * math.pi))
            if not f.full:
                cands.extend((f.angle_from, f.angle_to))
            val = -math.inf
            for t in cands:
                if not f.normal_range.contains(t, eps=1e-12):
                    continue
                u = unit_vector(t)
                val = max(val, min(dp.dot(u), dq.dot(u)) - f.radius)
            if val == -math.inf:
                continue
        else:
            u = unit_vector(f.normal)
            val = min((p - f.p0).dot(u), (q - f.p0).dot(u))
        best = max(best, val)
    return best


def _departure_arrival(p: Point, boundary: SumBoundary, arriving: bool) -> tuple[float, Point]:
    """Touch normal and point for the taut tangent at p: the departing
    tangent continues into counter-clockwise boundary travel, the arriving
    one leaves it."""
    eps = default_tolerance().eps_length
    sd = boundary.signed_distance(p)
    if sd <= eps:
        interval = boundary.orientation_interval(p)
        theta = interval.start if arriving else interval.end
        return theta, p
    roots = _tangent_touch_normals(p, boundary)
    if len(roots) != 2:
        raise ValueError(f"expected two tangent touch points, found {len(roots)}")
    for theta in roots:
        touch = _touch_point(boundary, theta)
        travel = unit_vector(theta + 0.5 * math.pi)
        along = (p - touch) if arriving else (touch - p)
        if along.dot(travel) >= -eps:
            return theta, touch
    raise ValueError("no tangent satisfies the travel-direction condition")


def shortest_path_around(frm: Point, to: Point, boundary: SumBoundary, side: str = "either") -> PointPath:
    """Shortest path between two exterior points avoiding the open region.

    side "ccw" walks the boundary counter-clockwise, "cw" clockwise, and
    "either" takes the shorter of the two (ties go counter-clockwise).  A
    segment that already misses the open region is returned unchanged.
    """
    eps = default_tolerance().eps_length
    if side not in ("ccw", "cw", "either"):
        raise ValueError(f"side must be 'ccw', 'cw' or 'either', got {side!r}")
    for label, pt in (("start", frm), ("end", to)):
        if boundary.signed_distance(pt) < -eps:
            raise ValueError(f"{label} point {tuple(pt)} lies strictly inside the obstacle region")
    if _segment_clearance(frm, to, boundary) >= -eps:
        return PointPath(frm, merge_pieces((SegmentPiece(frm, to),)))
    if side == "either":
        ccw = shortest_path_around(frm, to, boundary, "ccw")
        cw = shortest_path_around(frm, to, boundary, "cw")
        return ccw if ccw.length <= cw.length + eps else cw
    if side == "ccw":
        th_dep, touch_dep = _departure_arrival(frm, boundary, arriving=False)
        th_arr, touch_arr = _departure_arrival(to, boundary, arriving=True)
        walk_dir = "ccw"
    else:
        # clockwise travel is counter-clockwise travel of the reversed path
        th_dep, touch_dep = _departure_arrival(frm, boundary, arriving=True)
        th_arr, touch_arr = _departure_arrival(to, boundary, arriving=False)
        walk_dir = "cw"
    s_dep = boundary.arc_position_of_normal(th_dep)
    s_arr = boundary.arc_position_of_normal(th_arr)
    raw = walk_path_pieces(boundary, s_dep, s_arr, walk_dir)
    prims: list[Primitive] = []
    for piece in raw:
        if piece[0] == "segment":
            prims.append(SegmentPiece(piece[1], piece[2]))
        else:
            _, c, r, a0, sweep = piece
            prims.append(ArcPiece(c, r, a0, sweep))
    pieces: list[PathPiece] = [SegmentPiece(frm, touch_dep)]
    if prims:
        pieces.append(BoundaryPortion(tuple(prims)))
    pieces.append(SegmentPiece(touch_arr, to))
    return PointPath(frm, merge_pieces(tuple(pieces)))
