import math
import random

import numpy as np
import pytest

from conftest import random_ccs_shape
from ccs_duet.geom import TWO_PI, Point, reflect_through, unit_vector
from ccs_duet.pathfind import (
    in_corridor,
    shortest_path_around,
    tangents_from_point,
)
from ccs_duet.shape import CcsShape, minkowski_sum

UNIT_CIRCLE = minkowski_sum(CcsShape.disc(0.5), CcsShape.disc(0.5))
SQUARE = CcsShape.polygon([Point(1, -1), Point(1, 1), Point(-1, 1), Point(-1, -1)])


def polyline_shortest_path(frm: Point, to: Point, boundary, n: int = 2000):
    """Independent oracle: the shortest path on each side of a single convex
    obstacle is a chain of the convex hull of the endpoints plus a densely
    sampled boundary ring.  The ring is inscribed, so the returned lengths
    never exceed the true optimum.  Returns (min, ccw-ish, cw-ish) chain
    lengths, or None when an endpoint is not a hull vertex (the construction
    does not apply there)."""
    from ccs_duet.geom import convex_hull

    ring = [boundary.boundary_point(TWO_PI * k / n) for k in range(n)]
    hull = convex_hull([frm, to] + ring)
    key = lambda p: (round(p.x, 9), round(p.y, 9))
    index = {key(p): i for i, p in enumerate(hull)}
    if key(frm) not in index or key(to) not in index:
        return None
    i, j = index[key(frm)], index[key(to)]
    m = len(hull)
    chain1 = 0.0
    k = i
    while k != j:
        chain1 += hull[k].dist(hull[(k + 1) % m])
        k = (k + 1) % m
    chain2 = 0.0
    k = j
    while k != i:
        chain2 += hull[k].dist(hull[(k + 1) % m])
        k = (k + 1) % m
    return min(chain1, chain2), chain1, chain2


def test_tangents_circle_examples():
    up, lo = tangents_from_point(Point(2, 0), UNIT_CIRCLE)
    assert up.touch == pytest.approx((0.5, math.sqrt(3) / 2))
    assert lo.touch == pytest.approx((0.5, -math.sqrt(3) / 2))
    up2, lo2 = tangents_from_point(Point(0, 3), UNIT_CIRCLE)
    touches = sorted([up2.touch, lo2.touch])
    assert touches[0] == pytest.approx((-2 * math.sqrt(2) / 3, 1 / 3))
    assert touches[1] == pytest.approx((2 * math.sqrt(2) / 3, 1 / 3))


def test_tangents_square_corner():
    s = minkowski_sum(SQUARE, SQUARE)  # square of half-width 2
    up, lo = tangents_from_point(Point(3, 0), s)
    assert up.touch == pytest.approx((2.0, 2.0))
    assert lo.touch == pytest.approx((2.0, -2.0))


def test_tangent_support_property():
    # the tangent line supports the region: its support value in the touch
    # normal direction equals the region's reach
    rng = random.Random(4)
    for _ in range(20):
        s = minkowski_sum(random_ccs_shape(rng), random_ccs_shape(rng))
        p = Point(rng.uniform(2.5, 6), rng.uniform(2.5, 6))
        if s.signed_distance(p) < 0.1:
            continue
        for tan in tangents_from_point(p, s):
            u = unit_vector(tan.touch_normal)
            line_support = (tan.through - s.center).dot(u)
            assert line_support == pytest.approx(s.reach(tan.touch_normal), abs=1e-9)
            assert (tan.touch - s.center).dot(u) == pytest.approx(s.reach(tan.touch_normal), abs=1e-9)


def test_tangents_from_interior_rejected_without_context():
    with pytest.raises(ValueError):
        tangents_from_point(Point(0.1, 0.0), UNIT_CIRCLE)


def test_in_corridor_examples():
    template = minkowski_sum(CcsShape.disc(1.0), CcsShape.disc(1.0))
    assert in_corridor(Point(5, 1), Point(0, 0), Point(10, 0), template)
    assert not in_corridor(Point(5, 3), Point(0, 0), Point(10, 0), template)
    assert in_corridor(Point(-1.5, 0), Point(0, 0), Point(10, 0), template)


def test_shortest_path_blocked_tangent_arc_tangent():
    path = shortest_path_around(Point(-2, 0), Point(2, 0), UNIT_CIRCLE, "ccw")
    assert path.length == pytest.approx(2 * math.sqrt(3) + math.pi / 3)
    assert path.piece_count() == 3
    oracle = polyline_shortest_path(Point(-2, 0), Point(2, 0), UNIT_CIRCLE)
    assert oracle is not None
    assert oracle[0] <= path.length <= oracle[0] + 2e-4


def test_shortest_path_straight_when_clear():
    path = shortest_path_around(Point(-5, 3), Point(5, 3), UNIT_CIRCLE, "either")
    assert path.length == pytest.approx(10.0)
    assert path.piece_count() == 1


def test_shortest_path_from_boundary_point_pure_arc():
    path = shortest_path_around(Point(1, 0), Point(0, 1), UNIT_CIRCLE, "ccw")
    assert path.length == pytest.approx(math.pi / 2)
    assert path.piece_count() == 1


def test_shortest_path_either_is_min_of_sides():
    rng = random.Random(8)
    for _ in range(25):
        s = minkowski_sum(random_ccs_shape(rng), random_ccs_shape(rng))
        p = Point(rng.uniform(-6, -2.2), rng.uniform(-2, 2))
        q = Point(rng.uniform(2.2, 6), rng.uniform(-2, 2))
        if s.signed_distance(p) < 0.05 or s.signed_distance(q) < 0.05:
            continue
        both = shortest_path_around(p, q, s, "either")
        ccw = shortest_path_around(p, q, s, "ccw")
        cw = shortest_path_around(p, q, s, "cw")
        assert both.length == pytest.approx(min(ccw.length, cw.length), abs=1e-9)
        assert both.length >= p.dist(q) - 1e-9
        for path in (ccw, cw):
            assert path.start_point.dist(p) <= 1e-9
            assert path.end_point.dist(q) <= 1e-9


def test_paths_stay_clear_of_region():
    rng = random.Random(21)
    for _ in range(10):
        s = minkowski_sum(random_ccs_shape(rng), random_ccs_shape(rng))
        p = Point(rng.uniform(-6, -2.2), rng.uniform(-2.5, 2.5))
        q = Point(rng.uniform(2.2, 6), rng.uniform(-2.5, 2.5))
        if s.signed_distance(p) < 0.05 or s.signed_distance(q) < 0.05:
            continue
        for side in ("ccw", "cw"):
            path = shortest_path_around(p, q, s, side)
            pts = np.asarray(path.sample_points(path.length / 1000))
            sd = s.signed_distance_many(pts)
            assert sd.min() >= -1e-9


def test_shortest_path_cross_validated_against_polyline_oracle():
    rng = random.Random(31)
    validated = 0
    for _ in range(40):
        if validated >= 5:
            break
        s = minkowski_sum(random_ccs_shape(rng), random_ccs_shape(rng))
        p = Point(rng.uniform(-6, -2.5), rng.uniform(-1, 1))
        q = Point(rng.uniform(2.5, 6), rng.uniform(-1, 1))
        if s.signed_distance(p) < 0.1 or s.signed_distance(q) < 0.1:
            continue
        oracle = polyline_shortest_path(p, q, s, n=3000)
        if oracle is None:
            continue
        best = shortest_path_around(p, q, s, "either")
        # the inscribed-ring oracle is a lower bound and tight as n grows
        assert oracle[0] - 1e-9 <= best.length <= oracle[0] + 1e-4
        validated += 1
    assert validated >= 5


def test_mirror_symmetry_of_sides():
    # the clockwise path around a region centred at c has the length of the
    # counter-clockwise path around the region centred at the reflection of c
    # through the midpoint of the endpoints
    rng = random.Random(13)
    count = 0
    for _ in range(400):
        if count >= 200:
            break
        shape_a = random_ccs_shape(rng)
        shape_b = random_ccs_shape(rng)
        template = minkowski_sum(shape_a, shape_b)
        q0 = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        q1 = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        c = Point(rng.uniform(-4, 4), rng.uniform(-4, 4))
        s = template.translated(c)
        if s.signed_distance(q0) < 0.05 or s.signed_distance(q1) < 0.05:
            continue
        mid = Point(0.5 * (q0.x + q1.x), 0.5 * (q0.y + q1.y))
        c_ref = reflect_through(c, mid)
        s_ref = template.translated(c_ref)
        if s_ref.signed_distance(q0) < 0.05 or s_ref.signed_distance(q1) < 0.05:
            continue
        count += 1
        cw = shortest_path_around(q0, q1, s, "cw")
        ccw = shortest_path_around(q0, q1, s_ref, "ccw")
        assert cw.length == pytest.approx(ccw.length, abs=1e-9)
    assert count >= 200


def test_path_reversal_and_transform_preserve_length():
    from ccs_duet.geom import RigidTransform

    path = shortest_path_around(Point(-3, 0.5), Point(3, -0.2), UNIT_CIRCLE, "ccw")
    assert path.reversed().length == pytest.approx(path.length)
    t = RigidTransform(1.2, Point(3, 4), flipped=True)
    moved = path.transformed(t)
    assert moved.length == pytest.approx(path.length)
    assert moved.start_point.dist(t.apply(path.start_point)) <= 1e-12
    assert moved.end_point.dist(t.apply(path.end_point)) <= 1e-12


def test_points_at_matches_point_at():
    path = shortest_path_around(Point(-3, 0.5), Point(3, -0.2), UNIT_CIRCLE, "ccw")
    svals = np.linspace(0, path.length, 257)
    vec = path.points_at(svals)
    for s, (x, y) in zip(svals, vec):
        p = path.point_at(float(s))
        assert p.dist(Point(x, y)) <= 1e-12
