import math
import random

import pytest
from hypothesis import given, strategies as st

from ccs_duet.geom import (
    TWO_PI,
    AngularInterval,
    Point,
    RigidTransform,
    apply_transform,
    convex_hull,
    interval_contains,
    line_intersection,
    normalize_angle,
)


def test_normalize_angle_examples():
    assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)
    assert normalize_angle(-math.pi / 2) == pytest.approx(3 * math.pi / 2)
    assert normalize_angle(0.0) == 0.0


def test_normalize_angle_rejects_non_finite():
    with pytest.raises(ValueError):
        normalize_angle(float("nan"))
    with pytest.raises(ValueError):
        normalize_angle(float("inf"))


@given(st.floats(min_value=-100.0, max_value=100.0))
def test_normalize_angle_idempotent(raw):
    once = normalize_angle(raw)
    assert 0.0 <= once < TWO_PI
    assert normalize_angle(once) == once


def test_interval_contains_examples():
    assert interval_contains(AngularInterval(0.0, math.pi), math.pi / 2)
    assert interval_contains(AngularInterval(3 * math.pi / 2, math.pi / 2), 0.0)
    assert not interval_contains(AngularInterval(0.0, math.pi), 3 * math.pi / 2)


def test_interval_endpoints_always_contained():
    rng = random.Random(7)
    for _ in range(200):
        i = AngularInterval(rng.uniform(0, TWO_PI), rng.uniform(0, TWO_PI))
        assert i.contains(i.start)
        assert i.contains(i.end)


def test_interval_complement_and_full():
    i = AngularInterval(1.0, 2.5)
    c = i.complement()
    assert c.start == 2.5 and c.end == 1.0
    zero = AngularInterval(1.0, 1.0)
    assert zero.width == 0.0
    assert zero.complement().full
    assert AngularInterval.full_circle().contains(5.0)


def test_apply_transform_examples():
    ident = RigidTransform.identity()
    assert apply_transform(ident, Point(3, 4)) == Point(3, 4)
    rot = RigidTransform(rotation=math.pi / 2)
    p = apply_transform(rot, Point(1, 0))
    assert p.x == pytest.approx(0.0, abs=1e-12)
    assert p.y == pytest.approx(1.0)
    flip = RigidTransform(flipped=True)
    assert apply_transform(flip, Point(1, 2)) == Point(1, -2)


def test_transform_roundtrip_random_points():
    rng = random.Random(42)
    for _ in range(20):
        t = RigidTransform(
            rotation=rng.uniform(0, TWO_PI),
            translation=Point(rng.uniform(-10, 10), rng.uniform(-10, 10)),
            flipped=rng.random() < 0.5,
        )
        inv = t.inverse()
        for _ in range(50):
            p = Point(rng.uniform(-10, 10), rng.uniform(-10, 10))
            q = inv.apply(t.apply(p))
            assert q.dist(p) <= 1e-9


def test_transform_composition_matches_sequential_application():
    rng = random.Random(3)
    for _ in range(50):
        t1 = RigidTransform(rng.uniform(0, TWO_PI), Point(rng.uniform(-5, 5), rng.uniform(-5, 5)), rng.random() < 0.5)
        t2 = RigidTransform(rng.uniform(0, TWO_PI), Point(rng.uniform(-5, 5), rng.uniform(-5, 5)), rng.random() < 0.5)
        both = t2.compose(t1)
        p = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        assert both.apply(p).dist(t2.apply(t1.apply(p))) <= 1e-9


def test_transform_preserves_distances():
    rng = random.Random(11)
    t = RigidTransform(0.7, Point(2, -1), flipped=True)
    for _ in range(100):
        p = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        q = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        assert t.apply(p).dist(t.apply(q)) == pytest.approx(p.dist(q), abs=1e-9)


def test_convex_hull_examples():
    hull = convex_hull([Point(0, 0), Point(1, 0), Point(0, 1), Point(0.2, 0.2)])
    assert hull == [Point(0, 0), Point(1, 0), Point(0, 1)]
    assert convex_hull([Point(0, 0)]) == [Point(0, 0)]


def _point_in_hull(p, hull, tol=1e-9):
    n = len(hull)
    if n == 1:
        return p.dist(hull[0]) <= tol
    if n == 2:
        a, b = hull
        d = b - a
        t = max(0.0, min(1.0, (p - a).dot(d) / d.dot(d)))
        return p.dist(a + d.scaled(t)) <= tol
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if (b - a).cross(p - a) < -tol:
            return False
    return True


def test_convex_hull_contains_all_inputs_brute_force():
    rng = random.Random(2024)
    pts = []
    while len(pts) < 100:
        x, y = rng.uniform(-1, 1), rng.uniform(-1, 1)
        if x * x + y * y <= 1.0:
            pts.append(Point(x, y))
    hull = convex_hull(pts)
    for p in pts:
        assert _point_in_hull(p, hull)
    # every hull vertex is an input point
    assert set(hull) <= set(pts)


def test_convex_hull_commutes_with_transform():
    rng = random.Random(5)
    pts = [Point(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(40)]
    t = RigidTransform(1.1, Point(0.5, -2.0), flipped=False)
    direct = {(round(p.x, 9), round(p.y, 9)) for p in convex_hull([t.apply(p) for p in pts])}
    mapped = {(round(q.x, 9), round(q.y, 9)) for q in (t.apply(p) for p in convex_hull(pts))}
    assert direct == mapped


def test_line_intersection():
    p = line_intersection(Point(0, 0), Point(1, 0), Point(2, -1), Point(0, 1))
    assert p is not None and p.dist(Point(2, 0)) <= 1e-12
    assert line_intersection(Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 0)) is None
