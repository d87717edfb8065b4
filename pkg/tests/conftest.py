import math
import random

from ccs_duet.geom import Point, convex_hull
from ccs_duet.shape import CcsShape


def random_ccs_polygon(rng: random.Random, scale: float = 1.0) -> CcsShape:
    """A random convex centrally-symmetric polygon built as the hull of a
    symmetric point cloud."""
    while True:
        k = rng.randint(2, 5)
        pts = []
        for _ in range(k):
            r = rng.uniform(0.4, 1.0) * scale
            a = rng.uniform(0, 2 * math.pi)
            pts.append(Point(r * math.cos(a), r * math.sin(a)))
        cloud = pts + [Point(-p.x, -p.y) for p in pts]
        hull = convex_hull(cloud)
        if len(hull) < 4 or len(hull) % 2 != 0:
            continue
        try:
            return CcsShape.polygon(hull)
        except ValueError:
            continue


def random_ccs_shape(rng: random.Random, scale: float = 1.0) -> CcsShape:
    if rng.random() < 0.5:
        return CcsShape.disc(rng.uniform(0.3, 1.0) * scale)
    return random_ccs_polygon(rng, scale)


def dist_point_to_polygon(p: Point, vertices) -> float:
    """Unsigned distance from a point to a convex polygon (0 inside)."""
    n = len(vertices)
    inside = True
    best = math.inf
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        d = b - a
        if d.cross(p - a) < 0:
            inside = False
        t = max(0.0, min(1.0, (p - a).dot(d) / d.dot(d)))
        best = min(best, p.dist(a + d.scaled(t)))
    return 0.0 if inside else best
