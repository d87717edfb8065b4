"""Time-parameterized co-motions: evaluation, collision sampling, orientation
profiles, and the reparameterizations that make the orientation change
monotonically or keep the robots' contact interval connected.

A co-motion couples two point paths through a schedule.  Schedule intervals
are linear in arc length except for explicit contact slides, which keep the
difference of the two positions exactly on the sum boundary while its
outward normal sweeps at constant rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geom import Point, ccw_delta, default_tolerance, normalize_angle, unit_vector
from .pathfind import PointPath
from .shape import ArcFeature, SegmentFeature, SumBoundary, extract_portion
from .geom import AngularInterval

__all__ = [
    "CoMotion",
    "OrientationProfile",
    "MotionError",
    "decoupled_comotion",
    "evaluate",
    "min_separation",
    "orientation_profile",
    "make_orientation_monotone",
    "make_contact_preserving",
    "net_direction",
]

CONTACT_EPS = 1e-7  # grazing threshold for contact-interval bookkeeping


class MotionError(RuntimeError):
    pass


@dataclass(frozen=True)
class SlideCoupling:
    """Exact-contact coupling over one schedule interval.

    While the interval's local time runs 0 -> 1, the contact normal sweeps
    linearly from theta0 to theta1 and both robots move along fixed lines so
    that pos_a - pos_b stays on the sum boundary at that normal.
    """

    theta0: float
    theta1: float  # unwrapped relative to theta0 (theta1 - theta0 is the sweep)
    anchor_a: Point
    dir_a: Point  # unit direction, may be zero for a parked robot
    anchor_b: Point
    dir_b: Point
    arc_q: Point  # contact feature: boundary point is arc_q + r * u(theta)
    arc_r: float

    def solve(self, theta: float) -> tuple[float, float]:
        """Displacements (s, w) along the two lines putting the difference on
        the contact feature at the given normal."""
        e = self.arc_q + unit_vector(theta).scaled(self.arc_r)
        rhs = e - (self.anchor_a - self.anchor_b)
        det = self.dir_a.cross(-self.dir_b)
        if abs(det) < 1e-12:
            raise MotionError("contact slide is degenerate (parallel travel lines)")
        s = rhs.cross(-self.dir_b) / det
        w = self.dir_a.cross(rhs) / det
        return s, w

    def positions(self, frac: float) -> tuple[Point, Point]:
        theta = self.theta0 + (self.theta1 - self.theta0) * frac
        s, w = self.solve(theta)
        return self.anchor_a + self.dir_a.scaled(s), self.anchor_b + self.dir_b.scaled(w)


@dataclass(frozen=True)
class CoMotion:
    """A synchronized pair of motions over t in [0, 1].

    knots hold (t, arc position on path_a, arc position on path_b); between
    consecutive knots the schedule is linear in arc length unless a
    SlideCoupling is attached for that interval.
    """

    path_a: PointPath
    path_b: PointPath
    knots: tuple[tuple[float, float, float], ...]
    phase_marks: tuple[float, ...] = ()
    slides: dict[int, SlideCoupling] = field(default_factory=dict)

    def __post_init__(self):
        ts = [k[0] for k in self.knots]
        if ts[0] != 0.0 or ts[-1] != 1.0 or any(b < a for a, b in zip(ts, ts[1:])):
            raise MotionError("schedule knots must run from t=0 to t=1, non-decreasing")
        for _, sa, sb in self.knots:
            if sa < -1e-9 or sb < -1e-9:
                raise MotionError("arc positions must be non-negative")

    @property
    def length(self) -> float:
        return self.path_a.length + self.path_b.length

    def _interval_index(self, t: float) -> int:
        ts = [k[0] for k in self.knots]
        import bisect

        i = bisect.bisect_right(ts, t) - 1
        return min(max(i, 0), len(self.knots) - 2)

    def evaluate(self, t: float) -> tuple[Point, Point]:
        if not (0.0 <= t <= 1.0):
            raise ValueError(f"t must lie in [0, 1], got {t}")
        i = self._interval_index(t)
        t0, sa0, sb0 = self.knots[i]
        t1, sa1, sb1 = self.knots[i + 1]
        frac = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
        slide = self.slides.get(i)
        if slide is not None:
            return slide.positions(frac)
        return (
            self.path_a.point_at(sa0 + (sa1 - sa0) * frac),
            self.path_b.point_at(sb0 + (sb1 - sb0) * frac),
        )

    def evaluate_many(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ts = np.asarray(ts, dtype=float)
        knot_t = np.array([k[0] for k in self.knots])
        idx = np.clip(np.searchsorted(knot_t, ts, side="right") - 1, 0, len(self.knots) - 2)
        pos_a = np.empty((len(ts), 2))
        pos_b = np.empty((len(ts), 2))
        sa = np.empty(len(ts))
        sb = np.empty(len(ts))
        linear_mask = np.ones(len(ts), dtype=bool)
        for i in range(len(self.knots) - 1):
            mask = idx == i
            if not np.any(mask):
                continue
            t0, sa0, sb0 = self.knots[i]
            t1, sa1, sb1 = self.knots[i + 1]
            frac = np.zeros(mask.sum()) if t1 == t0 else (ts[mask] - t0) / (t1 - t0)
            frac = np.clip(frac, 0.0, 1.0)
            slide = self.slides.get(i)
            if slide is None:
                sa[mask] = sa0 + (sa1 - sa0) * frac
                sb[mask] = sb0 + (sb1 - sb0) * frac
            else:
                linear_mask[mask] = False
                theta = slide.theta0 + (slide.theta1 - slide.theta0) * frac
                ex = slide.arc_q.x + slide.arc_r * np.cos(theta)
                ey = slide.arc_q.y + slide.arc_r * np.sin(theta)
                rx = ex - (slide.anchor_a.x - slide.anchor_b.x)
                ry = ey - (slide.anchor_a.y - slide.anchor_b.y)
                det = slide.dir_a.cross(-slide.dir_b)
                s = (rx * slide.dir_b.y - ry * slide.dir_b.x) * (-1.0) / det
                w = (slide.dir_a.x * ry - slide.dir_a.y * rx) / det
                pos_a[mask, 0] = slide.anchor_a.x + slide.dir_a.x * s
                pos_a[mask, 1] = slide.anchor_a.y + slide.dir_a.y * s
                pos_b[mask, 0] = slide.anchor_b.x + slide.dir_b.x * w
                pos_b[mask, 1] = slide.anchor_b.y + slide.dir_b.y * w
        if np.any(linear_mask):
            pos_a[linear_mask] = self.path_a.points_at(sa[linear_mask])
            pos_b[linear_mask] = self.path_b.points_at(sb[linear_mask])
        return pos_a, pos_b

    def with_schedule(self, knots, slides=None) -> "CoMotion":
        return CoMotion(
            self.path_a,
            self.path_b,
            tuple(knots),
            self.phase_marks,
            dict(slides or {}),
        )


@dataclass(frozen=True)
class OrientationProfile:
    """Sampled configuration orientations along a co-motion."""

    times: np.ndarray
    angles: np.ndarray  # unwrapped
    cone_mask: np.ndarray  # samples at vertex contact (whole-cone orientation)


def decoupled_comotion(phases: list[tuple[str, PointPath]], start_a: Point, start_b: Point) -> CoMotion:
    """One-robot-at-a-time co-motion with a unit-speed schedule."""
    pieces_a: list[PointPath] = []
    pieces_b: list[PointPath] = []
    path_a = PointPath(start_a)
    path_b = PointPath(start_b)
    for who, path in phases:
        if who == "a":
            path_a = path_a.concat(path)
        else:
            path_b = path_b.concat(path)
    total = sum(p.length for _, p in phases)
    knots = [(0.0, 0.0, 0.0)]
    marks = []
    sa = sb = 0.0
    acc = 0.0
    for who, path in phases:
        acc += path.length
        if who == "a":
            sa += path.length
        else:
            sb += path.length
        t = acc / total if total > 0 else 1.0
        knots.append((t, sa, sb))
        marks.append(t)
    if knots[-1][0] != 1.0:
        knots.append((1.0, sa, sb))
    # collapse duplicate times from zero-length phases
    dedup = [knots[0]]
    for k in knots[1:]:
        if k[0] > dedup[-1][0]:
            dedup.append(k)
        else:
            dedup[-1] = k
    if len(dedup) == 1:
        dedup.append((1.0, sa, sb))
    return CoMotion(path_a, path_b, tuple(dedup), tuple(m for m in marks if 0.0 < m < 1.0))


def evaluate(motion: CoMotion, t: float) -> tuple[Point, Point]:
    return motion.evaluate(t)


def min_separation(motion: CoMotion, template: SumBoundary, n_samples: int = 10000) -> float:
    """Minimum sampled separation along the motion; the template is the sum
    boundary placed at the origin."""
    if n_samples < 2:
        raise ValueError("need at least two samples")
    ts = np.linspace(0.0, 1.0, n_samples)
    pos_a, pos_b = motion.evaluate_many(ts)
    rel = pos_a - pos_b
    rel[:, 0] += template.center.x
    rel[:, 1] += template.center.y
    return float(template.signed_distance_many(rel).min())


def _orientation_angles(template: SumBoundary, rel: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized argmax direction of the separation for difference points,
    plus a mask of samples sitting on a vertex (whole-cone orientation)."""
    eps = default_tolerance().eps_length
    px = rel[:, 0]
    py = rel[:, 1]
    best = np.full(len(rel), -np.inf)
    theta = np.zeros(len(rel))
    cone = np.zeros(len(rel), dtype=bool)
    for i, f in enumerate(template.features):
        if isinstance(f, ArcFeature):
            dx = px - f.center.x
            dy = py - f.center.y
            dn = np.hypot(dx, dy)
            ang = np.arctan2(dy, dx)
            offs = np.mod(ang - f.angle_from, 2 * math.pi)
            inside = (offs <= f.span) | f.full
            ua, ub = unit_vector(f.angle_from), unit_vector(f.angle_to)
            va = dx * ua.x + dy * ua.y
            vb = dx * ub.x + dy * ub.y
            end_val = np.maximum(va, vb)
            end_ang = np.where(va >= vb, f.angle_from, f.angle_to)
            val = np.where(inside, dn, end_val) - f.radius
            cand_ang = np.where(inside, ang, end_ang)
            at_vertex = dn <= eps
            take = val > best
            theta = np.where(take, cand_ang, theta)
            best = np.maximum(best, val)
            cone |= at_vertex & (np.abs(dn - f.radius - best) <= eps)
        else:
            u = unit_vector(f.normal)
            val = (px - f.p0.x) * u.x + (py - f.p0.y) * u.y
            take = val > best
            theta = np.where(take, f.normal, theta)
            best = np.maximum(best, val)
    return np.mod(theta, 2 * math.pi), cone


def orientation_profile(motion: CoMotion, template: SumBoundary, n_samples: int = 2048) -> OrientationProfile:
    ts = np.linspace(0.0, 1.0, n_samples)
    pos_a, pos_b = motion.evaluate_many(ts)
    rel = pos_a - pos_b
    rel[:, 0] += template.center.x
    rel[:, 1] += template.center.y
    ang, cone = _orientation_angles(template, rel)
    return OrientationProfile(ts, np.unwrap(ang), cone)


def net_direction(motion: CoMotion, template: SumBoundary) -> str:
    """Net turning direction of the configuration orientation, "ccw"/"cw".

    The orientation path from the initial to the goal orientation either
    covers their counter-clockwise range or its complement; ties (no net
    turn) default to counter-clockwise.
    """
    prof = orientation_profile(motion, template, 1024)
    net = prof.angles[-1] - prof.angles[0]
    forward = ccw_delta(prof.angles[0] % (2 * math.pi), prof.angles[-1] % (2 * math.pi))
    return "ccw" if net > forward - math.pi - 1e-9 else "cw"


def is_orientation_monotone(
    motion: CoMotion,
    template: SumBoundary,
    direction: str,
    n_samples: int = 10000,
    eps: float | None = None,
) -> bool:
    if eps is None:
        eps = max(default_tolerance().eps_angle, 1e-7)
    prof = orientation_profile(motion, template, n_samples)
    vals = prof.angles if direction == "ccw" else -prof.angles
    vals = vals[~prof.cone_mask]
    return bool(np.all(np.diff(vals) >= -eps))


# ---------------------------------------------------------------------------
# orientation monotonization


def _orientation_at(motion: CoMotion, template: SumBoundary, t: float) -> float:
    pos_a, pos_b = motion.evaluate(t)
    rel = np.array([[pos_a.x - pos_b.x + template.center.x, pos_a.y - pos_b.y + template.center.y]])
    ang, _ = _orientation_angles(template, rel)
    return float(ang[0])


def _sub_trace_is_straight(path: PointPath, s0: float, s1: float, tol: float = 1e-7) -> bool:
    if s1 - s0 <= tol:
        return True
    a = path.point_at(s0)
    b = path.point_at(s1)
    chord = a.dist(b)
    return abs((s1 - s0) - chord) <= tol * max(1.0, chord)


def _arc_positions_at(motion: CoMotion, t: float) -> tuple[float, float]:
    i = motion._interval_index(t)
    t0, sa0, sb0 = motion.knots[i]
    t1, sa1, sb1 = motion.knots[i + 1]
    frac = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
    if i in motion.slides:
        raise MotionError("cannot reparameterize across a contact slide")
    return sa0 + (sa1 - sa0) * frac, sb0 + (sb1 - sb0) * frac


def _slides_by_time(motion: CoMotion) -> dict[float, SlideCoupling]:
    return {motion.knots[i][0]: sl for i, sl in motion.slides.items()}


def _rebuild(motion: CoMotion, knots: list[tuple[float, float, float]], slides_by_time: dict) -> CoMotion:
    knots = sorted(knots, key=lambda k: k[0])
    dedup: list[tuple[float, float, float]] = []
    for k in knots:
        if dedup and abs(k[0] - dedup[-1][0]) <= 1e-15:
            continue
        dedup.append(k)
    slides = {}
    for i, (t, _, _) in enumerate(dedup[:-1]):
        if t in slides_by_time:
            slides[i] = slides_by_time[t]
    return motion.with_schedule(dedup, slides)


def _replace_interval_with_linear(motion: CoMotion, t_lo: float, t_hi: float) -> CoMotion:
    """Drop schedule knots strictly inside (t_lo, t_hi); both robots then move
    at constant speed along their (straight) sub-traces on that interval."""
    sa_lo, sb_lo = _arc_positions_at(motion, t_lo)
    sa_hi, sb_hi = _arc_positions_at(motion, t_hi)
    if not _sub_trace_is_straight(motion.path_a, sa_lo, sa_hi):
        raise MotionError("cannot couple a non-straight sub-trace (robot a)")
    if not _sub_trace_is_straight(motion.path_b, sb_lo, sb_hi):
        raise MotionError("cannot couple a non-straight sub-trace (robot b)")
    old_slides = _slides_by_time(motion)
    for t in old_slides:
        if t_lo - 1e-12 < t < t_hi + 1e-12:
            raise MotionError("cannot recouple across an existing contact slide")
    knots = [k for k in motion.knots if k[0] < t_lo - 1e-12 or k[0] > t_hi + 1e-12]
    knots.append((t_lo, sa_lo, sb_lo))
    knots.append((t_hi, sa_hi, sb_hi))
    return _rebuild(motion, knots, old_slides)


def make_orientation_monotone(motion: CoMotion, template: SumBoundary) -> CoMotion:
    """Recouple an optimal decoupled co-motion so the configuration
    orientation changes monotonically; traces and length are unchanged.

    Stretches that revisit an orientation are necessarily straight for both
    robots in an optimal motion, so the repair only retimes them into
    simultaneous straight-line coupled sub-motions of constant orientation.
    """
    n = 4096
    prof = orientation_profile(motion, template, n)
    direction = net_direction(motion, template)
    sign = 1.0 if direction == "ccw" else -1.0
    g = sign * prof.angles
    ts = prof.times
    eps = max(default_tolerance().eps_angle, 1e-9)

    def g_at(t: float, near: float) -> float:
        raw = sign * _orientation_at(motion, template, t)
        # unwrap against a nearby profile value
        k = round((near - raw) / (2 * math.pi))
        return raw + 2 * math.pi * k

    repairs: list[tuple[float, float]] = []
    run_max = g[0]
    i = 1
    while i < len(ts):
        if g[i] >= run_max - eps:
            run_max = max(run_max, g[i])
            i += 1
            continue
        # a dip below the running maximum: find where it started and where
        # the profile recovers
        peak_idx = i - 1
        while peak_idx > 0 and g[peak_idx - 1] >= run_max - eps:
            peak_idx -= 1
        j = i
        while j < len(ts) and g[j] < run_max - eps:
            j += 1
        if j >= len(ts):
            # never recovers: couple from the last earlier time at the final
            # orientation through to the end
            target = g[-1]
            k = peak_idx
            while k > 0 and g[k - 1] >= target - eps:
                k -= 1
            t_lo = _bisect_orientation(motion, template, ts, g, k, target, sign)
            repairs.append((t_lo, 1.0))
            break
        t_lo = ts[peak_idx]
        t_hi = _bisect_orientation(motion, template, ts, g, j, run_max, sign)
        repairs.append((t_lo, t_hi))
        i = j + 1
    out = motion
    for t_lo, t_hi in repairs:
        out = _replace_interval_with_linear(out, t_lo, t_hi)
    return out


def _bisect_orientation(motion, template, ts, g, j, target, sign) -> float:
    """Time in [ts[j-1], ts[j]] where the adjusted orientation crosses target."""
    lo = ts[j - 1] if j > 0 else ts[0]
    hi = ts[j]
    g_lo = g[j - 1] if j > 0 else g[0]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        raw = sign * _orientation_at(motion, template, mid)
        k = round((g_lo - raw) / (2 * math.pi))
        val = raw + 2 * math.pi * k
        if val < target:
            lo = mid
            g_lo = val
        else:
            hi = mid
    return hi


# ---------------------------------------------------------------------------
# contact preservation


def _contact_components(motion: CoMotion, template: SumBoundary, n: int = 4096):
    ts = np.linspace(0.0, 1.0, n)
    pos_a, pos_b = motion.evaluate_many(ts)
    rel = pos_a - pos_b
    rel[:, 0] += template.center.x
    rel[:, 1] += template.center.y
    sep = template.signed_distance_many(rel)
    mask = sep <= CONTACT_EPS
    comps = []
    start = None
    for i, m in enumerate(mask):
        if m and start is None:
            start = i
        elif not m and start is not None:
            comps.append((start, i - 1))
            start = None
    if start is not None:
        comps.append((start, len(mask) - 1))
    return ts, sep, comps


def _separation_at(motion: CoMotion, template: SumBoundary, t: float) -> float:
    pos_a, pos_b = motion.evaluate(t)
    return template.signed_distance(pos_a - pos_b + template.center)


def _refine_contact_edge(motion, template, t_in, t_out) -> float:
    """Time where the separation leaves contact, bisected between a contact
    sample and a clear sample."""
    lo, hi = t_in, t_out
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _separation_at(motion, template, mid) <= 1e-12:
            lo = mid
        else:
            hi = mid
    return lo


def _refine_contact_entry(motion, template, t_clear, t_contact) -> float:
    lo, hi = t_clear, t_contact
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _separation_at(motion, template, mid) <= 1e-12:
            hi = mid
        else:
            lo = mid
    return hi


def make_contact_preserving(motion: CoMotion, template: SumBoundary) -> CoMotion:
    """Recouple an optimal standard-form co-motion so the robots' contact
    times form a single interval, by replacing each contact gap with an
    exact-contact sliding coupling along the robots' straight sub-traces."""
    ts, sep, comps = _contact_components(motion, template, 4096)
    if len(comps) <= 1:
        return motion
    out = motion
    for (s0, e0), (s1, e1) in reversed(list(zip(comps, comps[1:]))):
        t_a = _refine_contact_edge(out, template, ts[e0], ts[min(e0 + 1, len(ts) - 1)])
        t_b = _refine_contact_entry(out, template, ts[max(s1 - 1, 0)], ts[s1])
        out = _couple_contact_gap(out, template, t_a, t_b)
    return out


def _couple_contact_gap(motion: CoMotion, template: SumBoundary, t_a: float, t_b: float) -> CoMotion:
    eps = default_tolerance().eps_length
    pa0, pb0 = motion.evaluate(t_a)
    pa1, pb1 = motion.evaluate(t_b)
    sa0, sb0 = _arc_positions_at(motion, t_a)
    sa1, sb1 = _arc_positions_at(motion, t_b)
    if not _sub_trace_is_straight(motion.path_a, sa0, sa1) or not _sub_trace_is_straight(
        motion.path_b, sb0, sb1
    ):
        raise MotionError("contact gap does not span straight sub-traces")
    len_a = sa1 - sa0
    len_b = sb1 - sb0
    dir_a = (pa1 - pa0).unit() if len_a > eps else Point(0.0, 0.0)
    dir_b = (pb1 - pb0).unit() if len_b > eps else Point(0.0, 0.0)
    rel0 = pa0 - pb0 + template.center
    rel1 = pa1 - pb1 + template.center
    nu_a = template.orientation_interval(rel0)
    nu_b = template.orientation_interval(rel1)
    # sweep direction follows the motion's own orientation change on the gap
    gap_samples = np.linspace(t_a, t_b, 9)
    gap_angs = np.unwrap([_orientation_at(motion, template, float(t)) for t in gap_samples])
    ccw_gap = gap_angs[-1] >= gap_angs[0]
    if ccw_gap:
        portion = extract_portion(template, AngularInterval(nu_a.end, nu_b.start))
    else:
        portion = list(reversed(extract_portion(template, AngularInterval(nu_b.end, nu_a.start))))

    def solve(e_pt: Point) -> tuple[float, float]:
        rhs = (e_pt - template.center) - (pa0 - pb0)
        det = dir_a.cross(-dir_b)
        if abs(det) < 1e-12:
            raise MotionError("contact slide is degenerate (parallel travel lines)")
        s = rhs.cross(-dir_b) / det
        w = dir_a.cross(rhs) / det
        return s, w

    # sub-interval targets: slides across arcs, straight coupling across
    # edges, nothing across vertex cones (the difference point stays put)
    events: list[tuple[float, float, SlideCoupling | None]] = []
    for f in portion:
        if isinstance(f, SegmentFeature):
            s, w = solve(f.p1 if ccw_gap else f.p0)
            events.append((s, w, None))
        elif f.radius <= eps:
            continue
        else:
            sweep = ccw_delta(f.angle_from, f.angle_to)
            if ccw_gap:
                th0, th1 = f.angle_from, f.angle_from + sweep
                end_angle = f.angle_to
            else:
                th0, th1 = f.angle_to, f.angle_to - sweep
                end_angle = f.angle_from
            s, w = solve(f.point_at(end_angle))
            events.append(
                (s, w, SlideCoupling(th0, th1, pa0, dir_a, pb0, dir_b, f.center - template.center, f.radius))
            )

    s_last = w_last = 0.0
    for s, w, _ in events:
        if s < s_last - 1e-7 or w < w_last - 1e-7:
            raise MotionError("contact slide would move a robot backwards")
        s_last, w_last = max(s, s_last), max(w, w_last)
    if abs(s_last - len_a) > 1e-6 or abs(w_last - len_b) > 1e-6:
        raise MotionError("contact slide does not reach the gap's end configuration")

    total = max(len_a + len_b, 1e-12)
    slides_by_time = _slides_by_time(motion)
    for t in list(slides_by_time):
        if t_a - 1e-12 < t < t_b + 1e-12:
            raise MotionError("contact gaps overlap an existing slide")
    knots = [k for k in motion.knots if k[0] < t_a - 1e-12 or k[0] > t_b + 1e-12]
    knots.append((t_a, sa0, sb0))
    prev = (t_a, 0.0, 0.0)
    for s, w, slide in events:
        t = t_a + (t_b - t_a) * (s + w) / total
        t = min(t, t_b)
        if slide is not None:
            slides_by_time[prev[0]] = slide
        knots.append((t, sa0 + s, sb0 + w))
        prev = (t, s, w)
    knots.append((t_b, sa1, sb1))
    return _rebuild(motion, knots, slides_by_time)
