"""Control-polygon simplicity, static and along a vertex-rotation sweep.

The sweep certification is a sampled Lipschitz argument: the moving vertex's
speed over the rotation angle is bounded in closed form, segment-to-segment
distance is 1-Lipschitz in an endpoint displacement, so if every sampled
minimum distance exceeds (speed bound) x (angle step) the swept segments can
never touch the static ones between samples.  The two moving edges are also
checked against each other away from their shared vertex, and against their
adjacent static edges for collinear overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curve_kernel import ControlPolygon, PerturbationArc, Point3, arc_position
from .errors import InvalidGeometryError, KnotVerifyError

__all__ = ["SweepReport", "segment_min_distance", "polygon_is_simple", "sweep_simplicity"]

_PARALLEL_EPS = 1e-14
_SHARED_TRIM = 0.01  # fraction trimmed off two moving edges at their shared vertex


def _seg_dist(p1, q1, p2, q2) -> float:
    """Minimum distance between closed segments [p1,q1] and [p2,q2].

    Clamped closest-point computation (plain floats; this sits in the sweep
    hot loop).  Points are 3-tuples.
    """
    d1 = (q1[0] - p1[0], q1[1] - p1[1], q1[2] - p1[2])
    d2 = (q2[0] - p2[0], q2[1] - p2[1], q2[2] - p2[2])
    r = (p1[0] - p2[0], p1[1] - p2[1], p1[2] - p2[2])
    a = d1[0] * d1[0] + d1[1] * d1[1] + d1[2] * d1[2]
    e = d2[0] * d2[0] + d2[1] * d2[1] + d2[2] * d2[2]
    if a == 0.0 or e == 0.0:
        return _point_extent_dist(p1, q1, p2, q2, a, e)
    f = d2[0] * r[0] + d2[1] * r[1] + d2[2] * r[2]
    c = d1[0] * r[0] + d1[1] * r[1] + d1[2] * r[2]
    b = d1[0] * d2[0] + d1[1] * d2[1] + d1[2] * d2[2]
    denom = a * e - b * b
    if denom > _PARALLEL_EPS * a * e:
        s = (b * f - c * e) / denom
        s = 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)
    else:
        s = 0.0  # parallel: fix one endpoint, clamp the other leg
    t = (b * s + f) / e
    if t < 0.0:
        t = 0.0
        s = -c / a
    elif t > 1.0:
        t = 1.0
        s = (b - c) / a
    s = 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)
    dx = (p1[0] + d1[0] * s) - (p2[0] + d2[0] * t)
    dy = (p1[1] + d1[1] * s) - (p2[1] + d2[1] * t)
    dz = (p1[2] + d1[2] * s) - (p2[2] + d2[2] * t)
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def segment_min_distance(a0: Point3, a1: Point3, b0: Point3, b1: Point3) -> float:
    """Exact minimum Euclidean distance between segments a0a1 and b0b1.

    Operands are ordered canonically first, so swapping the two segments
    returns the identical float.
    """
    pa = (a0.x, a0.y, a0.z)
    qa = (a1.x, a1.y, a1.z)
    pb = (b0.x, b0.y, b0.z)
    qb = (b1.x, b1.y, b1.z)
    if pa == qa or pb == qb:
        raise InvalidGeometryError("zero-length segment")
    if (pb, qb) < (pa, qa):
        pa, qa, pb, qb = pb, qb, pa, qa
    return _seg_dist(pa, qa, pb, qb)


def _point_extent_dist(p1, q1, p2, q2, a, e) -> float:
    """Fallback when a segment degenerates to a point."""
    if a == 0.0 and e == 0.0:
        return math.dist(p1, p2)
    if a == 0.0:
        pt, sp, sq, ee = p1, p2, q2, e
    else:
        pt, sp, sq, ee = p2, p1, q1, a
    d = (sq[0] - sp[0], sq[1] - sp[1], sq[2] - sp[2])
    t = ((pt[0] - sp[0]) * d[0] + (pt[1] - sp[1]) * d[1] + (pt[2] - sp[2]) * d[2]) / ee
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.dist(pt, (sp[0] + d[0] * t, sp[1] + d[1] * t, sp[2] + d[2] * t))


def _adjacent_edges_overlap(shared, a, b) -> bool:
    """True if edges shared->a and shared->b run along the same ray
    (collinear overlap beyond the shared vertex)."""
    ux, uy, uz = a[0] - shared[0], a[1] - shared[1], a[2] - shared[2]
    wx, wy, wz = b[0] - shared[0], b[1] - shared[1], b[2] - shared[2]
    nu = math.sqrt(ux * ux + uy * uy + uz * uz)
    nw = math.sqrt(wx * wx + wy * wy + wz * wz)
    if nu == 0.0 or nw == 0.0:
        return True
    cx, cy, cz = uy * wz - uz * wy, uz * wx - ux * wz, ux * wy - uy * wx
    sin_angle = math.sqrt(cx * cx + cy * cy + cz * cz) / (nu * nw)
    dot = (ux * wx + uy * wy + uz * wz) / (nu * nw)
    return sin_angle < 1e-9 and dot > 0.0


def _edge_tuples(polygon: ControlPolygon):
    return [(tuple(a), tuple(b)) for a, b in polygon.edges()]


def polygon_is_simple(polygon: ControlPolygon, clearance: float = 1e-6) -> bool:
    """True iff non-adjacent edges keep more than `clearance` apart and
    adjacent edges meet only at their shared vertex."""
    edges = _edge_tuples(polygon)
    n = len(edges)
    nv = len(polygon)
    if polygon.closed and nv < 3:
        return False
    ends = []
    for i in range(n):
        ends.append((i, (i + 1) % nv if polygon.closed else i + 1))
    for i in range(n):
        for j in range(i + 1, n):
            shared = set(ends[i]) & set(ends[j])
            if len(shared) >= 2:
                return False
            if len(shared) == 1:
                v = polygon.vertices[shared.pop()]
                a_idx = ends[i][0] if ends[i][1] in ends[j] else ends[i][1]
                b_idx = ends[j][0] if ends[j][1] in ends[i] else ends[j][1]
                if _adjacent_edges_overlap(tuple(v), tuple(polygon.vertices[a_idx]), tuple(polygon.vertices[b_idx])):
                    return False
            else:
                if _seg_dist(edges[i][0], edges[i][1], edges[j][0], edges[j][1]) <= clearance:
                    return False
    return True


@dataclass(frozen=True)
class SweepReport:
    """Outcome of a certified rotation sweep."""

    steps: int
    min_distance: float
    certified: bool
    lipschitz_bound: float
    theta_step: float
    alpha: float

    def to_json_dict(self) -> dict:
        return {
            "steps": self.steps,
            "min_distance": self.min_distance,
            "certified": self.certified,
            "lipschitz_bound": self.lipschitz_bound,
            "theta_step": self.theta_step,
            "alpha": self.alpha,
        }


def _speed_bound(arc: PerturbationArc) -> float:
    """Closed-form bound on |dv/dtheta| along the arc trajectory."""
    r = max(arc.radius_start, arc.radius_end)
    if arc.total_angle == 0.0:
        return r
    dr = (arc.radius_end - arc.radius_start) / arc.total_angle
    axis = arc.axis_b.as_array() - arc.axis_a.as_array()
    axis /= math.sqrt(float(axis @ axis))
    dmu = float((arc.target.as_array() - arc.start.as_array()) @ axis) / arc.total_angle
    return math.sqrt(r * r + dr * dr + dmu * dmu)


def sweep_simplicity(polygon: ControlPolygon, arc: PerturbationArc, steps: int = 4096) -> SweepReport:
    """Certify that the polygon stays simple while `arc` rotates its vertex.

    Samples theta at `steps`+1 points; at each, measures the two moving
    edges against every non-adjacent static edge, and against each other
    with a small trim at the shared vertex.  Certification holds when the
    overall sampled minimum exceeds lipschitz_bound x theta step, where
    lipschitz_bound = 2 x (vertex speed bound) covers the pair of moving
    edges as well as the moving-vs-static case.
    """
    if steps < 1:
        raise KnotVerifyError("steps must be positive")
    if not polygon_is_simple(polygon):
        raise KnotVerifyError("polygon is not simple at the start of the sweep")

    n = len(polygon)
    i = arc.vertex_index
    if not polygon.closed and i in (0, n - 1):
        raise InvalidGeometryError("sweep vertex must have two neighbors")
    prev_i = (i - 1) % n
    next_i = (i + 1) % n
    verts = [tuple(v) for v in polygon.vertices]

    static_edges = []
    for a in range(n if polygon.closed else n - 1):
        b = (a + 1) % n
        if i in (a, b):
            continue
        static_edges.append((a, b, verts[a], verts[b]))

    # per moving edge: static edges not sharing its fixed endpoint
    checks = []
    for fixed in (prev_i, next_i):
        nonadj = [(ea, eb) for a, b, ea, eb in static_edges if fixed not in (a, b)]
        adj = [(a, b, ea, eb) for a, b, ea, eb in static_edges if fixed in (a, b)]
        checks.append((fixed, nonadj, adj))

    alpha = arc.total_angle
    theta_step = alpha / steps if alpha > 0.0 else 0.0
    lipschitz = 2.0 * _speed_bound(arc)

    min_distance = math.inf
    overlap_found = False
    sample_count = steps if alpha > 0.0 else 0
    for k in range(sample_count + 1):
        theta = alpha * k / steps if alpha > 0.0 else 0.0
        p = arc_position(arc, theta)
        mv = (p.x, p.y, p.z)
        for fixed, nonadj, adj in checks:
            fx = verts[fixed]
            for ea, eb in nonadj:
                d = _seg_dist(mv, fx, ea, eb)
                if d < min_distance:
                    min_distance = d
            for a, b, ea, eb in adj:
                other = eb if a == fixed else ea
                if _adjacent_edges_overlap(fx, mv, other):
                    overlap_found = True
        # the two moving edges, trimmed away from the shared vertex
        t1 = tuple(mv[c] + _SHARED_TRIM * (verts[prev_i][c] - mv[c]) for c in range(3))
        t2 = tuple(mv[c] + _SHARED_TRIM * (verts[next_i][c] - mv[c]) for c in range(3))
        d = _seg_dist(t1, verts[prev_i], t2, verts[next_i])
        if d < min_distance:
            min_distance = d

    certified = (not overlap_found) and min_distance > lipschitz * theta_step
    return SweepReport(
        steps=steps,
        min_distance=min_distance,
        certified=certified,
        lipschitz_bound=lipschitz,
        theta_step=theta_step,
        alpha=alpha,
    )
