"""Bezier curves over 3D control polygons: stable evaluation, midpoint
(collinear) insertion, axis rotation, and vertex-perturbation arcs.

Evaluation works at degrees in the hundreds.  The default scheme builds all
Bernstein basis values by an incremental binomial-ratio product (every
intermediate stays in [0, 1], so nothing overflows and nothing cancels); the
classic de Casteljau recurrence is kept as the O(n^2) reference and the two
must agree to 1e-9 relative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidGeometryError

__all__ = [
    "Point3",
    "Point2",
    "ControlPolygon",
    "BezierCurve",
    "PerturbationArc",
    "bezier_eval",
    "bezier_eval_2d",
    "bezier_eval_de_casteljau",
    "bernstein_basis",
    "bernstein_basis_many",
    "collinear_insert",
    "rotate_about_axis",
    "make_perturbation_arc",
    "arc_position",
    "hausdorff_distance",
    "polygon_from_json",
    "polygon_to_json",
    "load_polygon",
]


@dataclass(frozen=True)
class Point3:
    """A point in model space."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise InvalidGeometryError(f"non-finite coordinate in {self!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, a) -> "Point3":
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def xy(self) -> "Point2":
        return Point2(self.x, self.y)


@dataclass(frozen=True)
class Point2:
    """A point in the projection plane."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidGeometryError(f"non-finite coordinate in {self!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


def _as_vertex_array(vertices) -> np.ndarray:
    a = np.array(vertices, dtype=float)  # always copy: instances own their storage
    if a.ndim != 2 or a.shape[1] != 3:
        raise InvalidGeometryError(f"expected an (n, 3) vertex array, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise InvalidGeometryError("non-finite vertex coordinate")
    return a


@dataclass(frozen=True, eq=False)
class ControlPolygon:
    """Ordered 3D vertices with an open/closed flag.

    A closed polygon stores each vertex once; the closing edge back to the
    first vertex is implied.  Consecutive vertices (including the implied
    wrap pair) must be distinct.
    """

    vertices: np.ndarray
    closed: bool = True

    def __post_init__(self):
        a = _as_vertex_array(self.vertices)
        if len(a) < 2:
            raise InvalidGeometryError("a polygon needs at least 2 vertices")
        diffs = np.diff(a, axis=0)
        if (np.linalg.norm(diffs, axis=1) == 0.0).any():
            raise InvalidGeometryError("zero-length edge between consecutive vertices")
        if self.closed and np.array_equal(a[0], a[-1]):
            raise InvalidGeometryError(
                "closed polygons store the first vertex once; drop the repeated endpoint"
            )
        a.setflags(write=False)
        object.__setattr__(self, "vertices", a)

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point3:
        return Point3.from_array(self.vertices[i])

    def edge_count(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    def edges(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Edge endpoint pairs, including the wrap edge when closed."""
        v = self.vertices
        out = [(v[i], v[i + 1]) for i in range(len(v) - 1)]
        if self.closed:
            out.append((v[-1], v[0]))
        return out

    def perimeter(self) -> float:
        return float(sum(np.linalg.norm(b - a) for a, b in self.edges()))

    def with_vertex(self, i: int, p: Point3) -> "ControlPolygon":
        v = self.vertices.copy()
        v[i] = (p.x, p.y, p.z)
        return ControlPolygon(v, self.closed)

    def to_curve(self) -> "BezierCurve":
        return BezierCurve.from_polygon(self)


@dataclass(frozen=True, eq=False)
class BezierCurve:
    """Control points of B(t), t in [0, 1].  Degree is one less than the
    number of control points; a curve built from a closed polygon repeats the
    first point at the end, so B(0) = B(1)."""

    control_points: np.ndarray
    _xy: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        a = _as_vertex_array(self.control_points)
        if len(a) < 2:
            raise InvalidGeometryError("a curve needs at least 2 control points")
        a.setflags(write=False)
        object.__setattr__(self, "control_points", a)
        xy = np.ascontiguousarray(a[:, :2])
        xy.setflags(write=False)
        object.__setattr__(self, "_xy", xy)

    @property
    def degree(self) -> int:
        return len(self.control_points) - 1

    @property
    def closed(self) -> bool:
        return bool(np.array_equal(self.control_points[0], self.control_points[-1]))

    @classmethod
    def from_polygon(cls, polygon: ControlPolygon) -> "BezierCurve":
        v = polygon.vertices
        if polygon.closed:
            v = np.vstack([v, v[:1]])
        return cls(v)

    # array-valued evaluation used by the rest of the library
    def point_at(self, t: float) -> np.ndarray:
        return bernstein_basis(self.degree, _check_t(t)) @ self.control_points

    def point_at_2d(self, t: float) -> np.ndarray:
        return bernstein_basis(self.degree, _check_t(t)) @ self._xy

    def sample(self, ts) -> np.ndarray:
        """Evaluate at an array of parameters; rows follow the input order."""
        return bernstein_basis_many(self.degree, np.asarray(ts, dtype=float)) @ self.control_points

    def sample_2d(self, ts) -> np.ndarray:
        return bernstein_basis_many(self.degree, np.asarray(ts, dtype=float)) @ self._xy


def _check_t(t: float) -> float:
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise DomainError(f"curve parameter {t} outside [0, 1]")
    return t


def bernstein_basis(n: int, t: float) -> np.ndarray:
    """All n+1 Bernstein basis values at t.

    Accumulates C(n,m) t^m (1-t)^(n-m) through the ratio recurrence
    b_{m+1} = b_m * ((n-m)/(m+1)) * (t/(1-t)) starting from (1-t)^n, after
    flipping t > 1/2 onto the symmetric half so every intermediate product
    lies in [(1-t)^n, 1].  Raw binomial coefficients are never formed.
    """
    t = _check_t(t)
    if t > 0.5:
        return bernstein_basis(n, 1.0 - t)[::-1]
    s = 1.0 - t
    m = np.arange(1, n + 1, dtype=float)
    factors = np.empty(n + 1)
    factors[0] = s**n
    factors[1:] = (n - m + 1.0) / m * (t / s)
    return np.cumprod(factors)


def bernstein_basis_many(n: int, ts: np.ndarray) -> np.ndarray:
    """Vectorized `bernstein_basis`: one row per parameter."""
    ts = np.asarray(ts, dtype=float)
    if ts.size and (ts.min() < 0.0 or ts.max() > 1.0):
        raise DomainError("curve parameter outside [0, 1]")
    flip = ts > 0.5
    u = np.where(flip, 1.0 - ts, ts)
    s = 1.0 - u
    m = np.arange(1, n + 1, dtype=float)
    factors = np.empty((len(ts), n + 1))
    factors[:, 0] = s**n
    factors[:, 1:] = ((n - m + 1.0) / m)[None, :] * (u / s)[:, None]
    basis = np.cumprod(factors, axis=1)
    basis[flip] = basis[flip, ::-1]
    return basis


def bezier_eval_de_casteljau(curve: BezierCurve, t: float) -> Point3:
    """Reference evaluation by repeated linear interpolation (O(n^2))."""
    t = _check_t(t)
    w = curve.control_points.copy()
    for r in range(len(w) - 1, 0, -1):
        w[:r] = (1.0 - t) * w[:r] + t * w[1 : r + 1]
    return Point3.from_array(w[0])


def bezier_eval(curve: BezierCurve, t: float) -> Point3:
    """B(t) for t in [0, 1]."""
    return Point3.from_array(curve.point_at(t))


def bezier_eval_2d(curve: BezierCurve, t: float) -> Point2:
    """xy components of B(t): the projected curve."""
    p = curve.point_at_2d(t)
    return Point2(float(p[0]), float(p[1]))


def collinear_insert(polygon: ControlPolygon) -> ControlPolygon:
    """Insert the midpoint of every edge between its endpoints.

    The perimeter is preserved (each edge is split into its two halves) and
    the original vertices stay in place at even indices.  A closed n-gon
    becomes a closed 2n-gon, doubling the degree of the defined curve.
    """
    v = polygon.vertices
    if polygon.closed:
        mids = 0.5 * (v + np.roll(v, -1, axis=0))
        out = np.empty((2 * len(v), 3))
        out[0::2] = v
        out[1::2] = mids
    else:
        mids = 0.5 * (v[:-1] + v[1:])
        out = np.empty((2 * len(v) - 1, 3))
        out[0::2] = v
        out[1::2] = mids
    return ControlPolygon(out, polygon.closed)


def rotate_about_axis(p: Point3, axis_a: Point3, axis_b: Point3, angle: float) -> Point3:
    """Rotate p about the directed line axis_a -> axis_b (right-hand rule)."""
    a = axis_a.as_array()
    d = axis_b.as_array() - a
    norm = np.linalg.norm(d)
    if norm == 0.0:
        raise InvalidGeometryError("rotation axis endpoints coincide")
    d = d / norm
    r = p.as_array() - a
    # Rodrigues' formula
    rot = (
        r * math.cos(angle)
        + np.cross(d, r) * math.sin(angle)
        + d * np.dot(d, r) * (1.0 - math.cos(angle))
    )
    return Point3.from_array(a + rot)


@dataclass(frozen=True)
class PerturbationArc:
    """Rotation trajectory of one polygon vertex about the line through its
    two neighbors.

    The axis is stored directed so that the right-hand rotation by
    +total_angle carries the start vertex onto the target.  Because the
    target generally sits only approximately on the start vertex's rotation
    circle (finite-precision input), the radius and the axial coordinate are
    interpolated linearly in the angle, which pins position(total_angle)
    exactly onto the target.
    """

    vertex_index: int
    axis_a: Point3
    axis_b: Point3
    total_angle: float
    radius_start: float
    radius_end: float
    start: Point3
    target: Point3

    def position(self, theta: float) -> Point3:
        return arc_position(self, theta)


def _axis_frame(arc: PerturbationArc):
    a = arc.axis_a.as_array()
    d = arc.axis_b.as_array() - a
    d /= np.linalg.norm(d)
    s = arc.start.as_array()
    mu0 = float(np.dot(s - a, d))
    radial = s - (a + mu0 * d)
    e1 = radial / np.linalg.norm(radial)
    e2 = np.cross(d, e1)
    g = arc.target.as_array()
    mu1 = float(np.dot(g - a, d))
    return a, d, e1, e2, mu0, mu1


def make_perturbation_arc(polygon: ControlPolygon, vertex_index: int, target: Point3) -> PerturbationArc:
    """Build the shorter rotation arc moving `vertex_index` onto `target`.

    The rotation line passes through the two vertices adjacent to
    `vertex_index` (cyclically for closed polygons).  Raises if the target or
    the start vertex lies on that line.
    """
    n = len(polygon)
    if not 0 <= vertex_index < n:
        raise DomainError(f"vertex index {vertex_index} out of range for {n} vertices")
    if polygon.closed:
        prev_i, next_i = (vertex_index - 1) % n, (vertex_index + 1) % n
    else:
        if vertex_index in (0, n - 1):
            raise InvalidGeometryError("an open polygon's end vertex has no rotation axis")
        prev_i, next_i = vertex_index - 1, vertex_index + 1

    start = polygon.vertex(vertex_index)
    a = polygon.vertices[next_i].copy()
    b = polygon.vertices[prev_i].copy()
    d = b - a
    axis_len = np.linalg.norm(d)
    if axis_len == 0.0:
        raise InvalidGeometryError("adjacent vertices coincide; no rotation axis")
    d = d / axis_len

    def radial(p):
        rel = p - a
        return rel - np.dot(rel, d) * d

    r0_vec = radial(start.as_array())
    r1_vec = radial(target.as_array())
    r0 = float(np.linalg.norm(r0_vec))
    r1 = float(np.linalg.norm(r1_vec))
    # 1e-9 model units: below that the rotation frame is numerically undefined
    if r0 <= 1e-9:
        raise InvalidGeometryError("vertex lies on the rotation axis")
    if r1 <= 1e-9:
        raise InvalidGeometryError("target lies on the rotation axis")

    cross = np.cross(r0_vec, r1_vec)
    alpha = math.atan2(float(np.linalg.norm(cross)), float(np.dot(r0_vec, r1_vec)))
    # orient the axis so the right-hand rotation by +alpha reaches the target
    if float(np.dot(cross, d)) < 0.0:
        a, b, d = b, a, -d
    arc = PerturbationArc(
        vertex_index=vertex_index,
        axis_a=Point3.from_array(a),
        axis_b=Point3.from_array(a + d * axis_len),
        total_angle=alpha,
        radius_start=r0,
        radius_end=r1,
        start=start,
        target=target,
    )
    landed = arc_position(arc, alpha).as_array()
    gap = float(np.linalg.norm(landed - target.as_array()))
    if gap > 1e-6:
        raise InvalidGeometryError(f"arc endpoint misses the target by {gap:.3e}")
    return arc


def arc_position(arc: PerturbationArc, theta: float) -> Point3:
    """Vertex position after rotating by theta in [0, total_angle]."""
    if not (0.0 <= theta <= arc.total_angle + 1e-12):
        raise DomainError(f"theta {theta} outside [0, {arc.total_angle}]")
    theta = min(theta, arc.total_angle)
    a, d, e1, e2, mu0, mu1 = _axis_frame(arc)
    u = theta / arc.total_angle if arc.total_angle > 0.0 else 0.0
    mu = mu0 + (mu1 - mu0) * u
    r = arc.radius_start + (arc.radius_end - arc.radius_start) * u
    p = a + mu * d + r * (math.cos(theta) * e1 + math.sin(theta) * e2)
    return Point3.from_array(p)


def _point_segment_distances(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ab = b - a
    denom = float(np.dot(ab, ab))
    tt = np.clip((points - a) @ ab / denom, 0.0, 1.0)
    return np.linalg.norm(points - (a + tt[:, None] * ab), axis=1)


def hausdorff_distance(curve: BezierCurve, polygon: ControlPolygon, samples: int = 512) -> float:
    """Symmetric sampled Hausdorff distance between curve and polygon.

    Curve side: `samples`+1 uniform parameter samples measured exactly
    against the polygon's segments.  Polygon side: points sampled along each
    edge measured exactly against the sampled curve polyline.
    """
    if samples < 16:
        raise DomainError("need at least 16 samples")
    ts = np.arange(samples + 1) / samples
    curve_pts = curve.sample(ts)
    edges = polygon.edges()

    d_curve = np.full(len(curve_pts), np.inf)
    for a, b in edges:
        d_curve = np.minimum(d_curve, _point_segment_distances(curve_pts, a, b))

    per_edge = max(2, samples // len(edges))
    u = np.linspace(0.0, 1.0, per_edge, endpoint=False)[:, None]
    poly_pts = np.vstack([a + u * (b - a) for a, b in edges])
    d_poly = np.full(len(poly_pts), np.inf)
    for i in range(len(curve_pts) - 1):
        d_poly = np.minimum(d_poly, _point_segment_distances(poly_pts, curve_pts[i], curve_pts[i + 1]))

    return float(max(d_curve.max(), d_poly.max()))


# --- JSON wire format -------------------------------------------------------
#
# {"closed": true, "control_points": [[x, y, z], ...]}


def polygon_from_json(obj: dict) -> ControlPolygon:
    try:
        pts = obj["control_points"]
        closed = bool(obj.get("closed", True))
    except (TypeError, KeyError) as exc:
        raise InvalidGeometryError(f"malformed polygon JSON: {exc}") from exc
    try:
        return ControlPolygon(_as_vertex_array(pts), closed)
    except (ValueError, TypeError) as exc:
        raise InvalidGeometryError(f"malformed polygon JSON: {exc}") from exc


def polygon_to_json(polygon: ControlPolygon) -> dict:
    return {
        "closed": polygon.closed,
        "control_points": [[float(c) for c in v] for v in polygon.vertices],
    }


def load_polygon(path) -> ControlPolygon:
    with open(path, "r", encoding="utf-8") as fh:
        return polygon_from_json(json.load(fh))
