"""Self-intersections of a projected Bezier curve.

The pairwise-distance function on parameter space,

    fnS(t1, t2) = |C2d(t1) - C2d(t2)|,

vanishes exactly at parameter pairs where the projection crosses itself (and
identically on the diagonal t1 = t2, plus the wrap corner of closed curves).
The finder minimizes fnS^2 from a grid of starts above the diagonal and keeps
converged minima whose residual passes the root tolerance.

A brute-force oracle over a dense polyline sampling of the projection is kept
alongside as an independent route to the same crossings; the two are compared
at desk scale instead of trusting either alone.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .curve_kernel import BezierCurve, Point2, Point3, bernstein_basis, bernstein_basis_many
from .errors import DomainError
from .optimizer import SimplexConfig, nelder_mead

__all__ = [
    "IntersectionPair",
    "pairwise_distance",
    "find_self_intersections",
    "polyline_self_intersections",
    "worker_count",
]


def worker_count() -> int:
    """Parallelism cap from KNOTVERIFY_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("KNOTVERIFY_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class IntersectionPair:
    """One self-intersection of the projected curve, t1 < t2."""

    t1: float
    t2: float
    point2d: Point2
    p3d_1: Point3
    p3d_2: Point3
    residual: float

    def __post_init__(self):
        if not self.t1 < self.t2:
            raise ValueError("intersection pair requires t1 < t2")

    @property
    def z_gap(self) -> float:
        return abs(self.p3d_1.z - self.p3d_2.z)


def pairwise_distance(curve: BezierCurve, t1: float, t2: float) -> float:
    """|C2d(t1) - C2d(t2)|, the distance between two projected curve points."""
    d = curve.point_at_2d(t1) - curve.point_at_2d(t2)
    return float(np.hypot(d[0], d[1]))


def _make_pair(curve: BezierCurve, t1: float, t2: float, residual: float) -> IntersectionPair:
    a = curve.point_at(t1)
    b = curve.point_at(t2)
    mid = 0.5 * (a[:2] + b[:2])
    return IntersectionPair(
        t1=t1,
        t2=t2,
        point2d=Point2(float(mid[0]), float(mid[1])),
        p3d_1=Point3.from_array(a),
        p3d_2=Point3.from_array(b),
        residual=residual,
    )


def find_self_intersections(
    curve: BezierCurve,
    grid: int = 32,
    root_tolerance: float = 1e-6,
    diagonal_margin: float = 0.02,
    dedup_radius: float = 5e-3,
    wrap_margin: float | None = None,
    config: SimplexConfig = SimplexConfig(),
    threads: int | None = None,
) -> list[IntersectionPair]:
    """All distinct roots of fnS with t1 < t2, sorted by t1.

    Starts one simplex search per grid cell center above the diagonal,
    discards non-roots and the trivial zero sets (diagonal band, and for
    closed curves the corner where t1 ~ 0 pairs with t2 ~ 1), then merges
    duplicates within `dedup_radius`, keeping the lowest-residual
    representative of each cluster.
    """
    if grid < 8:
        raise DomainError("grid must be at least 8")
    if wrap_margin is None:
        wrap_margin = diagonal_margin
    closed = curve.closed
    n = curve.degree
    xy = curve._xy

    def objective(t1, t2):
        d = (bernstein_basis(n, t1) - bernstein_basis(n, t2)) @ xy
        return float(d @ d)

    starts = [
        ((i + 0.5) / grid, (j + 0.5) / grid)
        for i in range(grid)
        for j in range(i + 1, grid)
    ]

    def run(start):
        return nelder_mead(objective, start, config)

    threads = worker_count() if threads is None else max(1, threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(s) for s in starts]

    candidates = []
    for res in results:
        if not res.converged:
            continue
        residual = res.f_value**0.5
        if residual > root_tolerance:
            continue
        t1, t2 = sorted(res.x)
        if t2 - t1 < diagonal_margin:
            continue
        if closed and t1 < wrap_margin and t2 > 1.0 - wrap_margin:
            continue
        candidates.append((residual, t1, t2))

    candidates.sort()
    kept: list[tuple[float, float, float]] = []
    for residual, t1, t2 in candidates:
        if all((t1 - k[1]) ** 2 + (t2 - k[2]) ** 2 >= dedup_radius**2 for k in kept):
            kept.append((residual, t1, t2))

    pairs = [_make_pair(curve, t1, t2, residual) for residual, t1, t2 in kept]
    pairs.sort(key=lambda p: (p.t1, p.t2))
    return pairs


def polyline_self_intersections(
    curve: BezierCurve,
    samples: int = 4096,
) -> list[tuple[float, float]]:
    """Brute-force oracle: crossings of the projection sampled as a polyline.

    Every non-adjacent chord pair is tested for proper intersection (the
    wrap-adjacent pair of a closed curve is skipped like any other adjacent
    pair).  Returns approximate (t1, t2) parameter pairs, chord-interpolated,
    deduplicated within two sample widths and sorted by t1.  Independent of
    the simplex search on purpose.
    """
    if samples < 16:
        raise DomainError("need at least 16 samples")
    ts = np.arange(samples + 1) / samples
    pts = curve.sample_2d(ts)
    a, b = pts[:-1], pts[1:]
    seg = b - a
    closed = curve.closed

    hits: list[tuple[float, float]] = []
    for i in range(samples - 2):
        jmax = samples if (i > 0 or not closed) else samples - 1
        j0 = i + 2
        if j0 >= jmax:
            continue
        p, r = a[i], seg[i]
        q, s = a[j0:jmax], seg[j0:jmax]
        denom = r[0] * s[:, 1] - r[1] * s[:, 0]
        qp = q - p
        with np.errstate(divide="ignore", invalid="ignore"):
            tt = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / denom
            uu = (qp[:, 0] * r[1] - qp[:, 1] * r[0]) / denom
        ok = (denom != 0.0) & (tt >= 0.0) & (tt <= 1.0) & (uu >= 0.0) & (uu <= 1.0)
        for k in np.nonzero(ok)[0]:
            hits.append(((i + float(tt[k])) / samples, (j0 + k + float(uu[k])) / samples))

    hits.sort()
    radius = 2.0 / samples
    merged: list[tuple[float, float]] = []
    for h in hits:
        if all(abs(h[0] - m[0]) > radius or abs(h[1] - m[1]) > radius for m in merged):
            merged.append(h)
    return merged
