"""Bundled counterexample data.

A closed 7-vertex control polygon whose degree-112 curve (after four rounds
of midpoint insertion) is unknotted, together with a single-vertex target
position reachable by rotation about the line through the vertex's two
neighbors.  Moving the vertex keeps the polygon simple throughout the
rotation while the curve becomes a nontrivial knot, so the curve must pass
through a self-intersection along the way even though the polygon never
does.
"""

from __future__ import annotations

import numpy as np

from .curve_kernel import BezierCurve, ControlPolygon, Point3, collinear_insert
from .diagram import LaurentPolynomial, PolyMatrix

__all__ = [
    "INITIAL_VERTICES",
    "PERTURBED_V0",
    "INSERTION_ROUNDS",
    "initial_polygon",
    "perturbed_polygon",
    "build_fixture_curve",
    "UNKNOT_CROSSING_PARAMS",
    "KNOT_CROSSING_PARAMS_PUBLISHED",
    "KNOT_CROSSING_PARAMS_EXTRA",
    "UNKNOT_POINT_PAIRS",
    "KNOT_POINT_PAIRS",
    "KNOT_ALEXANDER",
    "REGION_MATRIX",
]

INITIAL_VERTICES = np.array(
    [
        [1.9817, -1.7646, -4.5897],
        [-1.3841185, 4.6825505, 0.913541],
        [-3.2983075, -4.0566825, 2.686189],
        [-0.1232995, 2.768254, -2.463584],
        [3.9079915, -4.533357, 1.2263705],
        [-3.935983, -0.438272, -0.983365],
        [3.218174, 4.296123, 2.1124595],
    ]
)

# rotation of vertex 0 about the line through vertices 1 and 6 lands here
PERTURBED_V0 = Point3(1.3076, -3.3320, -2.5072)

INSERTION_ROUNDS = 4


def initial_polygon() -> ControlPolygon:
    return ControlPolygon(INITIAL_VERTICES, closed=True)


def perturbed_polygon() -> ControlPolygon:
    return initial_polygon().with_vertex(0, PERTURBED_V0)


def build_fixture_curve(polygon: ControlPolygon, rounds: int = INSERTION_ROUNDS) -> BezierCurve:
    p = polygon
    for _ in range(rounds):
        p = collinear_insert(p)
    return BezierCurve.from_polygon(p)


# Crossing parameter pairs of the two degree-112 projections, found by the
# multi-start simplex search and confirmed by the polyline oracle.
UNKNOT_CROSSING_PARAMS = [
    (0.0488, 0.4614),
    (0.0861, 0.7918),
    (0.3473, 0.6931),
    (0.5126, 0.9915),
]

KNOT_CROSSING_PARAMS_PUBLISHED = [
    (0.0761, 0.4240),
    (0.0928, 0.7830),
    (0.3473, 0.6931),
    (0.5039, 0.9575),
]

# Two further crossings near the curve seam.  They form a cancelling pair
# (a Type II move removes both), so the invariant below is unaffected, but
# any complete enumeration of the projection's crossings must include them.
KNOT_CROSSING_PARAMS_EXTRA = [
    (0.006990, 0.615173),
    (0.609591, 0.994062),
]

# 3D evaluations at the crossing parameters of the unperturbed curve
UNKNOT_POINT_PAIRS = [
    ((0.8309, 0.4397, -2.7081), (0.8308, 0.4397, -1.2072)),
    ((-0.0435, 2.0929, -1.2807), (-0.0435, 2.0928, 0.6747)),
    ((-1.8672, -1.0031, 0.4288), (-1.8672, -1.0032, -0.3359)),
    ((2.0548, -1.4062, -0.3480), (2.0548, -1.4061, -4.1932)),
]

# 3D evaluations at the four published crossing parameters of the perturbed curve
KNOT_POINT_PAIRS = [
    ((-0.1265, 0.9308, -0.6850), (-0.1266, 0.9308, -1.2854)),
    ((-0.4389, 1.8160, -0.2901), (-0.4389, 1.8159, 0.5159)),
    ((-1.8672, -1.0032, 0.4289), (-1.8671, -1.0032, -0.3358)),
    ((1.8761, -1.0622, -0.5163), (1.8761, -1.0623, -1.1327)),
]

KNOT_ALEXANDER = LaurentPolynomial.from_coeffs([1, -3, 1])


def _t(coeff: int) -> LaurentPolynomial:
    return LaurentPolynomial.term(coeff, 1)


# Crossing/region incidence matrix quoted for the perturbed curve's 4-crossing
# diagram (rows = crossings, columns = regions).  Kept verbatim as a
# determinant fixture; see the regression tests for what its column-pair
# minors actually evaluate to.
REGION_MATRIX = PolyMatrix.from_ints(
    [
        [0, 0, 1, -1, _t(-1), _t(1)],
        [-1, _t(1), 1, _t(-1), 0, 0],
        [_t(-1), _t(1), 0, -1, 0, 1],
        [_t(1), 0, 1, 0, -1, _t(1)],
    ]
)
