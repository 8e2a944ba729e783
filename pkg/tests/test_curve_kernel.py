import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotverify import (
    BezierCurve,
    ControlPolygon,
    DomainError,
    InvalidGeometryError,
    Point3,
    arc_position,
    bezier_eval,
    bezier_eval_2d,
    bezier_eval_de_casteljau,
    collinear_insert,
    hausdorff_distance,
    make_perturbation_arc,
    polygon_from_json,
    polygon_to_json,
    rotate_about_axis,
)
from knotverify import fixtures

from conftest import random_closed_polygon, random_curve

# analytic-geometry oracle values for the bundled perturbation, computed
# from the closed-form foot-of-perpendicular and angle formulas
ARC_ALPHA = 0.3070420593389524
ARC_RADIUS_START = 8.802738336123713
ARC_RADIUS_END = 8.802719198603404

# regression constants: sampled Hausdorff distance after k insertion rounds
HAUSDORFF_BY_ROUND = [
    5.462289225375822,
    4.9124319595230075,
    4.120225775328651,
    3.1573810290045037,
    2.275797910221088,
]


class TestTypes:
    def test_point_rejects_non_finite(self):
        with pytest.raises(InvalidGeometryError):
            Point3(0.0, float("nan"), 0.0)

    def test_polygon_needs_two_vertices(self):
        with pytest.raises(InvalidGeometryError):
            ControlPolygon([[0, 0, 0]], closed=False)

    def test_polygon_rejects_zero_length_edge(self):
        with pytest.raises(InvalidGeometryError):
            ControlPolygon([[0, 0, 0], [0, 0, 0], [1, 0, 0]], closed=False)

    def test_closed_polygon_stores_first_vertex_once(self):
        with pytest.raises(InvalidGeometryError):
            ControlPolygon([[0, 0, 0], [1, 0, 0], [0, 0, 0]], closed=True)

    def test_curve_needs_two_control_points(self):
        with pytest.raises(InvalidGeometryError):
            BezierCurve([[0.0, 0.0, 0.0]])

    def test_closed_polygon_curve_repeats_first_point(self):
        poly = ControlPolygon([[0, 0, 0], [1, 0, 0], [0, 1, 0]], closed=True)
        curve = BezierCurve.from_polygon(poly)
        assert curve.degree == 3
        assert np.array_equal(curve.control_points[0], curve.control_points[-1])


class TestEval:
    def test_linear_midpoint(self):
        curve = BezierCurve([[0, 0, 0], [2, 4, 6]])
        p = bezier_eval(curve, 0.5)
        assert (p.x, p.y, p.z) == (1.0, 2.0, 3.0)

    def test_domain_error(self):
        curve = BezierCurve([[0, 0, 0], [1, 1, 1]])
        with pytest.raises(DomainError):
            bezier_eval(curve, 1.5)
        with pytest.raises(DomainError):
            bezier_eval(curve, -0.1)

    def test_degree_112_endpoint(self, initial_curve):
        p = bezier_eval(initial_curve, 0.0)
        assert (p.x, p.y, p.z) == (1.9817, -1.7646, -4.5897)

    def test_degree_112_interior_value(self, initial_curve):
        p = bezier_eval(initial_curve, 0.3473)
        assert abs(p.x - -1.8672) < 1e-3
        assert abs(p.y - -1.0031) < 1e-3
        assert abs(p.z - 0.4288) < 1e-3

    def test_matches_de_casteljau_at_high_degree(self, initial_curve):
        rng = np.random.default_rng(42)
        for t in rng.uniform(0.0, 1.0, 40):
            fast = bezier_eval(initial_curve, t).as_array()
            ref = bezier_eval_de_casteljau(initial_curve, t).as_array()
            assert np.linalg.norm(fast - ref) <= 1e-9 * max(1.0, np.linalg.norm(ref))

    def test_eval_2d_is_projection(self):
        curve = BezierCurve([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        p = bezier_eval_2d(curve, 0.0)
        assert (p.x, p.y) == (1.0, 2.0)

    def test_eval_2d_initial_curve(self, initial_curve, initial_pairs):
        # the 4-digit published parameter is rounded; |B'| ~ 66 near the
        # seam, so evaluate at the actual root to meet the point tolerance
        t = min(initial_pairs, key=lambda p: abs(p.t1 - 0.0488)).t1
        assert abs(t - 0.0488) < 5e-4
        p = bezier_eval_2d(initial_curve, t)
        assert abs(p.x - 0.8309) < 1e-3
        assert abs(p.y - 0.4397) < 1e-3

    def test_eval_2d_perturbed_curve(self, perturbed_curve):
        p = bezier_eval_2d(perturbed_curve, 0.3473)
        assert abs(p.x - -1.8672) < 1e-3
        assert abs(p.y - -1.0032) < 1e-3

    def test_endpoint_interpolation_random(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            curve = random_curve(rng)
            first = bezier_eval(curve, 0.0).as_array()
            last = bezier_eval(curve, 1.0).as_array()
            assert np.abs(first - curve.control_points[0]).max() <= 1e-12
            assert np.abs(last - curve.control_points[-1]).max() <= 1e-12

    def test_closed_curve_seam(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            curve = BezierCurve.from_polygon(random_closed_polygon(rng))
            gap = np.linalg.norm(bezier_eval(curve, 0.0).as_array() - bezier_eval(curve, 1.0).as_array())
            assert gap < 1e-12

    def test_affine_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            curve = random_curve(rng)
            A = rng.uniform(-2, 2, size=(3, 3))
            b = rng.uniform(-5, 5, size=3)
            mapped = BezierCurve(curve.control_points @ A.T + b)
            t = float(rng.uniform())
            lhs = bezier_eval(mapped, t).as_array()
            rhs = A @ bezier_eval(curve, t).as_array() + b
            assert np.linalg.norm(lhs - rhs) <= 1e-9 * max(1.0, np.linalg.norm(rhs))


class TestCollinearInsert:
    def test_square_midpoints(self):
        square = ControlPolygon([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], closed=True)
        out = collinear_insert(square)
        assert len(out) == 8
        assert (out.vertices[1] == [0.5, 0.0, 0.0]).all()
        assert out.perimeter() == pytest.approx(4.0, abs=1e-15)
        assert square.perimeter() == pytest.approx(4.0, abs=1e-15)

    def test_originals_at_even_indices(self, initial_polygon):
        out = collinear_insert(initial_polygon)
        assert len(out) == 14
        assert np.array_equal(out.vertices[0::2], initial_polygon.vertices)

    def test_first_midpoint_value(self, initial_polygon):
        out = collinear_insert(initial_polygon)
        assert out.vertices[1] == pytest.approx(
            [0.29879075, 1.45897525, -1.8380795], abs=1e-15
        )

    def test_four_rounds_give_112(self, initial_polygon):
        p = initial_polygon
        for _ in range(4):
            p = collinear_insert(p)
        assert len(p) == 112

    def test_perimeter_preserved(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            poly = random_closed_polygon(rng)
            out = collinear_insert(poly)
            assert abs(out.perimeter() - poly.perimeter()) <= 1e-12 * poly.perimeter()

    def test_carrier_contains_original_vertices(self):
        rng = np.random.default_rng(6)
        poly = random_closed_polygon(rng)
        out = collinear_insert(poly)
        for v in poly.vertices:
            assert any(np.array_equal(v, w) for w in out.vertices)

    def test_open_polygon(self):
        poly = ControlPolygon([[0, 0, 0], [1, 0, 0], [1, 1, 0]], closed=False)
        out = collinear_insert(poly)
        assert len(out) == 5
        assert not out.closed


class TestRotation:
    def test_zero_angle_identity(self):
        p = Point3(1.0, 2.0, 3.0)
        q = rotate_about_axis(p, Point3(0, 0, 0), Point3(0, 0, 1), 0.0)
        assert q.as_array() == pytest.approx(p.as_array(), abs=1e-15)

    def test_on_axis_point_fixed(self):
        p = Point3(0.0, 0.0, 0.7)
        q = rotate_about_axis(p, Point3(0, 0, 0), Point3(0, 0, 1), 1.234)
        assert q.as_array() == pytest.approx(p.as_array(), abs=1e-15)

    def test_quarter_turn_about_z(self):
        q = rotate_about_axis(Point3(1, 0, 0), Point3(0, 0, 0), Point3(0, 0, 1), np.pi / 2)
        assert q.as_array() == pytest.approx([0.0, 1.0, 0.0], abs=1e-15)

    def test_coincident_axis_rejected(self):
        with pytest.raises(InvalidGeometryError):
            rotate_about_axis(Point3(1, 0, 0), Point3(0, 0, 0), Point3(0, 0, 0), 1.0)

    @given(
        st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3),
        st.floats(-np.pi, np.pi),
    )
    @settings(max_examples=60, deadline=None)
    def test_preserves_axis_distance_and_projection(self, px, py, pz, angle):
        p = Point3(px, py, pz)
        a = Point3(0.3, -0.2, 0.1)
        b = Point3(1.1, 0.9, -0.4)
        q = rotate_about_axis(p, a, b, angle)
        d = (b.as_array() - a.as_array())
        d = d / np.linalg.norm(d)

        def decompose(x):
            rel = x.as_array() - a.as_array()
            mu = float(rel @ d)
            return mu, np.linalg.norm(rel - mu * d)

        mu_p, r_p = decompose(p)
        mu_q, r_q = decompose(q)
        assert abs(mu_p - mu_q) <= 1e-9
        assert abs(r_p - r_q) <= 1e-9


class TestPerturbationArc:
    def test_null_perturbation(self, initial_polygon):
        start = initial_polygon.vertex(0)
        arc = make_perturbation_arc(initial_polygon, 0, start)
        assert arc.total_angle == 0.0
        for theta in (0.0,):
            assert arc_position(arc, theta).as_array() == pytest.approx(start.as_array(), abs=1e-12)

    def test_fixture_arc_reaches_target(self, initial_polygon):
        arc = make_perturbation_arc(initial_polygon, 0, fixtures.PERTURBED_V0)
        end = arc_position(arc, arc.total_angle)
        assert np.linalg.norm(end.as_array() - fixtures.PERTURBED_V0.as_array()) <= 1e-6
        start = arc_position(arc, 0.0)
        assert np.linalg.norm(start.as_array() - initial_polygon.vertices[0]) <= 1e-6

    def test_fixture_arc_against_analytic_oracle(self, initial_polygon):
        arc = make_perturbation_arc(initial_polygon, 0, fixtures.PERTURBED_V0)
        assert arc.total_angle == pytest.approx(ARC_ALPHA, abs=1e-12)
        assert arc.radius_start == pytest.approx(ARC_RADIUS_START, abs=1e-12)
        assert arc.radius_end == pytest.approx(ARC_RADIUS_END, abs=1e-12)

    def test_midpoint_radius_interpolates(self, initial_polygon):
        arc = make_perturbation_arc(initial_polygon, 0, fixtures.PERTURBED_V0)
        mid = arc_position(arc, arc.total_angle / 2).as_array()
        a = arc.axis_a.as_array()
        d = arc.axis_b.as_array() - a
        d /= np.linalg.norm(d)
        rel = mid - a
        radial = rel - (rel @ d) * d
        expected = 0.5 * (arc.radius_start + arc.radius_end)
        assert np.linalg.norm(radial) == pytest.approx(expected, abs=1e-9)

    def test_vertex_index_out_of_range(self, initial_polygon):
        with pytest.raises(DomainError):
            make_perturbation_arc(initial_polygon, 99, fixtures.PERTURBED_V0)

    def test_target_on_axis_rejected(self, initial_polygon):
        v1 = initial_polygon.vertices[1]
        v6 = initial_polygon.vertices[6]
        on_axis = Point3.from_array(0.5 * (v1 + v6))
        with pytest.raises(InvalidGeometryError):
            make_perturbation_arc(initial_polygon, 0, on_axis)

    def test_theta_out_of_range(self, initial_polygon):
        arc = make_perturbation_arc(initial_polygon, 0, fixtures.PERTURBED_V0)
        with pytest.raises(DomainError):
            arc_position(arc, arc.total_angle + 0.1)
        with pytest.raises(DomainError):
            arc_position(arc, -0.1)


class TestHausdorff:
    def test_segment_equals_its_polygon(self):
        poly = ControlPolygon([[0, 0, 0], [1, 2, 3]], closed=False)
        curve = BezierCurve.from_polygon(poly)
        assert hausdorff_distance(curve, poly, 64) <= 1e-12

    def test_translation_lower_bound(self, initial_polygon):
        curve = BezierCurve.from_polygon(initial_polygon)
        moved = ControlPolygon(initial_polygon.vertices + np.array([10.0, 0.0, 0.0]), closed=True)
        diameter = np.ptp(initial_polygon.vertices, axis=0).max()
        assert hausdorff_distance(curve, moved, 64) >= 10.0 - diameter

    def test_minimum_samples(self, initial_polygon):
        curve = BezierCurve.from_polygon(initial_polygon)
        with pytest.raises(DomainError):
            hausdorff_distance(curve, initial_polygon, 8)

    def test_insertion_rounds_regression(self, initial_polygon):
        poly = initial_polygon
        values = []
        for _ in range(5):
            values.append(hausdorff_distance(BezierCurve.from_polygon(poly), poly, 512))
            poly = collinear_insert(poly)
        assert values == pytest.approx(HAUSDORFF_BY_ROUND, rel=1e-12)
        assert all(b < a for a, b in zip(values, values[1:]))


class TestJson:
    def test_roundtrip(self, initial_polygon):
        obj = polygon_to_json(initial_polygon)
        back = polygon_from_json(json.loads(json.dumps(obj)))
        assert back.closed == initial_polygon.closed
        assert np.array_equal(back.vertices, initial_polygon.vertices)

    def test_accepts_four_decimal_digits(self):
        obj = {"closed": True, "control_points": [[1.9817, -1.7646, -4.5897], [0, 1, 0], [1, 0, 0]]}
        poly = polygon_from_json(obj)
        assert poly.vertices[0][0] == 1.9817

    def test_malformed_rejected(self):
        with pytest.raises(InvalidGeometryError):
            polygon_from_json({"closed": True})
        with pytest.raises(InvalidGeometryError):
            polygon_from_json({"closed": True, "control_points": [[1, 2], [3, 4]]})
