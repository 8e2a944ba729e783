import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotverify import (
    ControlPolygon,
    InvalidGeometryError,
    KnotVerifyError,
    Point3,
    collinear_insert,
    make_perturbation_arc,
    polygon_is_simple,
    segment_min_distance,
    sweep_simplicity,
)
from knotverify import fixtures


def _p(x, y, z):
    return Point3(float(x), float(y), float(z))


def _brute_force_distance(a0, a1, b0, b1, grid=1000):
    u = np.linspace(0.0, 1.0, grid)
    pa = a0.as_array() + u[:, None] * (a1.as_array() - a0.as_array())
    pb = b0.as_array() + u[:, None] * (b1.as_array() - b0.as_array())
    d2 = ((pa[:, None, :] - pb[None, :, :]) ** 2).sum(axis=2)
    return float(np.sqrt(d2.min()))


class TestSegmentDistance:
    def test_parallel_unit_offset(self):
        d = segment_min_distance(_p(0, 0, 0), _p(1, 0, 0), _p(0, 1, 0), _p(1, 1, 0))
        assert d == pytest.approx(1.0, abs=1e-15)

    def test_shared_endpoint(self):
        d = segment_min_distance(_p(0, 0, 0), _p(1, 0, 0), _p(0, 0, 0), _p(0, 1, 0))
        assert d == 0.0

    def test_crossing_segments(self):
        d = segment_min_distance(_p(-1, 0, 0), _p(1, 0, 0), _p(0, -1, 0), _p(0, 1, 0))
        assert d == pytest.approx(0.0, abs=1e-15)

    def test_zero_length_rejected(self):
        with pytest.raises(InvalidGeometryError):
            segment_min_distance(_p(0, 0, 0), _p(0, 0, 0), _p(0, 1, 0), _p(1, 1, 0))

    def test_against_dense_sampling_oracle(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            pts = rng.uniform(-3.0, 3.0, size=(4, 3))
            a0, a1, b0, b1 = (Point3.from_array(p) for p in pts)
            exact = segment_min_distance(a0, a1, b0, b1)
            sampled = _brute_force_distance(a0, a1, b0, b1)
            assert exact <= sampled + 1e-12
            assert abs(exact - sampled) <= 1e-3

    def test_symmetry(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            pts = rng.uniform(-2.0, 2.0, size=(4, 3))
            a0, a1, b0, b1 = (Point3.from_array(p) for p in pts)
            assert segment_min_distance(a0, a1, b0, b1) == segment_min_distance(b0, b1, a0, a1)

    @given(st.floats(-np.pi, np.pi), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
    @settings(max_examples=40, deadline=None)
    def test_rigid_motion_invariance(self, angle, tx, ty, tz):
        rng = np.random.default_rng(31)
        pts = rng.uniform(-2.0, 2.0, size=(4, 3))
        c, s = np.cos(angle), np.sin(angle)
        R = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        moved = pts @ R.T + np.array([tx, ty, tz])
        d0 = segment_min_distance(*(Point3.from_array(p) for p in pts))
        d1 = segment_min_distance(*(Point3.from_array(p) for p in moved))
        assert abs(d0 - d1) <= 1e-9


class TestPolygonSimple:
    def test_convex_quadrilateral(self):
        quad = ControlPolygon([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], closed=True)
        assert polygon_is_simple(quad)

    def test_bowtie(self):
        bowtie = ControlPolygon([[0, 0, 0], [1, 1, 0], [1, 0, 0], [0, 1, 0]], closed=True)
        assert not polygon_is_simple(bowtie)

    def test_collinear_spike(self):
        # second edge doubles back along the first
        spike = ControlPolygon([[0, 0, 0], [2, 0, 0], [1, 0, 0]], closed=False)
        assert not polygon_is_simple(spike)

    def test_fixture_polygons_after_insertions(self, initial_polygon, perturbed_polygon):
        for poly in (initial_polygon, perturbed_polygon):
            p = poly
            for _ in range(4):
                p = collinear_insert(p)
            assert polygon_is_simple(p)

    def test_open_chain(self):
        chain = ControlPolygon([[0, 0, 0], [1, 0, 0], [1, 1, 0], [2, 1, 1]], closed=False)
        assert polygon_is_simple(chain)


class TestSweep:
    def test_null_arc_certifies(self, initial_polygon):
        arc = make_perturbation_arc(initial_polygon, 0, initial_polygon.vertex(0))
        report = sweep_simplicity(initial_polygon, arc, steps=16)
        assert report.certified
        assert report.alpha == 0.0
        assert report.min_distance > 0.0

    def test_fixture_sweep_certifies(self, initial_polygon):
        arc = make_perturbation_arc(initial_polygon, 0, fixtures.PERTURBED_V0)
        report = sweep_simplicity(initial_polygon, arc, steps=4096)
        assert report.certified
        assert report.min_distance > report.lipschitz_bound * report.theta_step
        assert report.min_distance > 0.0

    def test_refinement_never_revokes_certification(self, initial_polygon):
        arc = make_perturbation_arc(initial_polygon, 0, fixtures.PERTURBED_V0)
        coarse = sweep_simplicity(initial_polygon, arc, steps=512)
        fine = sweep_simplicity(initial_polygon, arc, steps=1024)
        assert coarse.certified <= fine.certified
        # Lipschitz consistency: refining cannot move the sampled minimum
        # by more than the speed bound times the coarse step
        assert abs(fine.min_distance - coarse.min_distance) <= coarse.lipschitz_bound * coarse.theta_step

    def test_non_simple_start_rejected(self):
        bowtie = ControlPolygon([[0, 0, 0], [1, 1, 0], [1, 0, 0], [0, 1, 0]], closed=True)
        arc = make_perturbation_arc(bowtie, 0, Point3(0.0, 0.1, 0.5))
        with pytest.raises(KnotVerifyError):
            sweep_simplicity(bowtie, arc, steps=16)

    def test_collision_course_not_certified(self):
        # rotating one square corner by pi about the diagonal through its
        # neighbors lands it exactly on the opposite corner
        square = ControlPolygon([[0, 0, 0], [4, 0, 0], [4, 4, 0], [0, 4, 0]], closed=True)
        arc = make_perturbation_arc(square, 0, Point3(4.0, 4.0, 0.0))
        assert arc.total_angle == pytest.approx(np.pi, abs=1e-12)
        report = sweep_simplicity(square, arc, steps=64)
        assert report.min_distance <= 1e-6
        assert not report.certified
