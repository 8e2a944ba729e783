"""Shared fixtures.

The two degree-112 curves and their crossing searches are expensive enough
(seconds each) to compute once per session; every module that needs them
pulls from here.
"""

from __future__ import annotations

import numpy as np
import pytest

from knotverify import (
    BezierCurve,
    ControlPolygon,
    build_diagram,
    find_self_intersections,
    polyline_self_intersections,
)
from knotverify import fixtures


@pytest.fixture(scope="session")
def initial_polygon():
    return fixtures.initial_polygon()


@pytest.fixture(scope="session")
def perturbed_polygon():
    return fixtures.perturbed_polygon()


@pytest.fixture(scope="session")
def initial_curve(initial_polygon):
    return fixtures.build_fixture_curve(initial_polygon)


@pytest.fixture(scope="session")
def perturbed_curve(perturbed_polygon):
    return fixtures.build_fixture_curve(perturbed_polygon)


@pytest.fixture(scope="session")
def initial_pairs(initial_curve):
    return find_self_intersections(initial_curve)


@pytest.fixture(scope="session")
def perturbed_pairs(perturbed_curve):
    return find_self_intersections(perturbed_curve)


@pytest.fixture(scope="session")
def initial_oracle(initial_curve):
    return polyline_self_intersections(initial_curve)


@pytest.fixture(scope="session")
def perturbed_oracle(perturbed_curve):
    return polyline_self_intersections(perturbed_curve)


@pytest.fixture(scope="session")
def initial_diagram(initial_curve, initial_pairs):
    return build_diagram(initial_curve, initial_pairs)


@pytest.fixture(scope="session")
def perturbed_diagram(perturbed_curve, perturbed_pairs):
    return build_diagram(perturbed_curve, perturbed_pairs)


def random_closed_polygon(rng: np.random.Generator, n: int | None = None) -> ControlPolygon:
    """A random closed polygon with distinct consecutive vertices."""
    if n is None:
        n = int(rng.integers(3, 9))
    while True:
        verts = rng.uniform(-5.0, 5.0, size=(n, 3))
        diffs = np.vstack([np.diff(verts, axis=0), verts[:1] - verts[-1:]])
        if (np.linalg.norm(diffs, axis=1) > 1e-6).all():
            return ControlPolygon(verts, closed=True)


def random_curve(rng: np.random.Generator, n_points: int | None = None) -> BezierCurve:
    if n_points is None:
        n_points = int(rng.integers(2, 12))
    return BezierCurve(rng.uniform(-5.0, 5.0, size=(n_points, 3)))
