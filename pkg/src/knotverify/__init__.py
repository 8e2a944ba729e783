"""Knot-type verification for high-degree Bezier curves.

Builds curves of arbitrary degree from control polygons by midpoint
(collinear) insertion, perturbs vertices by rotation about a line, locates
all self-intersections of the xy-projection, classifies them into an
oriented diagram, and certifies knottedness through the Alexander
polynomial — while separately certifying that the control polygon itself
stays simple throughout the perturbation.
"""

from .curve_kernel import (
    BezierCurve,
    ControlPolygon,
    PerturbationArc,
    Point2,
    Point3,
    arc_position,
    bezier_eval,
    bezier_eval_2d,
    bezier_eval_de_casteljau,
    collinear_insert,
    hausdorff_distance,
    load_polygon,
    make_perturbation_arc,
    polygon_from_json,
    polygon_to_json,
    rotate_about_axis,
)
from .diagram import (
    Crossing,
    KnotDiagram,
    LaurentPolynomial,
    PolyMatrix,
    Verdict,
    alexander_polynomial,
    build_diagram,
    is_trivial_verdict,
    normalize_alexander,
    poly_matrix_determinant,
)
from .errors import (
    DegenerateDiagramError,
    DomainError,
    InvalidGeometryError,
    KnotVerifyError,
    ObjectiveEvaluationError,
    SingularFrameError,
    TangentialCrossingError,
)
from .intersections import (
    IntersectionPair,
    find_self_intersections,
    pairwise_distance,
    polyline_self_intersections,
)
from .optimizer import MinimizationResult, SimplexConfig, nelder_mead
from .pipeline import AnalysisConfig, AnalysisReport, reproduce_example, run_analysis
from .simplicity import SweepReport, polygon_is_simple, segment_min_distance, sweep_simplicity

__version__ = "0.1.0"

__all__ = [
    "BezierCurve",
    "ControlPolygon",
    "PerturbationArc",
    "Point2",
    "Point3",
    "arc_position",
    "bezier_eval",
    "bezier_eval_2d",
    "bezier_eval_de_casteljau",
    "collinear_insert",
    "hausdorff_distance",
    "load_polygon",
    "make_perturbation_arc",
    "polygon_from_json",
    "polygon_to_json",
    "rotate_about_axis",
    "Crossing",
    "KnotDiagram",
    "LaurentPolynomial",
    "PolyMatrix",
    "Verdict",
    "alexander_polynomial",
    "build_diagram",
    "is_trivial_verdict",
    "normalize_alexander",
    "poly_matrix_determinant",
    "KnotVerifyError",
    "InvalidGeometryError",
    "DomainError",
    "ObjectiveEvaluationError",
    "SingularFrameError",
    "TangentialCrossingError",
    "DegenerateDiagramError",
    "IntersectionPair",
    "find_self_intersections",
    "pairwise_distance",
    "polyline_self_intersections",
    "MinimizationResult",
    "SimplexConfig",
    "nelder_mead",
    "AnalysisConfig",
    "AnalysisReport",
    "run_analysis",
    "reproduce_example",
    "SweepReport",
    "polygon_is_simple",
    "segment_min_distance",
    "sweep_simplicity",
    "__version__",
]
