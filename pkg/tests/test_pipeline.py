import json

import pytest

from knotverify import (
    AnalysisConfig,
    ControlPolygon,
    SingularFrameError,
    Verdict,
    reproduce_example,
    run_analysis,
)
from knotverify import fixtures
from knotverify.pipeline import OPEN_CURVE_VERDICT

FAST = AnalysisConfig(insert_rounds=2, grid=12, oracle_samples=512)


def test_initial_fixture_report(initial_polygon):
    report = run_analysis(initial_polygon, AnalysisConfig(), curve_id="initial")
    assert report.verdict == Verdict.UNKNOT
    assert len(report.crossing_pairs) == 4
    assert report.polygon_simple
    assert report.oracle_agrees
    assert report.alexander.coeff_string() == "1"


def test_perturbed_fixture_report(perturbed_polygon):
    report = run_analysis(perturbed_polygon, AnalysisConfig(), curve_id="perturbed")
    assert report.verdict == Verdict.NONTRIVIAL_KNOT
    assert report.alexander.coeff_string() == "1 -3 1"
    assert report.alexander.to_json_obj() == {"base_exp": 0, "coeffs": [1, -3, 1]}
    assert report.polygon_simple
    assert report.oracle_agrees


def test_planar_polygon_raises_singular_frame():
    bowtie = ControlPolygon([[0, 0, 0], [1, 1, 0], [1, 0, 0], [0, 1, 0]], closed=True)
    with pytest.raises(SingularFrameError):
        run_analysis(bowtie, AnalysisConfig(insert_rounds=2, grid=16, oracle_samples=0))


def test_open_curve_report():
    chain = ControlPolygon([[0, 0, 0], [1, 1, 1]], closed=False)
    report = run_analysis(chain, AnalysisConfig(insert_rounds=0, grid=8, oracle_samples=0))
    assert report.verdict == OPEN_CURVE_VERDICT
    assert report.crossing_pairs == []
    assert report.alexander is None


def test_insert_rounds_zero_is_total(initial_polygon):
    report = run_analysis(initial_polygon, AnalysisConfig(insert_rounds=0))
    assert report.verdict in (Verdict.UNKNOT, Verdict.NONTRIVIAL_KNOT, Verdict.INCONCLUSIVE)
    assert report.tolerances["insert_rounds"] == 0


def test_report_determinism(initial_polygon):
    cfg = FAST
    a = run_analysis(initial_polygon, cfg, curve_id="x").to_json()
    b = run_analysis(initial_polygon, cfg, curve_id="x").to_json()
    assert a == b


def test_report_echoes_tolerances(initial_polygon):
    cfg = AnalysisConfig(insert_rounds=1, grid=8, root_tolerance=1e-5, oracle_samples=0)
    report = run_analysis(initial_polygon, cfg)
    tol = report.to_json_dict()["tolerances"]
    assert tol["grid"] == 8
    assert tol["root_tolerance"] == 1e-5
    assert tol["z_separation"] == cfg.z_separation
    assert tol["wrap_margin"] == cfg.diagonal_margin


def test_report_json_is_valid(initial_polygon):
    report = run_analysis(initial_polygon, FAST)
    parsed = json.loads(report.to_json())
    assert parsed["verdict"] == report.verdict
    assert len(parsed["crossings"]) == len(report.crossing_pairs)


def test_verdict_consistency_invariant(perturbed_polygon):
    from knotverify import is_trivial_verdict

    report = run_analysis(perturbed_polygon, AnalysisConfig())
    if report.oracle_agrees is not False:
        assert report.verdict == is_trivial_verdict(
            report.alexander, len(report.crossing_pairs)
        )


def test_reproduce_example_succeeds():
    status, bundle = reproduce_example()
    assert status == 0
    assert bundle["status"] == "ok"
    assert bundle["mismatches"] == []
    assert bundle["initial"]["verdict"] == Verdict.UNKNOT
    assert bundle["perturbed"]["verdict"] == Verdict.NONTRIVIAL_KNOT
    assert bundle["perturbed"]["alexander_coeffs"] == "1 -3 1"
    assert bundle["sweep"]["certified"] is True


def test_coarse_grid_never_reports_wrong_verdict_silently(initial_polygon):
    report = run_analysis(initial_polygon, AnalysisConfig(grid=8))
    if report.oracle_agrees:
        assert report.verdict == Verdict.UNKNOT
    else:
        assert report.verdict == Verdict.INCONCLUSIVE
        assert any("mismatch" in n for n in report.notes)
