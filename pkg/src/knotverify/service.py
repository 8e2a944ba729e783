"""HTTP JSON facade for the interactive explorer.

Sessions hold an original polygon plus an insertion-round count; every
mutation bumps a version and rebuilds the derived polygon, so analysis
results are cached per version and can never be served stale.  Heavy
computations run on a worker pool bounded by KNOTVERIFY_THREADS.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .curve_kernel import (
    BezierCurve,
    ControlPolygon,
    Point3,
    collinear_insert,
    make_perturbation_arc,
    polygon_from_json,
    polygon_to_json,
)
from .errors import InvalidGeometryError, KnotVerifyError, SingularFrameError, TangentialCrossingError
from .intersections import worker_count
from .pipeline import AnalysisConfig, AnalysisReport, run_analysis
from .simplicity import polygon_is_simple, sweep_simplicity

MAX_INSERTION_ROUNDS = 10
RENDER_MIN_SAMPLES = 16
RENDER_MAX_SAMPLES = 65536


class CreateCurveRequest(BaseModel):
    polygon: dict
    rounds: int = 0


class VertexMoveRequest(BaseModel):
    original_vertex_index: int
    position: list[float]
    sweep: bool = False


@dataclass
class CurveSession:
    id: str
    original: ControlPolygon
    rounds: int
    config: AnalysisConfig
    version: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)
    _report: AnalysisReport | None = None
    _report_version: int = -1

    def derived_polygon(self) -> ControlPolygon:
        p = self.original
        for _ in range(self.rounds):
            p = collinear_insert(p)
        return p

    def curve(self) -> BezierCurve:
        return BezierCurve.from_polygon(self.derived_polygon())

    def summary(self) -> dict:
        derived = self.derived_polygon()
        return {
            "id": self.id,
            "version": self.version,
            "rounds": self.rounds,
            "closed": self.original.closed,
            "original_vertex_count": len(self.original),
            "control_point_count": len(derived),
            "degree": len(derived) if self.original.closed else len(derived) - 1,
            "polygon_simple": polygon_is_simple(derived, self.config.clearance),
        }


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, CurveSession] = {}
        self._ids = itertools.count(1)

    def create(self, polygon: ControlPolygon, rounds: int, config: AnalysisConfig) -> CurveSession:
        with self._lock:
            sid = f"c{next(self._ids)}"
            session = CurveSession(id=sid, original=polygon, rounds=rounds, config=config)
            self._sessions[sid] = session
            return session

    def get(self, sid: str) -> CurveSession:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown curve session {sid!r}")
        return session


def create_app(config: AnalysisConfig | None = None) -> FastAPI:
    config = config or AnalysisConfig()
    app = FastAPI(title="knotverify")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore()
    pool = ThreadPoolExecutor(max_workers=worker_count())

    def session_report(session: CurveSession) -> AnalysisReport:
        with session.lock:
            if session._report is not None and session._report_version == session.version:
                return session._report
            version = session.version
            cfg = replace(config, insert_rounds=session.rounds)
            report = pool.submit(run_analysis, session.original, cfg, session.id).result()
            session._report = report
            session._report_version = version
            return report

    @app.post("/api/curves", status_code=201)
    def create_curve(req: CreateCurveRequest):
        if not 0 <= req.rounds <= MAX_INSERTION_ROUNDS:
            raise HTTPException(status_code=400, detail=f"rounds must be in [0, {MAX_INSERTION_ROUNDS}]")
        try:
            polygon = polygon_from_json(req.polygon)
        except InvalidGeometryError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session = store.create(polygon, req.rounds, config)
        return {"id": session.id}

    @app.get("/api/curves/{sid}")
    def get_curve(sid: str):
        return store.get(sid).summary()

    @app.post("/api/curves/{sid}/vertex")
    def move_vertex(sid: str, req: VertexMoveRequest):
        session = store.get(sid)
        if len(req.position) != 3:
            raise HTTPException(status_code=400, detail="position must be [x, y, z]")
        target = Point3(*(float(c) for c in req.position))
        with session.lock:
            polygon = session.original
            i = req.original_vertex_index
            if not 0 <= i < len(polygon):
                raise HTTPException(status_code=400, detail=f"vertex index {i} out of range")
            try:
                arc = make_perturbation_arc(polygon, i, target)
            except InvalidGeometryError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            try:
                moved = polygon.with_vertex(i, target)
            except InvalidGeometryError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            sweep_report = None
            if req.sweep:
                sweep_report = sweep_simplicity(polygon, arc, steps=config.sweep_steps)
            session.original = moved
            session.version += 1
            out = session.summary()
        out["arc"] = {
            "alpha": arc.total_angle,
            "radius_start": arc.radius_start,
            "radius_end": arc.radius_end,
        }
        if sweep_report is not None:
            out["sweep"] = sweep_report.to_json_dict()
        return out

    @app.get("/api/curves/{sid}/analysis")
    def get_analysis(sid: str):
        session = store.get(sid)
        try:
            return session_report(session).to_json_dict()
        except (SingularFrameError, TangentialCrossingError) as exc:
            raise HTTPException(
                status_code=422, detail={"error": type(exc).__name__, "detail": str(exc)}
            )
        except KnotVerifyError as exc:
            raise HTTPException(
                status_code=422, detail={"error": type(exc).__name__, "detail": str(exc)}
            )

    @app.get("/api/curves/{sid}/render")
    def render(sid: str, samples: int = 1024):
        if not RENDER_MIN_SAMPLES <= samples <= RENDER_MAX_SAMPLES:
            raise HTTPException(
                status_code=400,
                detail=f"samples must be in [{RENDER_MIN_SAMPLES}, {RENDER_MAX_SAMPLES}]",
            )
        session = store.get(sid)
        curve = session.curve()
        ts = np.arange(samples + 1) / samples
        pts = curve.sample(ts)
        try:
            report = session_report(session)
        except (SingularFrameError, TangentialCrossingError, KnotVerifyError) as exc:
            raise HTTPException(
                status_code=422, detail={"error": type(exc).__name__, "detail": str(exc)}
            )
        crossings = [
            {
                "id": k + 1,
                "point": [p.point2d.x, p.point2d.y],
                "t_first": p.t1,
                "t_second": p.t2,
                "over_is_first": p.p3d_1.z > p.p3d_2.z,
                "z_first": p.p3d_1.z,
                "z_second": p.p3d_2.z,
            }
            for k, p in enumerate(report.crossing_pairs)
        ]
        return {
            "curve2d": pts[:, :2].tolist(),
            "curve3d": pts.tolist(),
            "polygon": polygon_to_json(session.derived_polygon()),
            "original_polygon": polygon_to_json(session.original),
            "crossings": crossings,
            "samples": samples,
            "verdict": report.verdict,
        }

    return app
