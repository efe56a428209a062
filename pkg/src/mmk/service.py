"""HTTP/JSON API over models, sessions, consistency checks, reports, what-if.

All routes live under /api/v1. Errors share one envelope:
{"error": {"code": ..., "message": ..., "detail": ...}} with the code taken
from the originating exception.
"""

from __future__ import annotations

import os
from typing import Any, Union

from fastapi import FastAPI, Query, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import __version__
from .ahp import (
    WeightMethod,
    consistency_report,
    format_judgment,
    inconsistency_hint,
    priority_weights,
    rank_weights,
)
from .errors import (
    ConflictError,
    ConvergenceError,
    DomainError,
    MmkError,
    NotFoundError,
    SchemaError,
)
from .model import ModelRegistry, default_registry, serialize_model
from .motorola import (
    DimensionScores,
    assess_maturity,
    plan_to_dict,
    report_to_dict,
    whatif_plan,
)
from .store import (
    MatrixMutation,
    ScoresMutation,
    Session,
    SessionMatrix,
    SessionStore,
    resolve_data_dir,
)

_STATUS_BY_ERROR = (
    (ConflictError, 409),
    (NotFoundError, 404),
    (SchemaError, 400),
    (ConvergenceError, 422),
    (DomainError, 422),
)


def _error_response(exc: MmkError) -> JSONResponse:
    status = 500
    for cls, code in _STATUS_BY_ERROR:
        if isinstance(exc, cls):
            status = code
            break
    detail: Any = None
    if isinstance(exc, SchemaError) and exc.path:
        detail = {"path": exc.path}
    elif isinstance(exc, DomainError) and exc.detail is not None:
        detail = exc.detail
    elif isinstance(exc, ConflictError):
        detail = {"expected": exc.expected, "actual": exc.actual}
    return JSONResponse(
        status_code=status,
        content={"error": {"code": exc.code, "message": str(exc), "detail": detail}},
    )


class _Body(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SessionCreate(_Body):
    model_ref: str


class JudgmentEntry(_Body):
    row: str
    col: str
    value: Union[float, int, str, None] = None


class MatrixPut(_Body):
    expected_revision: int
    items: Union[list[str], None] = None
    judgments: list[JudgmentEntry] = []


class DimsBody(_Body):
    approach: int
    deployment: int
    results: int


class ScoreEntry(_Body):
    practice_id: str
    dims: Union[DimsBody, None] = None


class ScoresPut(_Body):
    expected_revision: int
    partial: Union[bool, None] = None
    scores: list[ScoreEntry] = []


class WhatIfBody(_Body):
    target_level: int


def _matrix_grid(m: SessionMatrix) -> list[list[str]]:
    grid = [["" for _ in range(m.n)] for _ in range(m.n)]
    for i in range(m.n):
        grid[i][i] = "1"
    for (i, j), v in m.judgments.items():
        grid[i][j] = format_judgment(v)
        grid[j][i] = format_judgment(1.0 / v)
    return grid


def _matrix_doc(m: SessionMatrix) -> dict:
    return {
        "items": list(m.items),
        "judgments": [
            {"row": m.items[i], "col": m.items[j], "value": v}
            for (i, j), v in sorted(m.judgments.items())
        ],
        "missing_pairs": m.missing_pairs(),
        "grid": _matrix_grid(m),
    }


def _session_doc(s: Session) -> dict:
    return {
        "id": s.id,
        "model_ref": s.model_ref,
        "revision": s.revision,
        "created_at": s.created_at,
        "updated_at": s.updated_at,
        "partial": s.partial,
        "matrices": {mid: _matrix_doc(m) for mid, m in sorted(s.matrices.items())},
        "scores": {
            pid: {"approach": d.approach, "deployment": d.deployment, "results": d.results}
            for pid, d in sorted(s.scores.items())
        },
    }


def _model_summary(name: str, registry: ModelRegistry) -> dict:
    m = registry.get(name)
    return {
        "name": m.name,
        "version": m.version,
        "ref": m.ref,
        "levels": len(m.levels),
        "factors": m.factor_count(),
        "practices": m.practice_count(),
    }


def _parse_method(value: str) -> WeightMethod:
    if value == "colnorm":
        return WeightMethod.COLUMN_NORM
    if value == "eigen":
        return WeightMethod.EIGENVECTOR
    raise SchemaError(f"method must be 'colnorm' or 'eigen', got {value!r}", "method")


def create_app(
    data_dir: str | os.PathLike | None = None,
    registry: ModelRegistry | None = None,
) -> FastAPI:
    registry = registry or default_registry()
    store = SessionStore(resolve_data_dir(data_dir), registry)
    app = FastAPI(title="mmk", version=__version__, docs_url=None, redoc_url=None)

    @app.exception_handler(MmkError)
    async def mmk_error_handler(request: Request, exc: MmkError) -> JSONResponse:
        return _error_response(exc)

    @app.exception_handler(RequestValidationError)
    async def body_error_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "validation",
                    "message": "request body or parameters failed validation",
                    "detail": jsonable_encoder(exc.errors(), exclude={"input", "url"}),
                }
            },
        )

    @app.exception_handler(Exception)
    async def internal_error_handler(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=500,
            content={"error": {"code": "internal", "message": "internal server error", "detail": None}},
        )

    @app.get("/api/v1/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/api/v1/models")
    def list_models() -> dict:
        return {"models": [_model_summary(ref, registry) for ref in registry.refs()]}

    @app.get("/api/v1/models/{name}")
    def get_model(name: str) -> dict:
        m = registry.get(name)
        return {"ref": m.ref, **serialize_model(m)}

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(body: SessionCreate) -> dict:
        return _session_doc(store.create_session(body.model_ref))

    @app.get("/api/v1/sessions")
    def list_sessions() -> dict:
        return {
            "sessions": [
                {
                    "id": s.id,
                    "model_ref": s.model_ref,
                    "revision": s.revision,
                    "created_at": s.created_at,
                    "updated_at": s.updated_at,
                }
                for s in store.list_sessions()
            ]
        }

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _session_doc(store.load_session(session_id))

    @app.put("/api/v1/sessions/{session_id}/matrices/{matrix_id}")
    def put_matrix(session_id: str, matrix_id: str, body: MatrixPut) -> dict:
        mutation = MatrixMutation(
            matrix_id=matrix_id,
            items=body.items,
            entries=[(e.row, e.col, e.value) for e in body.judgments],
        )
        return _session_doc(store.update_session(session_id, body.expected_revision, mutation))

    @app.get("/api/v1/sessions/{session_id}/matrices/{matrix_id}/consistency")
    def get_consistency(
        session_id: str, matrix_id: str, method: str = Query(default="colnorm")
    ) -> dict:
        chosen = _parse_method(method)
        session = store.load_session(session_id)
        if matrix_id not in session.matrices:
            raise NotFoundError(f"session {session_id} has no matrix {matrix_id!r}")
        matrix = session.matrices[matrix_id].to_pairwise()
        report = consistency_report(matrix, chosen)
        weights = priority_weights(matrix, chosen)
        hint = None
        if not report.consistent:
            h = inconsistency_hint(matrix, weights)
            hint = {
                "row_item": h.row_item,
                "col_item": h.col_item,
                "current": h.current,
                "suggested": h.suggested,
                "deviation": h.deviation,
            }
        return {
            "matrix_id": matrix_id,
            "method": method,
            "lambda_max": report.lambda_max,
            "ci": report.ci,
            "ri": report.ri,
            "cr": report.cr,
            "consistent": report.consistent,
            "weights": {
                "items": list(weights.items),
                "weights": list(weights.weights),
                "ranks": rank_weights(weights),
            },
            "hint": hint,
        }

    @app.put("/api/v1/sessions/{session_id}/scores")
    def put_scores(session_id: str, body: ScoresPut) -> dict:
        entries: dict[str, DimensionScores | None] = {}
        for entry in body.scores:
            if entry.practice_id in entries:
                raise SchemaError(f"duplicate scores for practice {entry.practice_id!r}", "scores")
            entries[entry.practice_id] = (
                None
                if entry.dims is None
                else DimensionScores(entry.dims.approach, entry.dims.deployment, entry.dims.results)
            )
        mutation = ScoresMutation(entries=entries, partial=body.partial)
        return _session_doc(store.update_session(session_id, body.expected_revision, mutation))

    @app.get("/api/v1/sessions/{session_id}/report")
    def get_report(session_id: str) -> dict:
        session = store.load_session(session_id)
        model = registry.get(session.model_ref)
        report = assess_maturity(model, session.scores, partial=session.partial)
        return {"revision": session.revision, **report_to_dict(report)}

    @app.post("/api/v1/sessions/{session_id}/whatif")
    def post_whatif(session_id: str, body: WhatIfBody) -> dict:
        session = store.load_session(session_id)
        model = registry.get(session.model_ref)
        report = assess_maturity(model, session.scores, partial=session.partial)
        plan = whatif_plan(report, body.target_level)
        return {"revision": session.revision, **plan_to_dict(plan)}

    return app
