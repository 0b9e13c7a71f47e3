"""Single-session HTTP host for the interactive snapping workflow.

One canvas per process. Reads are free; mutations are serialized by a lock
and follow the apply/keep/undo protocol: apply sets a pending preview, keep
commits it, undo discards it. A second apply while one is pending is a 409.
"""
from __future__ import annotations

import json
import os
import threading
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import Config
from .errors import (
    ConfirmationDenied,
    ContradictoryConfirmation,
    MissingConfirmation,
    NothingPending,
    PendingOperation,
    SemSnapError,
    StalePlan,
    UnknownView,
)
from .model import Canvas
from .operations import (
    CATEGORY_ORDER,
    CanvasHistory,
    apply_operation,
    begin,
    keep,
    plan_operations,
    semantic_position,
    undo,
)
from .relations import find_relations
from .render import render_canvas
from .specio import _report_entries, parse_canvas, serialize_canvas


class ApplyBody(BaseModel):
    confirmations: dict = {}  # "a=b" -> "same" | "different"


class EquivalenceBody(BaseModel):
    a: str
    b: str
    same: bool


class SessionState:
    """Current canvas plus linear history and the committed position trail."""

    def __init__(self, canvas: Canvas, config: Config):
        self.config = config
        self.history = CanvasHistory(committed=(canvas,))
        self.relation_cache = find_relations(canvas)
        self.position_trail = [semantic_position(self.relation_cache,
                                                 config.weights)]
        self.lock = threading.Lock()

    @property
    def canvas(self) -> Canvas:
        return self.history.current

    def recompute(self) -> None:
        self.relation_cache = find_relations(self.canvas)

    def commit_position(self) -> None:
        self.position_trail.append(
            semantic_position(self.relation_cache, self.config.weights))


def _http_error(status: int, error: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": error, "detail": detail})


def _canvas_doc(canvas: Canvas) -> dict:
    return json.loads(serialize_canvas(canvas))


def _position_doc(position) -> dict:
    return {"compactness": position.compactness,
            "consistency": position.consistency}


def _plan_doc(plan) -> dict:
    return {
        "id": plan.id,
        "kind": plan.kind.label,
        "category": plan.category,
        "targetViewIds": list(plan.target_view_ids),
        "sourceViewId": plan.source_view_id,
        "resolvesRelationId": plan.resolves_relation_id,
        "params": dict(plan.params),
        "requiredConfirmations": [list(p)
                                  for p in plan.required_confirmations],
        "description": plan.description,
        "question": plan.question,
    }


def create_app(canvas: Canvas, config: Optional[Config] = None,
               canvas_path: Optional[str] = None,
               static_dir: Optional[str] = None) -> FastAPI:
    config = config or Config()
    state = SessionState(canvas, config)
    app = FastAPI(title="semsnap", version="0.1.0")
    app.state.session = state

    @app.exception_handler(SemSnapError)
    async def _semsnap_error(request: Request, exc: SemSnapError):
        if isinstance(exc, UnknownView):
            return _http_error(404, type(exc).__name__, str(exc))
        if isinstance(exc, (StalePlan, PendingOperation, NothingPending)):
            return _http_error(409, type(exc).__name__, str(exc))
        return _http_error(400, type(exc).__name__, str(exc))

    @app.get("/api/canvas")
    def get_canvas():
        return _canvas_doc(state.canvas)

    @app.put("/api/canvas")
    def put_canvas():
        if canvas_path is None:
            return _http_error(400, "NoBackingFile",
                               "session has no canvas file to save to")
        with state.lock:
            with open(canvas_path, "w", encoding="utf-8") as fh:
                fh.write(serialize_canvas(state.canvas))
        return {"saved": canvas_path}

    @app.get("/api/relations")
    def get_relations():
        return {"entries": _report_entries(state.relation_cache)}

    @app.get("/api/views/{view_id}/operations")
    def get_operations(view_id: str):
        plans = plan_operations(state.canvas, state.relation_cache, view_id,
                                config)
        counts = {c: 0 for c in CATEGORY_ORDER}
        for p in plans:
            counts[p.category] += 1
        return {
            "viewId": view_id,
            "counts": {c: n for c, n in counts.items() if n},
            "plans": [_plan_doc(p) for p in plans],
        }

    @app.post("/api/operations/{plan_id}/apply")
    def post_apply(plan_id: str, body: ApplyBody):
        with state.lock:
            if state.history.pending is not None:
                return _http_error(
                    409, "PendingOperation",
                    "an operation is pending; keep or undo it first")
            plan = None
            for view in state.canvas.views:
                for p in plan_operations(state.canvas, state.relation_cache,
                                         view.id, config):
                    if p.id == plan_id:
                        plan = p
                        break
                if plan:
                    break
            if plan is None:
                return _http_error(404, "UnknownPlan",
                                   f"no plan {plan_id!r} on this canvas")
            answers = {}
            for key, value in body.confirmations.items():
                a, _, b = key.partition("=")
                answers[(a.strip(), b.strip())] = value
            before = state.canvas
            try:
                after = apply_operation(before, plan, answers, config)
            except MissingConfirmation as exc:
                return _http_error(400, "MissingConfirmation", str(exc))
            except ConfirmationDenied as exc:
                # The answer removed the plan; the registry still learned it.
                if exc.canvas is not None:
                    state.history = CanvasHistory(
                        committed=state.history.committed[:-1]
                        + (exc.canvas,))
                    state.recompute()
                return {
                    "applied": False,
                    "detail": str(exc),
                    "canvas": _canvas_doc(state.canvas),
                    "relations": {
                        "entries": _report_entries(state.relation_cache)},
                    "position": _position_doc(semantic_position(
                        state.relation_cache, config.weights)),
                    "pending": False,
                }
            state.history = begin(state.history, before, after, plan)
            state.recompute()
            return {
                "applied": True,
                "canvas": _canvas_doc(after),
                "relations": {
                    "entries": _report_entries(state.relation_cache)},
                "position": _position_doc(semantic_position(
                    state.relation_cache, config.weights)),
                "pending": True,
            }

    @app.post("/api/history/undo")
    def post_undo():
        with state.lock:
            _, state.history = undo(state.history)
            state.recompute()
            return {
                "canvas": _canvas_doc(state.canvas),
                "relations": {
                    "entries": _report_entries(state.relation_cache)},
                "position": _position_doc(semantic_position(
                    state.relation_cache, config.weights)),
                "pending": False,
            }

    @app.post("/api/history/keep")
    def post_keep():
        with state.lock:
            state.history = keep(state.history)
            state.recompute()
            state.commit_position()
            return {
                "canvas": _canvas_doc(state.canvas),
                "relations": {
                    "entries": _report_entries(state.relation_cache)},
                "position": _position_doc(state.position_trail[-1]),
                "pending": False,
            }

    @app.post("/api/equivalences")
    def post_equivalence(body: EquivalenceBody):
        with state.lock:
            try:
                registry = state.canvas.registry.confirm(
                    body.a, body.b, body.same)
            except ContradictoryConfirmation as exc:
                return _http_error(400, "ContradictoryConfirmation",
                                   str(exc))
            updated = state.canvas.with_registry(registry)
            state.history = CanvasHistory(
                committed=state.history.committed[:-1] + (updated,),
                pending=state.history.pending)
            state.recompute()
            return {
                "canvas": _canvas_doc(state.canvas),
                "relations": {
                    "entries": _report_entries(state.relation_cache)},
            }

    @app.get("/api/render")
    def get_render():
        entries = render_canvas(state.canvas)
        return {
            "views": [
                {"spec": spec.to_doc(),
                 "cell": {"row": cell.row, "col": cell.col,
                          "rowSpan": cell.row_span,
                          "colSpan": cell.col_span}}
                for spec, cell in entries],
        }

    @app.get("/api/position")
    def get_position():
        current = semantic_position(state.relation_cache, config.weights)
        return {
            "current": _position_doc(current),
            "trail": [_position_doc(p) for p in state.position_trail],
        }

    if static_dir is None:
        bundled = os.path.join(os.path.dirname(__file__), "..", "..",
                               "frontend", "dist")
        static_dir = bundled if os.path.isdir(bundled) else None
    if static_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")
    return app


def app_from_file(canvas_path: str,
                  config: Optional[Config] = None) -> FastAPI:
    with open(canvas_path, "r", encoding="utf-8") as fh:
        text = fh.read()
    canvas = parse_canvas(text,
                          base_path=os.path.dirname(canvas_path) or ".")
    return create_app(canvas, config=config, canvas_path=canvas_path)
