"""HTTP facade over the workbench: datasets, rendering, training sessions.

State lives as JSON files under a data directory (write-to-temp then atomic
rename, so a crash never leaves a torn session file).  Rendering endpoints
are deterministic: equal requests return byte-identical WAV/SVG bodies.
"""

from __future__ import annotations

import math
import os
import secrets
import tempfile
import threading
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field
from starlette.exceptions import HTTPException as StarletteHTTPException

from .errors import SonoworkError
from .ingest import Table, parse_table
from .pipeline import sonified_series, transformed_series
from .synth import SonifyConfig, render_plot, write_wav
from .training import (
    Begin,
    FeedbackDone,
    Key,
    KeyPress,
    Modality,
    Phase,
    PresentationDone,
    Replay,
    ResponseRecord,
    SessionState,
    SkipIntro,
    advance,
    generate_block,
    score_session,
)
from .transform import TransformSpec

DEFAULT_DATA_DIR = "sonowork-data"

_PARSE_ERROR_CODES = {
    "parse_error", "empty_input", "ragged_rows", "non_numeric_cell",
    "negative_weight", "bad_event_columns",
}
_CONFLICT_CODES = {"illegal_event", "skip_disabled", "replay_disabled", "not_completed"}


class ApiError(Exception):
    """Service-level error with an explicit HTTP status and structured body."""

    def __init__(self, status: int, code: str, message: str, detail: dict | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail or {}


def _status_for(exc: SonoworkError) -> int:
    if exc.code in _PARSE_ERROR_CODES:
        return 400
    if exc.code in _CONFLICT_CODES:
        return 409
    return 422


def _json_safe(value):
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _new_id() -> str:
    return secrets.token_hex(6)


class Store:
    """Append-only JSON file store with atomic writes."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.datasets_dir = self.root / "datasets"
        self.sessions_dir = self.root / "sessions"
        self.datasets_dir.mkdir(parents=True, exist_ok=True)
        self.sessions_dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def _write_atomic(path: Path, payload: dict) -> None:
        import json

        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.stem, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @staticmethod
    def _read(path: Path) -> dict | None:
        import json

        if not path.exists():
            return None
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)

    def save_dataset(self, payload: dict) -> None:
        self._write_atomic(self.datasets_dir / f"{payload['id']}.json", payload)

    def load_dataset(self, dataset_id: str) -> dict | None:
        return self._read(self.datasets_dir / f"{dataset_id}.json")

    def list_datasets(self) -> list[dict]:
        out = []
        for path in sorted(self.datasets_dir.glob("*.json")):
            payload = self._read(path)
            if payload is not None:
                out.append(payload)
        return out

    def save_session(self, payload: dict) -> None:
        self._write_atomic(self.sessions_dir / f"{payload['id']}.json", payload)

    def load_session(self, session_id: str) -> dict | None:
        return self._read(self.sessions_dir / f"{session_id}.json")


def _table_to_payload(table: Table) -> dict:
    return {
        "row_count": table.row_count,
        "columns": [
            {"name": name, "values": [None if math.isnan(v) else float(v) for v in values]}
            for name, values in table.columns
        ],
    }


def _table_from_payload(payload: dict) -> Table:
    columns = [
        (col["name"], [math.nan if v is None else float(v) for v in col["values"]])
        for col in payload["columns"]
    ]
    return Table(columns, payload["row_count"])


class SessionManager:
    """Holds live session states; stimuli rebuild deterministically from the seed."""

    def __init__(self, store: Store):
        self._store = store
        self._states: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    @staticmethod
    def _build_state(meta: dict) -> SessionState:
        config = SonifyConfig.from_json(meta["config"])
        stimuli = generate_block(
            meta["block"], meta["per_class_count"], meta["seed"], config,
            Modality(meta["modality"]),
        )
        responses = tuple(
            ResponseRecord(
                stimulus_id=r["stimulus_id"],
                key=Key(r["key"]),
                correct=r["correct"],
                latency_ms=r["latency_ms"],
            )
            for r in meta["responses"]
        )
        return SessionState(
            stimuli=tuple(stimuli),
            cursor=meta["cursor"],
            phase=Phase(meta["phase"]),
            responses=responses,
            allow_skip_intro=meta["allow_skip_intro"],
            allow_replay=meta["allow_replay"],
        )

    def create(
        self,
        block: int,
        per_class_count: int,
        seed: int,
        modality: Modality,
        config: SonifyConfig,
        allow_skip_intro: bool,
        allow_replay: bool,
    ) -> tuple[dict, SessionState]:
        stimuli = generate_block(block, per_class_count, seed, config, modality)
        state = SessionState(
            stimuli=tuple(stimuli),
            allow_skip_intro=allow_skip_intro,
            allow_replay=allow_replay,
        )
        meta = {
            "id": _new_id(),
            "created_at": _now(),
            "block": block,
            "per_class_count": per_class_count,
            "seed": seed,
            "modality": modality.value,
            "config": config.to_json(),
            "allow_skip_intro": allow_skip_intro,
            "allow_replay": allow_replay,
            "cursor": state.cursor,
            "phase": state.phase.value,
            "responses": [],
        }
        self._store.save_session(meta)
        self._states[meta["id"]] = state
        return meta, state

    def get(self, session_id: str) -> tuple[dict, SessionState]:
        meta = self._store.load_session(session_id)
        if meta is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        state = self._states.get(session_id)
        if state is None:
            state = self._build_state(meta)
            self._states[session_id] = state
        return meta, state

    def apply(self, session_id: str, event) -> tuple[dict, SessionState]:
        with self._lock_for(session_id):
            meta, state = self.get(session_id)
            new_state = advance(state, event)
            meta["cursor"] = new_state.cursor
            meta["phase"] = new_state.phase.value
            meta["responses"] = [r.to_json() for r in new_state.responses]
            self._store.save_session(meta)
            self._states[session_id] = new_state
            return meta, new_state


def _state_json(state: SessionState) -> dict:
    return {
        "stimuli": [
            {"id": s.id, "class": s.stimulus_class.value, "modality": s.modality.value}
            for s in state.stimuli
        ],
        "cursor": state.cursor,
        "phase": state.phase.value,
        "responses": [r.to_json() for r in state.responses],
        "allow_skip_intro": state.allow_skip_intro,
        "allow_replay": state.allow_replay,
        "total": state.total,
    }


class RenderRequest(BaseModel):
    dataset_id: str
    y_col: str
    x_col: str | None = None
    transform: list = Field(default_factory=list)
    config: dict = Field(default_factory=dict)


class PlotRequest(RenderRequest):
    width: int = 800
    height: int = 400


class CreateSessionRequest(BaseModel):
    block: int = 1
    per_class_count: int = 3
    seed: int = 0
    modality: str = "audio_visual"
    allow_skip_intro: bool = True
    allow_replay: bool = True
    config: dict = Field(default_factory=dict)


class SessionEventRequest(BaseModel):
    type: str
    key: str | None = None
    latency_ms: float = 0.0


_EVENT_TYPES = ("begin", "skip_intro", "presentation_done", "key_press", "replay", "feedback_done")


def _parse_session_event(body: SessionEventRequest):
    if body.type == "begin":
        return Begin()
    if body.type == "skip_intro":
        return SkipIntro()
    if body.type == "presentation_done":
        return PresentationDone()
    if body.type == "replay":
        return Replay()
    if body.type == "feedback_done":
        return FeedbackDone()
    if body.type == "key_press":
        if body.key is None:
            raise ApiError(422, "invalid_event", "key_press needs a 'key'")
        try:
            key = Key(body.key)
        except ValueError:
            raise ApiError(422, "invalid_event", f"unknown key {body.key!r}") from None
        if body.latency_ms < 0:
            raise ApiError(422, "invalid_event", "latency_ms must be >= 0")
        return KeyPress(key=key, latency_ms=body.latency_ms)
    raise ApiError(422, "invalid_event", f"unknown event type {body.type!r}; expected one of {_EVENT_TYPES}")


def create_app(data_dir: str | Path | None = None, webui_dir: str | Path | None = None) -> FastAPI:
    data_dir = Path(data_dir or os.environ.get("SONOWORK_DATA_DIR", DEFAULT_DATA_DIR))
    store = Store(data_dir)
    sessions = SessionManager(store)

    app = FastAPI(title="sonowork", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def api_error_handler(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "detail": _json_safe(exc.detail)},
        )

    @app.exception_handler(SonoworkError)
    async def domain_error_handler(_request: Request, exc: SonoworkError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc), "detail": _json_safe(exc.detail)},
        )

    # keep every error response in the same {code, message, detail} shape
    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={
                "code": "invalid_request",
                "message": "request body failed validation",
                "detail": {"errors": _json_safe(exc.errors())},
            },
        )

    @app.exception_handler(StarletteHTTPException)
    async def http_error_handler(_request: Request, exc: StarletteHTTPException):
        return JSONResponse(
            status_code=exc.status_code,
            content={"code": "http_error", "message": str(exc.detail), "detail": {}},
        )

    def _load_table(dataset_id: str) -> tuple[dict, Table]:
        payload = store.load_dataset(dataset_id)
        if payload is None:
            raise ApiError(404, "unknown_dataset", f"no dataset {dataset_id!r}")
        return payload, _table_from_payload(payload)

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/datasets", status_code=201)
    async def upload_dataset(
        request: Request,
        name: str = Query(default="dataset"),
        delimiter: str = Query(default="auto"),
        has_header: str = Query(default="auto"),
        decimal_comma: bool = Query(default=False),
    ):
        body = await request.body()
        header_opt: bool | str = has_header
        if has_header in ("true", "false"):
            header_opt = has_header == "true"
        table = parse_table(body, delimiter=delimiter, has_header=header_opt, decimal_comma=decimal_comma)
        payload = {
            "id": _new_id(),
            "name": name,
            "created_at": _now(),
            **_table_to_payload(table),
        }
        store.save_dataset(payload)
        return {
            "id": payload["id"],
            "name": name,
            "columns": table.names,
            "row_count": table.row_count,
        }

    @app.get("/api/datasets")
    def list_datasets():
        return [
            {
                "id": p["id"],
                "name": p["name"],
                "columns": [c["name"] for c in p["columns"]],
                "row_count": p["row_count"],
                "created_at": p["created_at"],
            }
            for p in store.list_datasets()
        ]

    @app.get("/api/datasets/{dataset_id}")
    def get_dataset(dataset_id: str):
        payload, table = _load_table(dataset_id)
        return {
            "id": payload["id"],
            "name": payload["name"],
            "created_at": payload["created_at"],
            "row_count": payload["row_count"],
            "columns": payload["columns"],
        }

    @app.post("/api/sonify")
    def sonify(body: RenderRequest):
        _, table = _load_table(body.dataset_id)
        spec = TransformSpec.from_json(body.transform)
        config = SonifyConfig.from_json(body.config)
        _, audio = sonified_series(table, body.x_col, body.y_col, spec, config)
        return Response(content=write_wav(audio), media_type="audio/wav")

    @app.post("/api/plot")
    def plot(body: PlotRequest):
        _, table = _load_table(body.dataset_id)
        spec = TransformSpec.from_json(body.transform)
        series = transformed_series(table, body.x_col, body.y_col, spec)
        return Response(content=render_plot(series, body.width, body.height), media_type="image/svg+xml")

    @app.post("/api/training/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        if body.per_class_count < 1:
            raise ApiError(422, "invalid_session", "per_class_count must be >= 1")
        try:
            modality = Modality(body.modality)
        except ValueError:
            raise ApiError(422, "invalid_session", f"unknown modality {body.modality!r}") from None
        config = SonifyConfig.from_json(body.config)
        meta, state = sessions.create(
            body.block, body.per_class_count, body.seed, modality, config,
            body.allow_skip_intro, body.allow_replay,
        )
        return {"id": meta["id"], "state": _state_json(state)}

    @app.get("/api/training/sessions/{session_id}")
    def get_session(session_id: str):
        _, state = sessions.get(session_id)
        return {"id": session_id, "state": _state_json(state)}

    @app.post("/api/training/sessions/{session_id}/events")
    def post_session_event(session_id: str, body: SessionEventRequest):
        event = _parse_session_event(body)
        _, state = sessions.apply(session_id, event)
        return {"id": session_id, "state": _state_json(state)}

    @app.get("/api/training/sessions/{session_id}/stimulus")
    def get_stimulus(session_id: str, format: str = Query(default="wav")):
        _, state = sessions.get(session_id)
        if state.phase == Phase.COMPLETED:
            raise ApiError(409, "session_completed", "session is completed; no current stimulus")
        stimulus = state.current
        if format == "svg":
            return Response(content=render_plot(stimulus.series), media_type="image/svg+xml")
        if format == "wav":
            return Response(content=write_wav(stimulus.audio), media_type="audio/wav")
        raise ApiError(422, "invalid_format", f"unknown format {format!r}; expected 'wav' or 'svg'")

    @app.get("/api/training/sessions/{session_id}/report")
    def get_report(session_id: str):
        _, state = sessions.get(session_id)
        return score_session(state).to_json()

    webui = Path(webui_dir or os.environ.get("SONOWORK_WEBUI_DIR", "frontend/dist"))
    if webui.is_dir():
        app.mount("/", StaticFiles(directory=str(webui), html=True), name="webui")

    return app


def main(argv: list[str] | None = None) -> None:
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(prog="sonowork-serve", description="Run the sonowork HTTP service.")
    parser.add_argument("--port", type=int, default=int(os.environ.get("SONOWORK_PORT", "8000")))
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--data-dir", default=os.environ.get("SONOWORK_DATA_DIR", DEFAULT_DATA_DIR))
    parser.add_argument("--webui-dir", default=None)
    args = parser.parse_args(argv)
    uvicorn.run(create_app(args.data_dir, args.webui_dir), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
