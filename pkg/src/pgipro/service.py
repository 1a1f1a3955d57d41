"""Session-oriented HTTP facade over the steering engine.

Graphs are uploaded once and shared read-only; each session serializes its own
mutations behind a lock. Errors use a uniform {code, message} JSON shape.
"""
from __future__ import annotations

import hashlib
import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Any, Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import (
    NoPendingCandidate,
    OracleTimeLimit,
    ParseError,
    PgIproError,
    Unreachable,
)
from .mograph import MultiObjectiveGraph, Path, Vec, load_graph, serialize_graph
from .session import (
    Session,
    SteerRequest,
    close_session,
    record_comparison,
    start_session,
    steer,
    transcript_events,
)


@dataclass(frozen=True)
class ServiceConfig:
    session_ttl_seconds: float = 3600.0
    max_sessions: int = 1000
    oracle_budget_seconds: float | None = 30.0
    transcript_log: FsPath | None = None

    @classmethod
    def from_env(cls) -> "ServiceConfig":
        import os

        def get(name: str, default, cast):
            raw = os.environ.get(name)
            return default if raw is None or raw == "" else cast(raw)

        return cls(
            session_ttl_seconds=get("PGIPRO_SESSION_TTL", 3600.0, float),
            max_sessions=get("PGIPRO_MAX_SESSIONS", 1000, int),
            oracle_budget_seconds=get("PGIPRO_ORACLE_BUDGET", 30.0, float),
            transcript_log=get("PGIPRO_TRANSCRIPT_LOG", None, FsPath),
        )


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


@dataclass
class _SessionEntry:
    session: Session
    graph_id: str
    source: str
    target: str
    created: float
    last_access: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class _Store:
    def __init__(self, config: ServiceConfig) -> None:
        self.config = config
        self.graphs: dict[str, MultiObjectiveGraph] = {}
        self.sessions: dict[str, _SessionEntry] = {}
        self.lock = threading.Lock()

    def sweep(self) -> None:
        deadline = time.time() - self.config.session_ttl_seconds
        with self.lock:
            stale = [sid for sid, e in self.sessions.items() if e.last_access < deadline]
            for sid in stale:
                del self.sessions[sid]

    def add_graph(self, graph: MultiObjectiveGraph, graph_id: str | None = None) -> str:
        digest = hashlib.sha256(
            json.dumps(serialize_graph(graph), sort_keys=True).encode()
        ).hexdigest()[:12]
        gid = graph_id or digest
        with self.lock:
            self.graphs[gid] = graph
        return gid

    def graph(self, graph_id: str) -> MultiObjectiveGraph:
        with self.lock:
            graph = self.graphs.get(graph_id)
        if graph is None:
            raise ApiError(404, "unknown_graph", f"no graph with id {graph_id!r}")
        return graph

    def add_session(self, entry: _SessionEntry) -> str:
        self.sweep()
        sid = uuid.uuid4().hex
        with self.lock:
            if len(self.sessions) >= self.config.max_sessions:
                raise ApiError(503, "capacity", "session capacity reached, retry later")
            self.sessions[sid] = entry
        return sid

    def entry(self, session_id: str) -> _SessionEntry:
        self.sweep()
        with self.lock:
            entry = self.sessions.get(session_id)
        if entry is None:
            raise ApiError(404, "unknown_session", f"no session with id {session_id!r}")
        entry.last_access = time.time()
        return entry


class CreateSessionBody(BaseModel):
    graph_id: str
    source: str
    target: str
    heuristic: Literal["closest", "middle"] = "middle"
    guidance: Literal["manhattan", "chebyshev"] = "chebyshev"


class SteerBody(BaseModel):
    objective: int = Field(ge=0)
    direction: Literal["improve", "relax"] = "improve"


class ChooseBody(BaseModel):
    preferred: Literal["candidate", "incumbent"]


def _route_view(
    graph: MultiObjectiveGraph | None,
    session: Session,
    entry: tuple[Vec, Path],
    reference: tuple[Vec, Path] | None = None,
) -> dict[str, Any]:
    value, path = entry
    polyline = None
    if graph is not None:
        coords = [graph.nodes[n].coordinate for n in path.nodes if graph.has_node(n)]
        if len(coords) == len(path.nodes) and all(c is not None for c in coords):
            polyline = [[lon, lat] for lon, lat in coords]  # type: ignore[misc]
    view: dict[str, Any] = {
        "value": list(value),
        "objectives": [
            {"name": name, "unit": unit} for name, unit in session.objective_meta
        ],
        "nodes": list(path.nodes),
        "polyline": polyline,
    }
    if reference is not None:
        view["deltas"] = [v - r for v, r in zip(value, reference[0])]
    return view


def _session_payload(
    store: _Store, session_id: str, entry: _SessionEntry, include_transcript: bool = False
) -> dict[str, Any]:
    session = entry.session
    graph = store.graphs.get(entry.graph_id)
    payload: dict[str, Any] = {
        "session_id": session_id,
        "status": session.status,
        "pending_comparison": session.pending,
        "incumbent": _route_view(graph, session, session.best),
        "best": _route_view(graph, session, session.best),
        "objectives": [
            {"name": name, "unit": unit} for name, unit in session.objective_meta
        ],
    }
    if session.pending:
        payload["candidate"] = _route_view(graph, session, session.current, session.best)
    if include_transcript:
        payload["transcript"] = transcript_events(session)
    return payload


def _persist_transcript(config: ServiceConfig, session_id: str, entry: _SessionEntry) -> None:
    if config.transcript_log is None:
        return
    record = {
        "session_id": session_id,
        "graph_id": entry.graph_id,
        "source": entry.source,
        "target": entry.target,
        "closed_at": time.time(),
        "events": transcript_events(entry.session),
    }
    with open(config.transcript_log, "a", encoding="utf-8") as handle:
        handle.write(json.dumps(record) + "\n")


def register_graph(
    app: FastAPI, graph: MultiObjectiveGraph, graph_id: str | None = None
) -> str:
    """Install a graph directly (used to preload the bundled instance)."""
    store: _Store = app.state.store
    return store.add_graph(graph, graph_id)


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="pgipro", version="0.1.0")
    store = _Store(config)
    app.state.store = store
    app.state.config = config

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return JSONResponse(
            status_code=422, content={"code": "invalid_request", "message": str(exc)}
        )

    @app.get("/")
    def root() -> dict[str, Any]:
        return {
            "service": "pgipro",
            "graphs": sorted(store.graphs),
            "endpoints": [
                "POST /graphs",
                "GET /graphs/{id}",
                "POST /sessions",
                "POST /sessions/{id}/steer",
                "POST /sessions/{id}/choose",
                "POST /sessions/{id}/close",
                "GET /sessions/{id}",
            ],
        }

    @app.post("/graphs", status_code=201)
    async def upload_graph(request: Request) -> dict[str, Any]:
        try:
            document = await request.json()
        except Exception as exc:
            raise ApiError(422, "invalid_json", f"body is not valid JSON: {exc}")
        try:
            graph = load_graph(document)
        except PgIproError as exc:
            raise ApiError(422, "invalid_graph", str(exc))
        gid = store.add_graph(graph)
        return {
            "graph_id": gid,
            "m": graph.m,
            "objectives": [
                {"name": name, "unit": unit} for name, unit in graph.objective_meta
            ],
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
        }

    @app.get("/graphs/{graph_id}")
    def get_graph(graph_id: str) -> dict[str, Any]:
        return serialize_graph(store.graph(graph_id))

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody) -> dict[str, Any]:
        graph = store.graph(body.graph_id)
        if not graph.has_node(body.source) or not graph.has_node(body.target):
            raise ApiError(404, "unknown_node", "source or target is not in the graph")
        try:
            session = start_session(
                graph,
                body.source,
                body.target,
                body.heuristic,
                body.guidance,
                oracle_deadline=config.oracle_budget_seconds,
            )
        except Unreachable as exc:
            raise ApiError(422, "unreachable", str(exc))
        except OracleTimeLimit as exc:
            raise ApiError(503, "oracle_timeout", f"{exc}; retry with a simpler pair")
        entry = _SessionEntry(
            session=session,
            graph_id=body.graph_id,
            source=body.source,
            target=body.target,
            created=time.time(),
            last_access=time.time(),
        )
        sid = store.add_session(entry)
        return _session_payload(store, sid, entry)

    @app.post("/sessions/{session_id}/steer")
    def steer_session(session_id: str, body: SteerBody) -> dict[str, Any]:
        entry = store.entry(session_id)
        with entry.lock:
            session = entry.session
            if session.status == "closed":
                raise ApiError(409, "session_closed", "session is closed")
            if session.status == "exhausted":
                graph = store.graphs.get(entry.graph_id)
                return {
                    "session_id": session_id,
                    "status": "exhausted",
                    "best": _route_view(graph, session, session.best),
                }
            if session.pending:
                raise ApiError(
                    409, "pending_comparison", "answer the pending comparison first"
                )
            if body.objective >= session.m:
                raise ApiError(
                    422,
                    "invalid_objective",
                    f"objective must be below {session.m}",
                )
            try:
                outcome = steer(session, SteerRequest(body.objective, body.direction))
            except OracleTimeLimit as exc:
                raise ApiError(503, "oracle_timeout", f"{exc}; retry later")
            graph = store.graphs.get(entry.graph_id)
            if outcome.status == "exhausted":
                return {
                    "session_id": session_id,
                    "status": "exhausted",
                    "best": _route_view(graph, session, session.best),
                }
            assert outcome.candidate is not None
            return {
                "session_id": session_id,
                "status": "candidate",
                "candidate": _route_view(graph, session, outcome.candidate, session.best),
                "incumbent": _route_view(graph, session, session.best),
                "oracle_seconds": outcome.oracle_seconds,
            }

    @app.post("/sessions/{session_id}/choose")
    def choose(session_id: str, body: ChooseBody) -> dict[str, Any]:
        entry = store.entry(session_id)
        with entry.lock:
            session = entry.session
            try:
                record_comparison(
                    session, "current" if body.preferred == "candidate" else "best"
                )
            except NoPendingCandidate as exc:
                raise ApiError(409, "no_pending_comparison", str(exc))
            graph = store.graphs.get(entry.graph_id)
            return {
                "session_id": session_id,
                "status": session.status,
                "best": _route_view(graph, session, session.best),
            }

    @app.post("/sessions/{session_id}/close")
    def close(session_id: str) -> dict[str, Any]:
        entry = store.entry(session_id)
        with entry.lock:
            session = entry.session
            already_closed = session.status == "closed"
            value, path = close_session(session)
            graph = store.graphs.get(entry.graph_id)
            if not already_closed:
                _persist_transcript(config, session_id, entry)
            return {
                "session_id": session_id,
                "status": session.status,
                "best": _route_view(graph, session, (value, path)),
            }

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict[str, Any]:
        entry = store.entry(session_id)
        with entry.lock:
            return _session_payload(store, session_id, entry, include_transcript=True)

    _mount_ui(app)
    return app


def _mount_ui(app: FastAPI) -> None:
    dist = FsPath(__file__).resolve().parents[2] / "frontend" / "dist"
    if dist.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(dist), html=True), name="ui")


app = create_app(ServiceConfig.from_env())
