"""HTTP front door.

A thin, stateless-by-design service: the knowledge base is loaded once at
startup (a bad catalog refuses to start), sessions live on disk under the
data directory, and every mutation is written through before the response is
sent, so the CLI and the service can share a data directory.

Error contract: every error body is ``{"code", "message", "details"}``.
Unknown ids map to 404, phase/gating violations and stale versions to 409,
read-only rejections to 403, and everything else domain-shaped to 422.

Concurrency: writes are serialized per session with a lock, and mutations may
carry ``expected_version`` (rejected with 409 when stale) and ``request_id``
(retries replay the recorded response instead of re-applying).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import payloads
from .errors import (
    DomainError,
    KBParseError,
    KBValidationError,
    PhaseError,
    ReqPathError,
    StoreError,
    UnknownIdError,
)
from .kb.loader import load_kb_path
from .kb.model import KnowledgeBase, query_activity
from .kb.seed import seed_kb
from .report import export_report, render_markdown
from .selection import SelectionRequest, classify_scenario, filter_methods, minimize_distinct
from .store import load_session, save_session
from .workflow import engine
from .workflow.model import WorkflowSession


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8077
    kb_path: str | None = None  # None -> packaged seed
    data_dir: str = "./reqpath_data"
    read_only: bool = False


def _status_for(exc: ReqPathError) -> int:
    if exc.code == "read_only":
        return 403  # authorization-shaped, not validation-shaped
    if isinstance(exc, UnknownIdError):
        return 404
    if isinstance(exc, PhaseError):
        return 409
    if isinstance(exc, StoreError):
        return 404 if exc.code == "not_found" else 500
    return 422  # DomainError, KB errors, anything else domain-shaped


class _SessionBox:
    """Serialized access to one session: cache, lock, and replayed responses."""

    def __init__(self) -> None:
        self.lock = threading.Lock()
        self.session: WorkflowSession | None = None
        self.responses: dict[str, tuple[int, dict]] = {}


@dataclass
class _State:
    kb: KnowledgeBase
    config: ServiceConfig
    boxes: dict[str, _SessionBox] = field(default_factory=dict)
    boxes_lock: threading.Lock = field(default_factory=threading.Lock)
    create_responses: dict[str, tuple[int, dict]] = field(default_factory=dict)

    def box(self, session_id: str) -> _SessionBox:
        with self.boxes_lock:
            if session_id not in self.boxes:
                self.boxes[session_id] = _SessionBox()
            return self.boxes[session_id]


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    kb = load_kb_path(config.kb_path) if config.kb_path else seed_kb()
    state = _State(kb=kb, config=config)

    app = FastAPI(title="reqpath", docs_url=None, redoc_url=None)
    app.state.reqpath = state
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ReqPathError)
    async def _domain_error(_request: Request, exc: ReqPathError) -> JSONResponse:
        return JSONResponse(status_code=_status_for(exc), content=exc.to_payload())

    @app.exception_handler(RequestValidationError)
    async def _bad_body(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={
                "code": "invalid_body",
                "message": "request body is not valid JSON of the expected shape",
                "details": {"errors": [str(e.get("msg", "")) for e in exc.errors()]},
            },
        )

    def _guard_writable() -> None:
        if state.config.read_only:
            raise DomainError("read_only", "the service is running in read-only mode")

    def _load(session_id: str) -> WorkflowSession:
        box = state.box(session_id)
        if box.session is None:
            box.session = load_session(session_id, state.config.data_dir, state.kb)
        return box.session

    def _mutate(session_id: str, payload: dict, fn) -> JSONResponse:
        """Run one mutation under the session lock and write it through."""
        _guard_writable()
        request_id = payload.get("request_id")
        expected = payload.get("expected_version")
        box = state.box(session_id)
        with box.lock:
            if request_id is not None and request_id in box.responses:
                status, body = box.responses[request_id]
                return JSONResponse(status_code=status, content=body)
            session = _load(session_id)
            if expected is not None and expected != session.version:
                raise PhaseError(
                    "stale_version",
                    f"expected version {expected}, session is at {session.version}",
                    expected=expected,
                    actual=session.version,
                )
            body = fn(session)
            save_session(session, state.config.data_dir)
            if request_id is not None:
                box.responses[request_id] = (200, body)
            return JSONResponse(status_code=200, content=body)

    # -- knowledge base reads -------------------------------------------------

    @app.get("/kb")
    def kb_summary() -> dict:
        return payloads.kb_summary_payload(state.kb)

    @app.get("/kb/activities")
    def kb_activities() -> list[dict]:
        return [payloads.activity_payload(a) for a in state.kb.activities]

    @app.get("/kb/activities/{activity_id}")
    def kb_activity(activity_id: str) -> dict:
        return payloads.activity_view_payload(query_activity(state.kb, activity_id))

    @app.get("/kb/activities/{activity_id}/scenario")
    def kb_scenario(activity_id: str) -> dict:
        return payloads.scenario_payload(activity_id, classify_scenario(state.kb, activity_id))

    @app.get("/kb/activities/{activity_id}/methods")
    def kb_methods(activity_id: str, criteria: str = "", mode: str = "all") -> dict:
        wanted = [c for c in criteria.split(",") if c] if criteria else []
        methods = filter_methods(state.kb, activity_id, wanted, mode)
        return {
            "activity": activity_id,
            "criteria": wanted,
            "mode": mode,
            "methods": [{"id": m, "name": state.kb.method(m).name} for m in methods],
        }

    # -- selection ------------------------------------------------------------

    def _selection_request(payload: dict) -> SelectionRequest:
        return SelectionRequest(
            activities=tuple(payload.get("activities", ())),
            priority=tuple(payload.get("priority", ())),
            pinned=dict(payload.get("pinned", {})),
            tie_break=payload.get("tie_break", "declaration_order"),
        )

    @app.post("/select/path")
    def select_path(payload: dict = Body(...)) -> dict:
        return payloads.select_path_response(state.kb, _selection_request(payload))

    @app.post("/select/minimize")
    def select_minimize(payload: dict = Body(...)) -> dict:
        result = minimize_distinct(
            state.kb,
            list(payload.get("activities", ())),
            payload.get("criterion", ""),
            payload.get("mode", "auto"),
        )
        return payloads.minimize_payload(result)

    # -- sessions ---------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict = Body(...)) -> JSONResponse:
        _guard_writable()
        request_id = payload.get("request_id")
        if request_id is not None and request_id in state.create_responses:
            status, body = state.create_responses[request_id]
            return JSONResponse(status_code=status, content=body)
        session = engine.create_session(
            state.kb, payload.get("needs", []), session_id=payload.get("id")
        )
        save_session(session, state.config.data_dir)
        state.box(session.id).session = session
        body = payloads.session_payload(session)
        if request_id is not None:
            state.create_responses[request_id] = (201, body)
        return JSONResponse(status_code=201, content=body)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        box = state.box(session_id)
        with box.lock:
            return payloads.session_payload(_load(session_id))

    @app.get("/sessions/{session_id}/checklist")
    def get_checklist(session_id: str) -> dict:
        box = state.box(session_id)
        with box.lock:
            session = _load(session_id)
            return payloads.checklist_payload(session, engine.evaluate_checklist(session))

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str) -> dict:
        box = state.box(session_id)
        with box.lock:
            session = _load(session_id)
            report = export_report(state.kb, session=session)
        return {
            "title": report.title,
            "generated_at": report.generated_at,
            "markdown": render_markdown(report),
        }

    @app.post("/sessions/{session_id}/requirements")
    def post_requirement(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.record_requirement(
                s,
                payload.get("increment", ""),
                payload.get("text", ""),
                payload.get("kind", ""),
                payload.get("parent"),
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/rationale")
    def post_rationale(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.attach_rationale(
                s,
                payload.get("requirement", ""),
                payload.get("rationale"),
                payload.get("needs", []),
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/models")
    def post_model(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        artifact = payload.get("artifact", {})
        return _mutate(
            session_id,
            payload,
            lambda s: engine.attach_model(
                s,
                payload.get("requirements", []),
                str(artifact.get("id", "")),
                str(artifact.get("kind", "")),
                str(artifact.get("uri_or_blob", "")),
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/organize")
    def post_organize(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        kwargs: dict = {}
        if "kind" in payload:
            kwargs["kind"] = payload["kind"]
        if "parent" in payload:
            kwargs["parent"] = payload["parent"]
        if "attributes" in payload:
            kwargs["attributes"] = payload["attributes"]
        return _mutate(
            session_id,
            payload,
            lambda s: engine.organize(s, payload.get("requirement", ""), **kwargs).to_dict(),
        )

    @app.post("/sessions/{session_id}/verification")
    def post_verification(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.mark_verification(
                s,
                payload.get("requirement", ""),
                payload.get("attribute", ""),
                payload.get("status", ""),
                payload.get("note", ""),
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/conflicts")
    def post_conflict(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.raise_conflict(
                s, payload.get("requirements", []), payload.get("description", "")
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/conflicts/{conflict_id}/resolve")
    def post_resolve(session_id: str, conflict_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.resolve_conflict(s, conflict_id, payload.get("resolution", "")).to_dict(),
        )

    @app.post("/sessions/{session_id}/attestation")
    def post_attestation(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.set_attestation(
                s, bool(payload.get("attested", True)), payload.get("note", "")
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/validation")
    def post_validation(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.request_global_validation(
                s, bool(payload.get("requested", True))
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/methods")
    def post_method(session_id: str, payload: dict = Body(...)) -> JSONResponse:
        return _mutate(
            session_id,
            payload,
            lambda s: engine.assign_method(
                s, state.kb, payload.get("activity", ""), payload.get("method", "")
            ).to_dict(),
        )

    @app.post("/sessions/{session_id}/advance")
    def post_advance(session_id: str, payload: dict = Body(default={})) -> JSONResponse:
        return _mutate(
            session_id, payload, lambda s: payloads.session_payload(engine.advance(s, state.kb))
        )

    return app


@dataclass
class ServiceHandle:
    app: FastAPI
    config: ServiceConfig

    def run(self) -> None:
        import uvicorn

        uvicorn.run(self.app, host=self.config.host, port=self.config.port, log_level="info")


def serve(config: ServiceConfig | None = None) -> ServiceHandle:
    """Build the service. Raises before binding if the KB fails to load."""
    config = config or ServiceConfig()
    Path(config.data_dir).mkdir(parents=True, exist_ok=True)
    return ServiceHandle(app=create_app(config), config=config)
