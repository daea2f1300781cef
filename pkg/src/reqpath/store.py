"""File-backed session persistence.

Layout under the data directory:

    sessions/<id>/log.json    -- the append-only operation log
    sessions/<id>/state.json  -- materialized snapshot of the session

The log is the source of truth. Loading replays it through the workflow
engine and cross-checks the result against the snapshot; any divergence
(truncation, hand edits, a mixed-up pair of files) is reported as corruption
rather than silently trusted.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import StoreError
from .kb.model import KnowledgeBase
from .kb.seed import seed_kb
from .workflow.engine import replay
from .workflow.model import WorkflowSession


def session_dir(data_dir: str | Path, session_id: str) -> Path:
    return Path(data_dir) / "sessions" / session_id


def _write_atomic(path: Path, payload: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    os.replace(tmp, path)


def save_session(session: WorkflowSession, data_dir: str | Path) -> Path:
    """Write both files. The snapshot always matches the log just written."""
    directory = session_dir(data_dir, session.id)
    directory.mkdir(parents=True, exist_ok=True)
    _write_atomic(directory / "log.json", {"session_id": session.id, "events": session.events})
    _write_atomic(directory / "state.json", session.to_dict())
    return directory


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise StoreError("not_found", f"no session data at {path}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StoreError("corrupt_session", f"{path.name} is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise StoreError("corrupt_session", f"{path.name} must contain a JSON object")
    return doc


def load_session(
    session_id: str, data_dir: str | Path, kb: KnowledgeBase | None = None
) -> WorkflowSession:
    """Replay a stored session and verify it against its snapshot."""
    kb = kb or seed_kb()
    directory = session_dir(data_dir, session_id)
    if not directory.exists():
        raise StoreError("not_found", f"no session '{session_id}' under {data_dir}", session=session_id)
    log = _read_json(directory / "log.json")
    state = _read_json(directory / "state.json")
    events = log.get("events")
    if not isinstance(events, list):
        raise StoreError("corrupt_session", "log.json has no event list")
    session = replay(kb, events)
    if session.to_dict() != state:
        raise StoreError(
            "corrupt_session",
            f"snapshot for session '{session_id}' does not match its replayed log",
            session=session_id,
        )
    return session


def list_sessions(data_dir: str | Path) -> list[str]:
    root = Path(data_dir) / "sessions"
    if not root.exists():
        return []
    return sorted(p.name for p in root.iterdir() if p.is_dir())
