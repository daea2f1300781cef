"""Log+snapshot persistence and its corruption detection."""

from __future__ import annotations

import json

import pytest

from conftest import T, drive_to_done, fresh_session
from reqpath.errors import StoreError
from reqpath.store import list_sessions, load_session, save_session, session_dir
from reqpath.workflow import engine as wf


def _saved(seed, tmp_path, session_id="s1"):
    session = fresh_session(seed, session_id=session_id)
    wf.record_requirement(session, "core", "a", "functional", at=T)
    wf.attach_rationale(session, "r1", "why", ["n1", "n2"], at=T)
    save_session(session, tmp_path)
    return session


def test_round_trip_restores_a_field_identical_session(seed, tmp_path):
    session = _saved(seed, tmp_path)
    loaded = load_session("s1", tmp_path, kb=seed)
    assert loaded.to_dict() == session.to_dict()
    assert loaded.events == session.events
    assert loaded.version == session.version


def test_round_trip_after_a_full_lifecycle(seed, tmp_path):
    session = drive_to_done(seed, fresh_session(seed, session_id="done1"))
    save_session(session, tmp_path)
    loaded = load_session("done1", tmp_path, kb=seed)
    assert loaded.phase == "done"
    assert loaded.to_dict() == session.to_dict()


def test_layout_is_a_log_and_a_snapshot(seed, tmp_path):
    _saved(seed, tmp_path)
    directory = session_dir(tmp_path, "s1")
    assert (directory / "log.json").is_file()
    assert (directory / "state.json").is_file()
    log = json.loads((directory / "log.json").read_text(encoding="utf-8"))
    assert log["session_id"] == "s1"
    assert log["events"][0]["op"] == "create_session"
    state = json.loads((directory / "state.json").read_text(encoding="utf-8"))
    assert state["id"] == "s1"
    assert "events" not in state


def test_save_overwrites_in_place(seed, tmp_path):
    session = _saved(seed, tmp_path)
    wf.record_requirement(session, "core", "b", "functional", at=T)
    save_session(session, tmp_path)
    loaded = load_session("s1", tmp_path, kb=seed)
    assert [r.id for r in loaded.requirements] == ["r1", "r2"]
    leftovers = [p.name for p in session_dir(tmp_path, "s1").iterdir()]
    assert sorted(leftovers) == ["log.json", "state.json"]


def test_missing_session_is_not_found(seed, tmp_path):
    with pytest.raises(StoreError) as exc:
        load_session("ghost", tmp_path, kb=seed)
    assert exc.value.code == "not_found"


def test_missing_log_file_is_not_found(seed, tmp_path):
    _saved(seed, tmp_path)
    (session_dir(tmp_path, "s1") / "log.json").unlink()
    with pytest.raises(StoreError) as exc:
        load_session("s1", tmp_path, kb=seed)
    assert exc.value.code == "not_found"


def test_unparseable_log_is_corrupt(seed, tmp_path):
    _saved(seed, tmp_path)
    (session_dir(tmp_path, "s1") / "log.json").write_text("{not json", encoding="utf-8")
    with pytest.raises(StoreError) as exc:
        load_session("s1", tmp_path, kb=seed)
    assert exc.value.code == "corrupt_session"


def test_log_without_event_list_is_corrupt(seed, tmp_path):
    _saved(seed, tmp_path)
    path = session_dir(tmp_path, "s1") / "log.json"
    path.write_text(json.dumps({"session_id": "s1", "events": "nope"}), encoding="utf-8")
    with pytest.raises(StoreError) as exc:
        load_session("s1", tmp_path, kb=seed)
    assert exc.value.code == "corrupt_session"


def test_truncated_log_diverges_from_snapshot(seed, tmp_path):
    session = _saved(seed, tmp_path)
    path = session_dir(tmp_path, "s1") / "log.json"
    doc = json.loads(path.read_text(encoding="utf-8"))
    doc["events"] = doc["events"][:-1]  # still replays, but no longer matches
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(StoreError) as exc:
        load_session("s1", tmp_path, kb=seed)
    assert exc.value.code == "corrupt_session"
    assert session.version == 3  # the in-memory session is untouched


def test_hand_edited_snapshot_is_corrupt(seed, tmp_path):
    _saved(seed, tmp_path)
    path = session_dir(tmp_path, "s1") / "state.json"
    doc = json.loads(path.read_text(encoding="utf-8"))
    doc["requirements"][0]["text"] = "edited behind the engine's back"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(StoreError) as exc:
        load_session("s1", tmp_path, kb=seed)
    assert exc.value.code == "corrupt_session"


def test_swapped_session_files_are_corrupt(seed, tmp_path):
    _saved(seed, tmp_path, session_id="s1")
    other = fresh_session(seed, session_id="s2")
    save_session(other, tmp_path)
    # graft s2's snapshot onto s1's log
    snap = (session_dir(tmp_path, "s2") / "state.json").read_text(encoding="utf-8")
    (session_dir(tmp_path, "s1") / "state.json").write_text(snap, encoding="utf-8")
    with pytest.raises(StoreError) as exc:
        load_session("s1", tmp_path, kb=seed)
    assert exc.value.code == "corrupt_session"


def test_list_sessions_sorts_ids_and_tolerates_an_empty_dir(seed, tmp_path):
    assert list_sessions(tmp_path) == []
    _saved(seed, tmp_path, session_id="zeta")
    _saved(seed, tmp_path, session_id="alpha")
    assert list_sessions(tmp_path) == ["alpha", "zeta"]


def test_load_defaults_to_the_packaged_catalog(seed, tmp_path):
    session = _saved(seed, tmp_path)
    loaded = load_session("s1", tmp_path)  # no kb argument
    assert loaded.to_dict() == session.to_dict()
