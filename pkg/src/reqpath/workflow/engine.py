"""Workflow operations: everything that can happen to a session.

Each public operation follows the same shape: validate against the current
state, mutate, then append one event. Errors are raised before any mutation,
so a failed call leaves the session untouched and unlogged. ``replay`` feeds
a recorded event list back through these same operations, which is the sole
mechanism behind persistence integrity checks.

Phase gating enforced here:

* phases only move forward: local_analysis -> global_evaluation ->
  business_concerns -> done;
* leaving local analysis requires the three-item exit checklist to pass;
  a failing checklist starts the next local iteration instead;
* leaving global evaluation requires every requirement's global-only
  attributes (completeness, traceability, consistency) to be verified and
  no conflict left open;
* the business phase walks its activities in rank order, and the step past
  the last one refuses while conflicts are still open, so a finished session
  never carries an open conflict.
"""

from __future__ import annotations

from datetime import datetime, timezone
from typing import Any, Callable, Sequence

from ..errors import DomainError, PhaseError, StoreError, UnknownIdError
from ..kb.model import KnowledgeBase
from .model import (
    BUSINESS_CONCERNS,
    DONE,
    GLOBAL_EVALUATION,
    GLOBAL_ONLY,
    LOCAL_ANALYSIS,
    LOCAL_ATTRIBUTES,
    PHASE_ORDER,
    QUALITY_ATTRIBUTES,
    REQUIREMENT_KINDS,
    RISK_CATEGORIES,
    RISK_LEVELS,
    VERIFICATION_STATUSES,
    AttributeSet,
    ChecklistItem,
    ChecklistResult,
    ConflictRecord,
    IncrementSet,
    MethodAssignment,
    ModelArtifact,
    NeedRecord,
    RequirementRecord,
    RiskAttribute,
    VerificationMark,
    WorkflowSession,
    new_session_id,
)

_UNSET = object()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _log(session: WorkflowSession, op: str, at: str, args: dict) -> None:
    session.events.append({"seq": len(session.events) + 1, "op": op, "at": at, "args": args})


def _require_phase(session: WorkflowSession, allowed: Sequence[str], op: str) -> None:
    if session.phase not in allowed:
        raise PhaseError(
            "phase_violation",
            f"{op} is not allowed in phase '{session.phase}'",
            phase=session.phase,
            allowed=list(allowed),
        )


# ---------------------------------------------------------------------------
# creation

def create_session(
    kb: KnowledgeBase,
    needs: Sequence[dict | NeedRecord],
    session_id: str | None = None,
    at: str | None = None,
) -> WorkflowSession:
    """Open a session in local analysis, iteration 1, seeded with the needs.

    Needs are the fixed ground truth the requirements must trace back to, so
    an empty list is rejected up front.
    """
    records = []
    seen: set[str] = set()
    for raw in needs:
        record = raw if isinstance(raw, NeedRecord) else NeedRecord(
            id=str(raw.get("id", "")),
            statement=str(raw.get("statement", "")),
            source=str(raw.get("source", "")),
        )
        if not record.id.strip():
            raise DomainError("missing_need_id", "every need must carry a non-empty id")
        if record.id in seen:
            raise DomainError("duplicate_need_id", f"need id '{record.id}' appears twice")
        if not record.statement.strip():
            raise DomainError("empty_need_statement", f"need '{record.id}' has an empty statement")
        seen.add(record.id)
        records.append(record)
    if not records:
        raise DomainError("missing_needs", "a session needs at least one stakeholder need")

    sid = session_id or new_session_id()
    session = WorkflowSession(id=sid, kb_version=kb.version, needs=records)
    _log(
        session,
        "create_session",
        at or _now(),
        {
            "session_id": sid,
            "kb_version": kb.version,
            "needs": [n.to_dict() for n in records],
        },
    )
    return session


# ---------------------------------------------------------------------------
# local-analysis capture

def record_requirement(
    session: WorkflowSession,
    increment_label: str,
    text: str,
    kind: str,
    parent: str | None = None,
    at: str | None = None,
) -> RequirementRecord:
    """Capture a requirement into the named increment of the current iteration.

    Only legal during local analysis; the later phases work over a frozen
    requirement set. The increment is created on first use, and the same
    label in a later iteration names a different increment.
    """
    _require_phase(session, (LOCAL_ANALYSIS,), "record_requirement")
    if kind not in REQUIREMENT_KINDS:
        raise DomainError("invalid_kind", f"kind must be one of {REQUIREMENT_KINDS}, got '{kind}'")
    if not increment_label.strip():
        raise DomainError("empty_increment_label", "increment label must be non-empty")
    if parent is not None:
        parent_record = session.requirement(parent)
        if parent_record.kind != kind:
            raise DomainError(
                "kind_mismatch",
                f"parent '{parent}' is {parent_record.kind}, child must match",
                parent=parent,
            )

    rid = f"r{len(session.requirements) + 1}"
    record = RequirementRecord(id=rid, text=text, kind=kind, parent=parent)
    session.requirements.append(record)

    iteration = session.phase_state.local_iteration
    increment = next(
        (i for i in session.increments if i.label == increment_label and i.iteration == iteration),
        None,
    )
    if increment is None:
        increment = IncrementSet(
            id=f"inc{len(session.increments) + 1}", label=increment_label, iteration=iteration
        )
        session.increments.append(increment)
    increment.requirement_ids.append(rid)

    _log(
        session,
        "record_requirement",
        at or _now(),
        {"increment_label": increment_label, "text": text, "kind": kind, "parent": parent},
    )
    return record


def attach_rationale(
    session: WorkflowSession,
    requirement_id: str,
    rationale: str | None = None,
    need_ids: Sequence[str] = (),
    at: str | None = None,
) -> RequirementRecord:
    """Store the why behind a requirement and link it to originating needs.

    Need links are a set under the hood: attaching the same link twice is a
    no-op, so the call is idempotent.
    """
    record = session.requirement(requirement_id)
    known = session.need_ids()
    for nid in need_ids:
        if nid not in known:
            raise UnknownIdError(
                "unknown_need", f"no need with id '{nid}' in session '{session.id}'", need=nid
            )
    if rationale is not None:
        record.rationale = rationale
    for nid in need_ids:
        if nid not in record.need_links:
            record.need_links.append(nid)
    _log(
        session,
        "attach_rationale",
        at or _now(),
        {"requirement": requirement_id, "rationale": rationale, "need_ids": list(need_ids)},
    )
    return record


def attach_model(
    session: WorkflowSession,
    requirement_ids: Sequence[str],
    artifact_id: str,
    artifact_kind: str,
    uri_or_blob: str,
    at: str | None = None,
) -> ModelArtifact:
    """Bind a representation artifact (diagram, sketch, ...) to requirements."""
    if not requirement_ids:
        raise DomainError("no_targets", "an artifact must be attached to at least one requirement")
    for rid in requirement_ids:
        session.requirement(rid)
    if not artifact_id.strip():
        raise DomainError("missing_artifact_id", "artifact id must be non-empty")
    if any(a.id == artifact_id for a in session.artifacts):
        raise DomainError(
            "duplicate_artifact", f"artifact id '{artifact_id}' already exists", artifact=artifact_id
        )
    artifact = ModelArtifact(id=artifact_id, kind=artifact_kind, uri_or_blob=uri_or_blob)
    session.artifacts.append(artifact)
    for rid in requirement_ids:
        session.requirement(rid).models.append(artifact_id)
    _log(
        session,
        "attach_model",
        at or _now(),
        {
            "requirement_ids": list(requirement_ids),
            "artifact_id": artifact_id,
            "artifact_kind": artifact_kind,
            "uri_or_blob": uri_or_blob,
        },
    )
    return artifact


def _parse_attributes(raw: dict) -> AttributeSet:
    allowed = {"risk", "customer_importance", "effort"}
    unknown = set(raw) - allowed
    if unknown:
        raise DomainError("invalid_attributes", f"unknown attribute key(s): {', '.join(sorted(unknown))}")
    risk = None
    if raw.get("risk") is not None:
        risk_raw = raw["risk"]
        if not isinstance(risk_raw, dict):
            raise DomainError("invalid_attributes", "'risk' must be an object or null")
        level = risk_raw.get("level")
        category = risk_raw.get("category")
        if level not in RISK_LEVELS:
            raise DomainError("invalid_attributes", f"risk level must be one of {RISK_LEVELS}")
        if category is None:
            # A bare severity is not actionable; the factor taxonomy is mandatory.
            raise DomainError(
                "risk_level_without_category",
                "a risk level requires a risk category",
            )
        if category not in RISK_CATEGORIES:
            raise DomainError("invalid_attributes", f"risk category must be one of {RISK_CATEGORIES}")
        risk = RiskAttribute(level=level, category=category)
    importance = raw.get("customer_importance")
    if importance is not None:
        if not isinstance(importance, int) or isinstance(importance, bool) or not 1 <= importance <= 10:
            raise DomainError("invalid_attributes", "customer_importance must be an integer in 1..10")
    effort = raw.get("effort")
    if effort is not None:
        if not isinstance(effort, int) or isinstance(effort, bool) or effort < 0:
            raise DomainError("invalid_attributes", "effort must be a non-negative integer")
    return AttributeSet(risk=risk, customer_importance=importance, effort=effort)


def organize(
    session: WorkflowSession,
    requirement_id: str,
    kind: Any = _UNSET,
    parent: Any = _UNSET,
    attributes: Any = _UNSET,
    at: str | None = None,
) -> RequirementRecord:
    """Reclassify, re-parent, or re-attribute a requirement, atomically.

    Every check runs against the hypothetical post-state before anything is
    written, so a rejected call changes nothing. Allowed during local
    analysis and again during business concerns (re-prioritization); the
    frozen global-evaluation phase is off limits.
    """
    _require_phase(session, (LOCAL_ANALYSIS, BUSINESS_CONCERNS), "organize")
    record = session.requirement(requirement_id)

    new_kind = record.kind if kind is _UNSET else kind
    if new_kind not in REQUIREMENT_KINDS:
        raise DomainError("invalid_kind", f"kind must be one of {REQUIREMENT_KINDS}, got '{new_kind}'")

    new_parent = record.parent if parent is _UNSET else parent
    if new_parent is not None:
        if new_parent == requirement_id:
            raise DomainError("cycle", f"requirement '{requirement_id}' cannot be its own ancestor")
        parent_record = session.requirement(new_parent)
        # Walk up from the proposed parent; meeting the node again is a cycle.
        seen = {requirement_id}
        cursor: str | None = new_parent
        while cursor is not None:
            if cursor in seen:
                raise DomainError(
                    "cycle",
                    f"setting parent '{new_parent}' would make the hierarchy cyclic",
                    requirement=requirement_id,
                )
            seen.add(cursor)
            cursor = session.requirement(cursor).parent
        if parent_record.kind != new_kind:
            raise DomainError(
                "kind_mismatch",
                f"parent '{new_parent}' is {parent_record.kind}, child must match",
                parent=new_parent,
            )
    for child in session.children_of(requirement_id):
        if child.kind != new_kind:
            raise DomainError(
                "kind_mismatch",
                f"child '{child.id}' is {child.kind}; change it first",
                child=child.id,
            )

    new_attributes = None
    if attributes is not _UNSET:
        if not isinstance(attributes, dict):
            raise DomainError("invalid_attributes", "attributes must be an object")
        new_attributes = _parse_attributes(attributes)

    record.kind = new_kind
    record.parent = new_parent
    if new_attributes is not None:
        record.attributes = new_attributes

    changes: dict[str, Any] = {}
    if kind is not _UNSET:
        changes["kind"] = kind
    if parent is not _UNSET:
        changes["parent"] = parent
    if attributes is not _UNSET:
        changes["attributes"] = attributes
    _log(session, "organize", at or _now(), {"requirement": requirement_id, "changes": changes})
    return record


# ---------------------------------------------------------------------------
# verification and conflicts

def mark_verification(
    session: WorkflowSession,
    requirement_id: str,
    attribute: str,
    status: str,
    note: str = "",
    at: str | None = None,
) -> RequirementRecord:
    """Record a verification judgement for one quality attribute.

    Completeness, traceability, and consistency can only be judged against
    the complete requirement set, so during local analysis they cap at
    'partial'; 'verified' for them becomes available once the session has
    left local analysis. The mark's scope records which side of that line it
    was made on.
    """
    record = session.requirement(requirement_id)
    if attribute not in QUALITY_ATTRIBUTES:
        raise DomainError(
            "unknown_attribute", f"attribute must be one of {QUALITY_ATTRIBUTES}, got '{attribute}'"
        )
    if status not in VERIFICATION_STATUSES:
        raise DomainError(
            "invalid_status", f"status must be one of {VERIFICATION_STATUSES}, got '{status}'"
        )
    local = session.phase == LOCAL_ANALYSIS
    if local and attribute in GLOBAL_ONLY and status == "verified":
        raise PhaseError(
            "global_only_attribute",
            f"'{attribute}' cannot be fully verified during local analysis; use 'partial'",
            attribute=attribute,
        )
    record.verification[attribute] = VerificationMark(
        status=status, scope="local" if local else "global", note=note
    )
    _log(
        session,
        "mark_verification",
        at or _now(),
        {"requirement": requirement_id, "attribute": attribute, "status": status, "note": note},
    )
    return record


def raise_conflict(
    session: WorkflowSession,
    requirement_ids: Sequence[str],
    description: str,
    at: str | None = None,
) -> ConflictRecord:
    """Open a conflict between requirements (or one requirement and an
    external constraint, in which case the description must say which)."""
    if not requirement_ids:
        raise DomainError("missing_requirements", "a conflict must name at least one requirement")
    for rid in requirement_ids:
        session.requirement(rid)
    if len(requirement_ids) == 1 and not description.strip():
        raise DomainError(
            "external_note_required",
            "a single-requirement conflict must describe the external party it conflicts with",
        )
    cid = f"c{len(session.conflicts) + 1}"
    conflict = ConflictRecord(id=cid, requirement_ids=list(requirement_ids), description=description)
    session.conflicts.append(conflict)
    _log(
        session,
        "raise_conflict",
        at or _now(),
        {"requirement_ids": list(requirement_ids), "description": description},
    )
    return conflict


def resolve_conflict(
    session: WorkflowSession, conflict_id: str, resolution: str, at: str | None = None
) -> ConflictRecord:
    conflict = session.conflict(conflict_id)
    if conflict.status == "resolved":
        raise DomainError(
            "already_resolved", f"conflict '{conflict_id}' is already resolved", conflict=conflict_id
        )
    if not resolution.strip():
        raise DomainError("empty_resolution", "a resolution must be non-empty")
    conflict.status = "resolved"
    conflict.resolution = resolution
    _log(session, "resolve_conflict", at or _now(), {"conflict": conflict_id, "resolution": resolution})
    return conflict


def set_attestation(
    session: WorkflowSession, attested: bool, note: str = "", at: str | None = None
) -> WorkflowSession:
    """Record (or withdraw) the stakeholders' everything-is-elicited sign-off."""
    session.attested = bool(attested)
    session.attestation_note = note
    _log(session, "set_attestation", at or _now(), {"attested": bool(attested), "note": note})
    return session


def request_global_validation(
    session: WorkflowSession, requested: bool = True, at: str | None = None
) -> WorkflowSession:
    """Flag that the assembled set has been submitted for validation."""
    session.global_validation_requested = bool(requested)
    _log(session, "request_global_validation", at or _now(), {"requested": bool(requested)})
    return session


# ---------------------------------------------------------------------------
# checklist and advancement

def evaluate_checklist(session: WorkflowSession) -> ChecklistResult:
    """Evaluate the local-analysis exit checklist. Pure; logs nothing.

    quality_inspected      -- every requirement's local attributes stand at
                              partial or better and its global-only
                              attributes at exactly partial;
    traced_to_needs        -- links run both ways: no requirement without a
                              need, no need without a requirement;
    stakeholder_agreement  -- the attestation flag is set.
    """
    _require_phase(session, (LOCAL_ANALYSIS,), "evaluate_checklist")

    offenders = []
    for r in session.requirements:
        for attr in LOCAL_ATTRIBUTES:
            if r.verification[attr].status == "unverified":
                offenders.append(f"{r.id}:{attr}=unverified")
        for attr in QUALITY_ATTRIBUTES:
            if attr in GLOBAL_ONLY and r.verification[attr].status != "partial":
                offenders.append(f"{r.id}:{attr}={r.verification[attr].status}")
    quality = ChecklistItem(
        passed=not offenders,
        evidence=(
            f"all {len(session.requirements)} requirement(s) inspected"
            if not offenders
            else "not inspected: " + ", ".join(offenders)
        ),
    )

    unlinked_reqs = [r.id for r in session.requirements if not r.need_links]
    linked_needs = {nid for r in session.requirements for nid in r.need_links}
    uncovered_needs = [n.id for n in session.needs if n.id not in linked_needs]
    problems = []
    if unlinked_reqs:
        problems.append("requirements without needs: " + ", ".join(unlinked_reqs))
    if uncovered_needs:
        problems.append("needs without requirements: " + ", ".join(uncovered_needs))
    traced = ChecklistItem(
        passed=not problems,
        evidence=(
            f"{len(session.requirements)} requirement(s) and {len(session.needs)} need(s) fully linked"
            if not problems
            else "; ".join(problems)
        ),
    )

    agreement = ChecklistItem(
        passed=session.attested,
        evidence=(
            (session.attestation_note or "stakeholder attestation recorded")
            if session.attested
            else "no stakeholder attestation"
        ),
    )

    return ChecklistResult(
        quality_inspected=quality,
        traced_to_needs=traced,
        stakeholder_agreement=agreement,
        passed=quality.passed and traced.passed and agreement.passed,
    )


def _business_sequence(kb: KnowledgeBase) -> tuple[str, ...]:
    return tuple(a.id for a in kb.activities_in_phase(BUSINESS_CONCERNS))


def advance(session: WorkflowSession, kb: KnowledgeBase, at: str | None = None) -> WorkflowSession:
    """Move the session forward one step.

    local analysis      -- checklist pass exits to global evaluation; a fail
                           opens the next local iteration (not an error);
    global evaluation   -- requires every requirement's global-only
                           attributes verified and no open conflicts;
    business concerns   -- steps the cursor through the phase's activities in
                           rank order; the step past the last one also
                           requires no open conflicts, then the session is
                           done;
    done                -- terminal.
    """
    state = session.phase_state
    if state.phase == DONE:
        raise PhaseError("already_done", f"session '{session.id}' is already done")

    if state.phase == LOCAL_ANALYSIS:
        checklist = evaluate_checklist(session)
        if checklist.passed:
            state.phase = GLOBAL_EVALUATION
        else:
            state.local_iteration += 1
    elif state.phase == GLOBAL_EVALUATION:
        blocked = [
            r.id
            for r in session.requirements
            if any(r.verification[a].status != "verified" for a in GLOBAL_ONLY)
        ]
        if blocked:
            raise PhaseError(
                "blocked_by_global_verification",
                "global-only attributes are not verified on every requirement",
                requirements=blocked,
            )
        open_ids = [c.id for c in session.open_conflicts()]
        if open_ids:
            raise PhaseError(
                "blocked_by_open_conflicts",
                "open conflicts must be resolved before business concerns",
                conflicts=open_ids,
            )
        state.phase = BUSINESS_CONCERNS
        sequence = _business_sequence(kb)
        state.business_cursor = sequence[0] if sequence else None
    elif state.phase == BUSINESS_CONCERNS:
        sequence = _business_sequence(kb)
        if state.business_cursor is None or state.business_cursor not in sequence:
            index = len(sequence)  # nothing to walk; next step finishes
        else:
            index = sequence.index(state.business_cursor) + 1
        if index >= len(sequence):
            open_ids = [c.id for c in session.open_conflicts()]
            if open_ids:
                raise PhaseError(
                    "blocked_by_open_conflicts",
                    "open conflicts must be resolved before finishing",
                    conflicts=open_ids,
                )
            state.phase = DONE
            state.business_cursor = None
        else:
            state.business_cursor = sequence[index]

    _log(session, "advance", at or _now(), {})
    return session


def assign_method(
    session: WorkflowSession,
    kb: KnowledgeBase,
    activity_id: str,
    method_id: str,
    at: str | None = None,
) -> MethodAssignment:
    """Log that a method was chosen for an activity.

    The method must be applicable per the catalog, and the activity's phase
    must already be reached -- the log never references work from a phase the
    session has not entered. Reassignment appends; history is never rewritten.
    """
    activity = kb.activity(activity_id)
    kb.method(method_id)
    if method_id not in activity.applicable_methods:
        raise DomainError(
            "not_applicable",
            f"method '{method_id}' is not applicable to activity '{activity_id}'",
            activity=activity_id,
            method=method_id,
        )
    if PHASE_ORDER.index(activity.phase.phase) > PHASE_ORDER.index(session.phase):
        raise PhaseError(
            "activity_phase_not_reached",
            f"activity '{activity_id}' belongs to phase '{activity.phase.phase}', "
            f"which the session has not reached",
            activity=activity_id,
            phase=session.phase,
        )
    stamp = at or _now()
    entry = MethodAssignment(activity=activity_id, method=method_id, at=stamp)
    session.method_log.append(entry)
    _log(session, "assign_method", stamp, {"activity": activity_id, "method": method_id})
    return entry


# ---------------------------------------------------------------------------
# replay

def _replay_organize(session: WorkflowSession, kb: KnowledgeBase, at: str, args: dict) -> None:
    changes = args["changes"]
    organize(
        session,
        args["requirement"],
        kind=changes["kind"] if "kind" in changes else _UNSET,
        parent=changes["parent"] if "parent" in changes else _UNSET,
        attributes=changes["attributes"] if "attributes" in changes else _UNSET,
        at=at,
    )


_REPLAY: dict[str, Callable[[WorkflowSession, KnowledgeBase, str, dict], None]] = {
    "record_requirement": lambda s, kb, at, a: record_requirement(
        s, a["increment_label"], a["text"], a["kind"], a["parent"], at=at
    ) and None,
    "attach_rationale": lambda s, kb, at, a: attach_rationale(
        s, a["requirement"], a["rationale"], a["need_ids"], at=at
    ) and None,
    "attach_model": lambda s, kb, at, a: attach_model(
        s, a["requirement_ids"], a["artifact_id"], a["artifact_kind"], a["uri_or_blob"], at=at
    ) and None,
    "organize": _replay_organize,
    "mark_verification": lambda s, kb, at, a: mark_verification(
        s, a["requirement"], a["attribute"], a["status"], a["note"], at=at
    ) and None,
    "raise_conflict": lambda s, kb, at, a: raise_conflict(
        s, a["requirement_ids"], a["description"], at=at
    ) and None,
    "resolve_conflict": lambda s, kb, at, a: resolve_conflict(
        s, a["conflict"], a["resolution"], at=at
    ) and None,
    "set_attestation": lambda s, kb, at, a: set_attestation(s, a["attested"], a["note"], at=at) and None,
    "request_global_validation": lambda s, kb, at, a: request_global_validation(
        s, a["requested"], at=at
    ) and None,
    "advance": lambda s, kb, at, a: advance(s, kb, at=at) and None,
    "assign_method": lambda s, kb, at, a: assign_method(
        s, kb, a["activity"], a["method"], at=at
    ) and None,
}


def replay(kb: KnowledgeBase, events: Sequence[dict]) -> WorkflowSession:
    """Rebuild a session by running its event log through the operations.

    The log is trusted to have been produced by this module, but its shape is
    still checked: a log that does not start with creation, names an unknown
    operation, or whose events no longer apply cleanly is corrupt.
    """
    if not events or events[0].get("op") != "create_session":
        raise StoreError("corrupt_session", "event log does not begin with session creation")
    first = events[0]
    args = first.get("args", {})
    if args.get("kb_version") != kb.version:
        raise StoreError(
            "kb_mismatch",
            f"session was created against KB version '{args.get('kb_version')}', "
            f"but '{kb.version}' is loaded",
        )
    try:
        session = create_session(
            kb, args["needs"], session_id=args["session_id"], at=first.get("at")
        )
        for event in events[1:]:
            op = event.get("op")
            handler = _REPLAY.get(op)
            if handler is None:
                raise StoreError("corrupt_session", f"event log names unknown operation '{op}'")
            handler(session, kb, event.get("at", ""), event.get("args", {}))
    except StoreError:
        raise
    except (KeyError, TypeError) as exc:
        raise StoreError("corrupt_session", f"event log entry is malformed: {exc}") from exc
    except Exception as exc:  # a recorded op no longer applies -> tampering
        raise StoreError("corrupt_session", f"event log does not replay cleanly: {exc}") from exc
    return session
