"""Parsing, validation, and serialization of knowledge-base documents.

The on-disk format is a UTF-8 JSON document with the top-level keys
``version``, ``criteria``, ``methods``, ``activities``, and ``groups``.
Parsing is strict about structure -- missing or unexpected keys and wrong
value types are rejected outright, with a line/column position when the JSON
itself is malformed. Reference integrity is deliberately NOT a parse concern:
a structurally sound document whose ids dangle parses fine and is rejected by
:func:`validate_kb` instead, so a validation report can name every problem at
once.
"""

from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path

from ..errors import KBParseError, KBValidationError
from .model import (
    PHASES,
    Activity,
    Criterion,
    Finding,
    KnowledgeBase,
    Method,
    MethodGroup,
    PhaseTag,
    ValidationReport,
)

_TOP_KEYS = ("version", "criteria", "methods", "activities", "groups")
_CRITERION_KEYS = ("id", "name", "description")
_METHOD_KEYS = ("id", "name", "description", "strengths", "weaknesses", "citations")
_ACTIVITY_KEYS = ("id", "name", "objective", "phase", "applicable_methods")
_GROUP_KEYS = ("activity", "criterion", "members")
_PHASE_KEYS = ("phase", "rank")


def _check_keys(obj: dict, expected: tuple[str, ...], where: str) -> None:
    missing = [k for k in expected if k not in obj]
    extra = [k for k in obj if k not in expected]
    if missing:
        raise KBParseError(f"{where}: missing key(s) {', '.join(missing)}")
    if extra:
        raise KBParseError(f"{where}: unexpected key(s) {', '.join(sorted(extra))}")


def _string(obj: dict, key: str, where: str) -> str:
    value = obj[key]
    if not isinstance(value, str):
        raise KBParseError(f"{where}: '{key}' must be a string")
    return value


def _string_list(obj: dict, key: str, where: str) -> tuple[str, ...]:
    value = obj[key]
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise KBParseError(f"{where}: '{key}' must be a list of strings")
    return tuple(value)


def _record_list(doc: dict, key: str) -> list[dict]:
    value = doc[key]
    if not isinstance(value, list) or any(not isinstance(v, dict) for v in value):
        raise KBParseError(f"document: '{key}' must be a list of objects")
    return value


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a document into an (unvalidated) catalog. Structure only."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KBParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise KBParseError("document: top level must be a JSON object")
    _check_keys(doc, _TOP_KEYS, "document")
    version = _string(doc, "version", "document")

    criteria = []
    for i, raw in enumerate(_record_list(doc, "criteria")):
        where = f"criteria[{i}]"
        _check_keys(raw, _CRITERION_KEYS, where)
        criteria.append(
            Criterion(
                id=_string(raw, "id", where),
                name=_string(raw, "name", where),
                description=_string(raw, "description", where),
            )
        )

    methods = []
    for i, raw in enumerate(_record_list(doc, "methods")):
        where = f"methods[{i}]"
        _check_keys(raw, _METHOD_KEYS, where)
        methods.append(
            Method(
                id=_string(raw, "id", where),
                name=_string(raw, "name", where),
                description=_string(raw, "description", where),
                strengths=_string_list(raw, "strengths", where),
                weaknesses=_string_list(raw, "weaknesses", where),
                citations=_string_list(raw, "citations", where),
            )
        )

    activities = []
    for i, raw in enumerate(_record_list(doc, "activities")):
        where = f"activities[{i}]"
        _check_keys(raw, _ACTIVITY_KEYS, where)
        phase_raw = raw["phase"]
        if not isinstance(phase_raw, dict):
            raise KBParseError(f"{where}: 'phase' must be an object")
        _check_keys(phase_raw, _PHASE_KEYS, f"{where}.phase")
        rank = phase_raw["rank"]
        if not isinstance(rank, int) or isinstance(rank, bool):
            raise KBParseError(f"{where}.phase: 'rank' must be an integer")
        activities.append(
            Activity(
                id=_string(raw, "id", where),
                name=_string(raw, "name", where),
                objective=_string(raw, "objective", where),
                phase=PhaseTag(phase=_string(phase_raw, "phase", f"{where}.phase"), rank=rank),
                applicable_methods=_string_list(raw, "applicable_methods", where),
            )
        )

    groups = []
    for i, raw in enumerate(_record_list(doc, "groups")):
        where = f"groups[{i}]"
        _check_keys(raw, _GROUP_KEYS, where)
        groups.append(
            MethodGroup(
                activity=_string(raw, "activity", where),
                criterion=_string(raw, "criterion", where),
                members=_string_list(raw, "members", where),
            )
        )

    return KnowledgeBase(
        version=version,
        criteria=tuple(criteria),
        methods=tuple(methods),
        activities=tuple(activities),
        groups=tuple(groups),
    )


def validate_kb(kb: KnowledgeBase) -> ValidationReport:
    """Check reference integrity and catalog hygiene.

    Returns a deterministic report: findings are sorted by subject id, then
    code, then message, so two runs over the same contents are byte-identical.
    """
    findings: list[Finding] = []

    def error(code: str, subject: str, message: str) -> None:
        findings.append(Finding("error", code, subject, message))

    def warning(code: str, subject: str, message: str) -> None:
        findings.append(Finding("warning", code, subject, message))

    if not kb.activities:
        error("empty_catalog", "catalog", "knowledge base defines no activities")

    for kind, items in (("criterion", kb.criteria), ("method", kb.methods), ("activity", kb.activities)):
        seen: set[str] = set()
        for item in items:
            if not item.id.strip():
                error("empty_id", f"<{kind}>", f"a {kind} record has an empty id")
                continue
            if item.id in seen:
                error("duplicate_id", item.id, f"duplicate {kind} id '{item.id}'")
            seen.add(item.id)

    for m in kb.methods:
        if m.id.strip() and not m.name.strip():
            error("missing_name", m.id, f"method '{m.id}' has an empty name")

    method_ids = {m.id for m in kb.methods}
    criterion_ids = {c.id for c in kb.criteria}

    activity_index: dict[str, Activity] = {}
    seen_ranks: set[tuple[str, int]] = set()
    for a in kb.activities:
        activity_index.setdefault(a.id, a)
        if a.phase.phase not in PHASES:
            error("invalid_phase", a.id, f"activity '{a.id}' has unknown phase '{a.phase.phase}'")
        else:
            key = (a.phase.phase, a.phase.rank)
            if key in seen_ranks:
                error(
                    "duplicate_phase_rank",
                    a.id,
                    f"activity '{a.id}' reuses rank {a.phase.rank} within phase '{a.phase.phase}'",
                )
            seen_ranks.add(key)
        if not a.objective.strip():
            error("missing_objective", a.id, f"activity '{a.id}' has no objective")
        seen_methods: set[str] = set()
        for mid in a.applicable_methods:
            if mid in seen_methods:
                error("duplicate_method_entry", a.id, f"activity '{a.id}' lists method '{mid}' twice")
            seen_methods.add(mid)
            if mid not in method_ids:
                error("dangling_method_ref", a.id, f"activity '{a.id}' lists unknown method '{mid}'")
        if not a.applicable_methods:
            warning("no_applicable_methods", a.id, f"activity '{a.id}' lists no applicable methods")

    mapped: defaultdict[str, set[str]] = defaultdict(set)
    seen_groups: set[tuple[str, str]] = set()
    for g in kb.groups:
        subject = f"{g.activity}/{g.criterion}"
        activity = activity_index.get(g.activity)
        if activity is None:
            error("dangling_activity_ref", subject, f"group references unknown activity '{g.activity}'")
        if g.criterion not in criterion_ids:
            error("dangling_criterion_ref", subject, f"group references unknown criterion '{g.criterion}'")
        key = (g.activity, g.criterion)
        if key in seen_groups:
            error("duplicate_group", subject, f"more than one group declared for ({g.activity}, {g.criterion})")
        seen_groups.add(key)
        seen_members: set[str] = set()
        for mid in g.members:
            if mid in seen_members:
                error("duplicate_group_member", subject, f"group ({g.activity}, {g.criterion}) lists '{mid}' twice")
            seen_members.add(mid)
            if mid not in method_ids:
                error(
                    "dangling_method_ref",
                    subject,
                    f"group ({g.activity}, {g.criterion}) references unknown method '{mid}'",
                )
            elif activity is not None and mid not in activity.applicable_methods:
                error(
                    "group_member_not_applicable",
                    subject,
                    f"method '{mid}' is not applicable to activity '{g.activity}'",
                )
        if activity is not None and g.criterion in criterion_ids:
            mapped[g.activity].add(g.criterion)

    # An activity that has methods but no group for some criterion cannot be
    # classified against that criterion; worth flagging, not fatal.
    for a in kb.activities:
        if a.applicable_methods and a.id in activity_index and activity_index[a.id] is a:
            for c in kb.criteria:
                if c.id not in mapped[a.id]:
                    warning(
                        "unmapped_criterion",
                        a.id,
                        f"activity '{a.id}' has no method group for criterion '{c.id}'",
                    )

    findings.sort(key=lambda f: (f.subject, f.code, f.message))
    return ValidationReport(tuple(findings))


def load_kb(text: str) -> KnowledgeBase:
    """Parse and validate a document; raise unless it is error-free."""
    kb = parse_kb(text)
    report = validate_kb(kb)
    if not report.ok():
        raise KBValidationError(report)
    return kb


def load_kb_path(path: str | Path) -> KnowledgeBase:
    return load_kb(Path(path).read_text(encoding="utf-8"))


def serialize_kb(kb: KnowledgeBase) -> str:
    """Render a catalog back to document text, preserving declaration order."""
    doc = {
        "version": kb.version,
        "criteria": [
            {"id": c.id, "name": c.name, "description": c.description} for c in kb.criteria
        ],
        "methods": [
            {
                "id": m.id,
                "name": m.name,
                "description": m.description,
                "strengths": list(m.strengths),
                "weaknesses": list(m.weaknesses),
                "citations": list(m.citations),
            }
            for m in kb.methods
        ],
        "activities": [
            {
                "id": a.id,
                "name": a.name,
                "objective": a.objective,
                "phase": {"phase": a.phase.phase, "rank": a.phase.rank},
                "applicable_methods": list(a.applicable_methods),
            }
            for a in kb.activities
        ],
        "groups": [
            {"activity": g.activity, "criterion": g.criterion, "members": list(g.members)}
            for g in kb.groups
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
