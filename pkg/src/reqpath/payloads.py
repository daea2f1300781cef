"""Wire shapes shared by the HTTP service and the CLI's JSON output.

Both front doors build their responses here so that identical inputs produce
byte-identical core payloads regardless of transport.
"""

from __future__ import annotations

from .kb.model import Activity, ActivityView, KnowledgeBase, Method, MethodGroup
from .selection import (
    ExplanationEntry,
    MinimizeResult,
    PathResult,
    ScenarioClass,
    SelectionRequest,
    explain,
    recommend_path,
)
from .workflow.model import ChecklistResult, WorkflowSession


def method_payload(m: Method) -> dict:
    return {
        "id": m.id,
        "name": m.name,
        "description": m.description,
        "strengths": list(m.strengths),
        "weaknesses": list(m.weaknesses),
        "citations": list(m.citations),
    }


def activity_payload(a: Activity) -> dict:
    return {
        "id": a.id,
        "name": a.name,
        "objective": a.objective,
        "phase": {"phase": a.phase.phase, "rank": a.phase.rank},
        "applicable_methods": list(a.applicable_methods),
    }


def group_payload(g: MethodGroup) -> dict:
    return {"activity": g.activity, "criterion": g.criterion, "members": list(g.members)}


def activity_view_payload(view: ActivityView) -> dict:
    return {
        "activity": activity_payload(view.activity),
        "methods": [method_payload(m) for m in view.methods],
        "groups": [group_payload(g) for g in view.groups],
    }


def kb_summary_payload(kb: KnowledgeBase) -> dict:
    return {
        "version": kb.version,
        "criteria": [
            {"id": c.id, "name": c.name, "description": c.description} for c in kb.criteria
        ],
        "counts": {
            "criteria": len(kb.criteria),
            "methods": len(kb.methods),
            "activities": len(kb.activities),
            "groups": len(kb.groups),
        },
    }


def scenario_payload(activity_id: str, scenario: ScenarioClass) -> dict:
    return {"activity": activity_id, "value": scenario.value, "warnings": list(scenario.warnings)}


def selection_request_payload(request: SelectionRequest) -> dict:
    return {
        "activities": list(request.activities),
        "priority": list(request.priority),
        "pinned": dict(request.pinned),
        "tie_break": request.tie_break,
    }


def path_result_payload(kb: KnowledgeBase, result: PathResult) -> dict:
    choices = []
    for c in result.choices:
        satisfied = [cr.id for cr in kb.criteria if cr.id in c.coverage.satisfied]
        choices.append(
            {
                "activity": c.activity,
                "activity_name": kb.activity(c.activity).name,
                "method": c.method,
                "method_name": kb.method(c.method).name,
                "coverage": {"satisfied": satisfied},
                "tied_alternatives": list(c.tied_alternatives),
            }
        )
    return {"choices": choices, "distinct_method_count": result.distinct_method_count}


def explanation_payload(entries: tuple[ExplanationEntry, ...]) -> list[dict]:
    return [
        {
            "activity": e.activity,
            "method": e.method,
            "satisfied": list(e.satisfied),
            "strengths": list(e.strengths),
            "weaknesses": list(e.weaknesses),
            "tie_break_applied": e.tie_break_applied,
            "rejected": [{"method": r.method, "satisfied": list(r.satisfied)} for r in e.rejected],
        }
        for e in entries
    ]


def select_path_response(kb: KnowledgeBase, request: SelectionRequest) -> dict:
    """The full recommend-and-explain response both front doors return."""
    result = recommend_path(kb, request)
    return {
        "request": selection_request_payload(request),
        "path": path_result_payload(kb, result),
        "explanation": explanation_payload(explain(kb, result)),
    }


def minimize_payload(result: MinimizeResult) -> dict:
    return {
        "criterion": result.criterion,
        "assignment": dict(result.assignment),
        "distinct_methods": sorted(result.distinct_methods),
        "optimal": result.optimal,
    }


def checklist_payload(session: WorkflowSession, result: ChecklistResult) -> dict:
    payload = result.to_dict()
    payload["session_version"] = session.version
    payload["phase"] = session.phase
    return payload


def session_payload(session: WorkflowSession) -> dict:
    return session.to_dict()
