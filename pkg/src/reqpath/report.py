"""Decision-record export.

Renders a selection result and/or a workflow session into a portable markup
document suitable for committing next to the requirements themselves. Output
is deterministic for fixed inputs: the generation timestamp is injected by
the caller (tests pass a constant) and every traversal follows declaration
or record order.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import DomainError
from .kb.model import KnowledgeBase
from .selection import PathResult, classify_scenario, explain
from .workflow.engine import evaluate_checklist
from .workflow.model import LOCAL_ANALYSIS, WorkflowSession


@dataclass(frozen=True)
class ReportSection:
    heading: str
    rows: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Report:
    title: str
    generated_at: str
    sections: tuple[ReportSection, ...]


def _scenario_label(kb: KnowledgeBase, activity_id: str) -> str:
    try:
        scenario = classify_scenario(kb, activity_id)
    except DomainError:
        return "no criteria data"
    label = scenario.value
    if scenario.warnings:
        label += f" ({len(scenario.warnings)} criterion gap(s))"
    return label


def _path_sections(kb: KnowledgeBase, result: PathResult) -> list[ReportSection]:
    sections = []
    for choice, entry in zip(result.choices, explain(kb, result)):
        activity = kb.activity(choice.activity)
        method = kb.method(choice.method)
        rows = [
            ("Method", method.name),
            ("Satisfies", ", ".join(entry.satisfied) or "none"),
            ("Scenario", _scenario_label(kb, choice.activity)),
            (
                "Tied alternatives",
                ", ".join(kb.method(m).name for m in choice.tied_alternatives) or "none",
            ),
            ("Strengths", "; ".join(entry.strengths) or "none recorded"),
            ("Weaknesses", "; ".join(entry.weaknesses) or "none recorded"),
            (
                "Rejected",
                "; ".join(
                    f"{kb.method(r.method).name} (satisfies: {', '.join(r.satisfied) or 'none'})"
                    for r in entry.rejected
                )
                or "none",
            ),
        ]
        sections.append(ReportSection(heading=f"Path choice: {activity.name}", rows=tuple(rows)))
    return sections


def _session_sections(kb: KnowledgeBase, session: WorkflowSession) -> list[ReportSection]:
    state = session.phase_state
    rows = [
        ("Session", session.id),
        ("Phase", state.phase),
        ("Local iterations", str(state.local_iteration)),
    ]
    if state.business_cursor:
        rows.append(("Business activity", kb.activity(state.business_cursor).name))
    rows += [
        ("Needs", str(len(session.needs))),
        ("Requirements", str(len(session.requirements))),
        (
            "Increments",
            ", ".join(f"{i.label} (iteration {i.iteration}, {len(i.requirement_ids)})" for i in session.increments)
            or "none",
        ),
        ("Open conflicts", ", ".join(c.id for c in session.open_conflicts()) or "none"),
        ("Stakeholder attestation", "yes" if session.attested else "no"),
        ("Validation requested", "yes" if session.global_validation_requested else "no"),
    ]
    active = session.active_methods()
    rows.append(
        (
            "Assigned methods",
            "; ".join(f"{kb.activity(a).name}: {kb.method(m).name}" for a, m in active.items())
            or "none",
        )
    )
    sections = [ReportSection(heading="Workflow status", rows=tuple(rows))]

    if state.phase == LOCAL_ANALYSIS:
        checklist = evaluate_checklist(session)
        items = (
            ("Quality inspected", checklist.quality_inspected),
            ("Traced to needs", checklist.traced_to_needs),
            ("Stakeholder agreement", checklist.stakeholder_agreement),
        )
        check_rows = [
            (label, f"{'pass' if item.passed else 'FAIL'} -- {item.evidence}") for label, item in items
        ]
        check_rows.append(("Overall", "pass" if checklist.passed else "FAIL"))
        sections.append(ReportSection(heading="Exit checklist", rows=tuple(check_rows)))
    return sections


def export_report(
    kb: KnowledgeBase,
    session: WorkflowSession | None = None,
    path_result: PathResult | None = None,
    generated_at: str | None = None,
) -> Report:
    """Assemble a report over a session, a path result, or both."""
    if session is None and path_result is None:
        raise DomainError("missing_subject", "a report needs a session, a path result, or both")
    sections: list[ReportSection] = []
    if path_result is not None:
        sections.extend(_path_sections(kb, path_result))
    if session is not None:
        sections.extend(_session_sections(kb, session))
    if session is not None and path_result is not None:
        title = "Method path and workflow report"
    elif path_result is not None:
        title = "Method path report"
    else:
        title = f"Workflow report: {session.id}"
    stamp = generated_at or datetime.now(timezone.utc).isoformat(timespec="seconds")
    return Report(title=title, generated_at=stamp, sections=tuple(sections))


def render_markdown(report: Report) -> str:
    lines = [f"# {report.title}", "", f"Generated: {report.generated_at}", ""]
    for section in report.sections:
        lines.append(f"## {section.heading}")
        lines.append("")
        for label, value in section.rows:
            lines.append(f"- **{label}:** {value}")
        lines.append("")
    return "\n".join(lines)
