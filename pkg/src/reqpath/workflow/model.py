"""Session state for one requirements-generation engagement.

A session is event-sourced: every mutating operation in
:mod:`reqpath.workflow.engine` validates its inputs, applies the change, and
appends one entry to ``session.events``. Replaying the event list through the
same operations rebuilds a field-identical session, which is what the store
relies on for integrity checking. The dataclasses here are therefore plain
mutable state holders; all the rules live in the engine.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field

from ..errors import UnknownIdError

LOCAL_ANALYSIS = "local_analysis"
GLOBAL_EVALUATION = "global_evaluation"
BUSINESS_CONCERNS = "business_concerns"
DONE = "done"
PHASE_ORDER = (LOCAL_ANALYSIS, GLOBAL_EVALUATION, BUSINESS_CONCERNS, DONE)

QUALITY_ATTRIBUTES = (
    "non_ambiguity",
    "correctness",
    "verifiability",
    "completeness",
    "traceability",
    "consistency",
)
# Attributes that can only be fully verified once the complete requirement
# set exists, i.e. never while still inside local analysis.
GLOBAL_ONLY = frozenset({"completeness", "traceability", "consistency"})
LOCAL_ATTRIBUTES = tuple(a for a in QUALITY_ATTRIBUTES if a not in GLOBAL_ONLY)

VERIFICATION_STATUSES = ("unverified", "partial", "verified")
VERIFICATION_SCOPES = ("local", "global")
REQUIREMENT_KINDS = ("functional", "non_functional")
RISK_LEVELS = ("low", "medium", "high")
RISK_CATEGORIES = ("product_engineering", "development_environment", "program_constraints")


def new_session_id() -> str:
    return uuid.uuid4().hex[:12]


@dataclass
class NeedRecord:
    id: str
    statement: str
    source: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "statement": self.statement, "source": self.source}


@dataclass
class VerificationMark:
    status: str = "unverified"
    scope: str = "local"
    note: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status, "scope": self.scope, "note": self.note}


@dataclass
class RiskAttribute:
    level: str
    category: str

    def to_dict(self) -> dict:
        return {"level": self.level, "category": self.category}


@dataclass
class AttributeSet:
    risk: RiskAttribute | None = None
    customer_importance: int | None = None
    effort: int | None = None

    def to_dict(self) -> dict:
        return {
            "risk": self.risk.to_dict() if self.risk else None,
            "customer_importance": self.customer_importance,
            "effort": self.effort,
        }


@dataclass
class RequirementRecord:
    id: str
    text: str
    kind: str
    parent: str | None = None
    attributes: AttributeSet = field(default_factory=AttributeSet)
    rationale: str | None = None
    need_links: list[str] = field(default_factory=list)
    models: list[str] = field(default_factory=list)
    verification: dict[str, VerificationMark] = field(
        default_factory=lambda: {a: VerificationMark() for a in QUALITY_ATTRIBUTES}
    )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "kind": self.kind,
            "parent": self.parent,
            "attributes": self.attributes.to_dict(),
            "rationale": self.rationale,
            "need_links": list(self.need_links),
            "models": list(self.models),
            "verification": {a: self.verification[a].to_dict() for a in QUALITY_ATTRIBUTES},
        }


@dataclass
class IncrementSet:
    id: str
    label: str
    iteration: int
    requirement_ids: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "label": self.label,
            "iteration": self.iteration,
            "requirement_ids": list(self.requirement_ids),
        }


@dataclass
class ModelArtifact:
    id: str
    kind: str
    uri_or_blob: str

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "uri_or_blob": self.uri_or_blob}


@dataclass
class ConflictRecord:
    id: str
    requirement_ids: list[str]
    description: str
    status: str = "open"
    resolution: str | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "requirement_ids": list(self.requirement_ids),
            "description": self.description,
            "status": self.status,
            "resolution": self.resolution,
        }


@dataclass
class MethodAssignment:
    activity: str
    method: str
    at: str

    def to_dict(self) -> dict:
        return {"activity": self.activity, "method": self.method, "at": self.at}


@dataclass
class ChecklistItem:
    passed: bool
    evidence: str

    def to_dict(self) -> dict:
        return {"passed": self.passed, "evidence": self.evidence}


@dataclass
class ChecklistResult:
    quality_inspected: ChecklistItem
    traced_to_needs: ChecklistItem
    stakeholder_agreement: ChecklistItem
    passed: bool

    def to_dict(self) -> dict:
        return {
            "items": {
                "quality_inspected": self.quality_inspected.to_dict(),
                "traced_to_needs": self.traced_to_needs.to_dict(),
                "stakeholder_agreement": self.stakeholder_agreement.to_dict(),
            },
            "passed": self.passed,
        }


@dataclass
class PhaseState:
    phase: str = LOCAL_ANALYSIS
    local_iteration: int = 1
    business_cursor: str | None = None

    def to_dict(self) -> dict:
        return {
            "phase": self.phase,
            "local_iteration": self.local_iteration,
            "business_cursor": self.business_cursor,
        }


@dataclass
class WorkflowSession:
    id: str
    kb_version: str
    phase_state: PhaseState = field(default_factory=PhaseState)
    needs: list[NeedRecord] = field(default_factory=list)
    increments: list[IncrementSet] = field(default_factory=list)
    requirements: list[RequirementRecord] = field(default_factory=list)
    conflicts: list[ConflictRecord] = field(default_factory=list)
    artifacts: list[ModelArtifact] = field(default_factory=list)
    method_log: list[MethodAssignment] = field(default_factory=list)
    attested: bool = False
    attestation_note: str = ""
    global_validation_requested: bool = False
    events: list[dict] = field(default_factory=list)

    @property
    def version(self) -> int:
        """Optimistic-concurrency token: the number of applied events."""
        return len(self.events)

    @property
    def phase(self) -> str:
        return self.phase_state.phase

    def requirement(self, requirement_id: str) -> RequirementRecord:
        for r in self.requirements:
            if r.id == requirement_id:
                return r
        raise UnknownIdError(
            "unknown_requirement",
            f"no requirement with id '{requirement_id}' in session '{self.id}'",
            requirement=requirement_id,
        )

    def conflict(self, conflict_id: str) -> ConflictRecord:
        for c in self.conflicts:
            if c.id == conflict_id:
                return c
        raise UnknownIdError(
            "unknown_conflict",
            f"no conflict with id '{conflict_id}' in session '{self.id}'",
            conflict=conflict_id,
        )

    def need_ids(self) -> set[str]:
        return {n.id for n in self.needs}

    def children_of(self, requirement_id: str) -> list[RequirementRecord]:
        return [r for r in self.requirements if r.parent == requirement_id]

    def open_conflicts(self) -> list[ConflictRecord]:
        return [c for c in self.conflicts if c.status == "open"]

    def active_methods(self) -> dict[str, str]:
        """Latest assignment per activity; the log keeps the full history."""
        active: dict[str, str] = {}
        for entry in self.method_log:
            active[entry.activity] = entry.method
        return active

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kb_version": self.kb_version,
            "version": self.version,
            "phase_state": self.phase_state.to_dict(),
            "needs": [n.to_dict() for n in self.needs],
            "increments": [i.to_dict() for i in self.increments],
            "requirements": [r.to_dict() for r in self.requirements],
            "conflicts": [c.to_dict() for c in self.conflicts],
            "artifacts": [a.to_dict() for a in self.artifacts],
            "method_log": [m.to_dict() for m in self.method_log],
            "attested": self.attested,
            "attestation_note": self.attestation_note,
            "global_validation_requested": self.global_validation_requested,
        }
