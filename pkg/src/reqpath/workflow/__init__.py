"""Phase-gated workflow tracking for requirements-generation sessions."""

from .engine import (
    advance,
    assign_method,
    attach_model,
    attach_rationale,
    create_session,
    evaluate_checklist,
    mark_verification,
    organize,
    raise_conflict,
    record_requirement,
    replay,
    request_global_validation,
    resolve_conflict,
    set_attestation,
)
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
    PhaseState,
    RequirementRecord,
    RiskAttribute,
    VerificationMark,
    WorkflowSession,
)

__all__ = [
    "BUSINESS_CONCERNS",
    "DONE",
    "GLOBAL_EVALUATION",
    "GLOBAL_ONLY",
    "LOCAL_ANALYSIS",
    "LOCAL_ATTRIBUTES",
    "PHASE_ORDER",
    "QUALITY_ATTRIBUTES",
    "REQUIREMENT_KINDS",
    "RISK_CATEGORIES",
    "RISK_LEVELS",
    "VERIFICATION_STATUSES",
    "AttributeSet",
    "ChecklistItem",
    "ChecklistResult",
    "ConflictRecord",
    "IncrementSet",
    "MethodAssignment",
    "ModelArtifact",
    "NeedRecord",
    "PhaseState",
    "RequirementRecord",
    "RiskAttribute",
    "VerificationMark",
    "WorkflowSession",
    "advance",
    "assign_method",
    "attach_model",
    "attach_rationale",
    "create_session",
    "evaluate_checklist",
    "mark_verification",
    "organize",
    "raise_conflict",
    "record_requirement",
    "replay",
    "request_global_validation",
    "resolve_conflict",
    "set_attestation",
]
