"""Knowledge base: the catalog of activities, methods, criteria, and groups."""

from .loader import load_kb, load_kb_path, parse_kb, serialize_kb, validate_kb
from .model import (
    PHASES,
    Activity,
    ActivityView,
    Criterion,
    Finding,
    KnowledgeBase,
    Method,
    MethodGroup,
    PhaseTag,
    ValidationReport,
    query_activity,
)
from .seed import seed_kb, seed_text

__all__ = [
    "PHASES",
    "Activity",
    "ActivityView",
    "Criterion",
    "Finding",
    "KnowledgeBase",
    "Method",
    "MethodGroup",
    "PhaseTag",
    "ValidationReport",
    "load_kb",
    "load_kb_path",
    "parse_kb",
    "query_activity",
    "seed_kb",
    "seed_text",
    "serialize_kb",
    "validate_kb",
]
