"""Catalog types: criteria, methods, activities, and per-criterion method groups.

Everything here is immutable once constructed; the loader in
:mod:`reqpath.kb.loader` is the only intended producer. Declaration order --
the order records appear in the source document -- is significant throughout:
it is the order query results are returned in and the tie-break order used by
the selection engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import UnknownIdError

PHASES = ("local_analysis", "global_evaluation", "business_concerns")


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str
    description: str


@dataclass(frozen=True)
class Method:
    id: str
    name: str
    description: str
    # strengths/weaknesses may be empty but the slots always exist; the
    # explanation builder quotes them verbatim.
    strengths: tuple[str, ...]
    weaknesses: tuple[str, ...]
    citations: tuple[str, ...]


@dataclass(frozen=True)
class PhaseTag:
    phase: str
    rank: int


@dataclass(frozen=True)
class Activity:
    id: str
    name: str
    objective: str
    phase: PhaseTag
    applicable_methods: tuple[str, ...]


@dataclass(frozen=True)
class MethodGroup:
    """The methods suited to one activity under one selection criterion."""

    activity: str
    criterion: str
    members: tuple[str, ...]  # declaration order kept; semantically a set

    @cached_property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.members)


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    code: str
    subject: str
    message: str

    def to_payload(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "subject": self.subject,
            "message": self.message,
        }


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    @property
    def warnings(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")

    def ok(self) -> bool:
        return not self.errors


@dataclass(frozen=True)
class KnowledgeBase:
    version: str
    criteria: tuple[Criterion, ...]
    methods: tuple[Method, ...]
    activities: tuple[Activity, ...]
    groups: tuple[MethodGroup, ...]

    @cached_property
    def criteria_by_id(self) -> dict[str, Criterion]:
        return {c.id: c for c in self.criteria}

    @cached_property
    def methods_by_id(self) -> dict[str, Method]:
        return {m.id: m for m in self.methods}

    @cached_property
    def activities_by_id(self) -> dict[str, Activity]:
        return {a.id: a for a in self.activities}

    @cached_property
    def _groups_by_key(self) -> dict[tuple[str, str], MethodGroup]:
        return {(g.activity, g.criterion): g for g in self.groups}

    @cached_property
    def _method_rank(self) -> dict[str, int]:
        return {m.id: i for i, m in enumerate(self.methods)}

    def criterion(self, criterion_id: str) -> Criterion:
        try:
            return self.criteria_by_id[criterion_id]
        except KeyError:
            raise UnknownIdError(
                "unknown_criterion", f"no criterion with id '{criterion_id}'", criterion=criterion_id
            ) from None

    def method(self, method_id: str) -> Method:
        try:
            return self.methods_by_id[method_id]
        except KeyError:
            raise UnknownIdError(
                "unknown_method", f"no method with id '{method_id}'", method=method_id
            ) from None

    def activity(self, activity_id: str) -> Activity:
        try:
            return self.activities_by_id[activity_id]
        except KeyError:
            raise UnknownIdError(
                "unknown_activity", f"no activity with id '{activity_id}'", activity=activity_id
            ) from None

    def group(self, activity_id: str, criterion_id: str) -> MethodGroup | None:
        """The method group for (activity, criterion), or None if undeclared."""
        return self._groups_by_key.get((activity_id, criterion_id))

    def groups_for(self, activity_id: str) -> tuple[MethodGroup, ...]:
        return tuple(g for g in self.groups if g.activity == activity_id)

    def method_rank(self, method_id: str) -> int:
        """Global declaration rank of a method, for deterministic tie-breaks."""
        return self._method_rank[method_id]

    def activities_in_phase(self, phase: str) -> tuple[Activity, ...]:
        """Activities of one phase, ordered by their declared rank."""
        members = [a for a in self.activities if a.phase.phase == phase]
        members.sort(key=lambda a: a.phase.rank)
        return tuple(members)


@dataclass(frozen=True)
class ActivityView:
    """An activity resolved together with its methods and criterion groups."""

    activity: Activity
    methods: tuple[Method, ...]
    groups: tuple[MethodGroup, ...]


def query_activity(kb: KnowledgeBase, activity_id: str) -> ActivityView:
    """Resolve one activity with its applicable methods and declared groups.

    Methods come back in the activity's declaration order. Only groups that
    actually exist in the catalog are returned; nothing is fabricated for
    criteria the catalog says nothing about.
    """
    activity = kb.activity(activity_id)
    methods = tuple(kb.method(mid) for mid in activity.applicable_methods)
    return ActivityView(activity=activity, methods=methods, groups=kb.groups_for(activity_id))
