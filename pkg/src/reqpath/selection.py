"""Criteria-driven method selection.

Pure functions over an immutable catalog: per-method criterion coverage,
filtering, scenario classification, lexicographic path recommendation, and
distinct-method minimization. Nothing in here mutates the knowledge base or
keeps state between calls, so every result is reproducible from (kb, inputs).

Ordering rules used throughout:

* "declaration order" means the order ids appear in the catalog document --
  an activity's ``applicable_methods`` list for per-activity questions, the
  top-level ``methods`` list for cross-activity ones.
* score vectors are compared lexicographically, so earlier entries in a
  priority list dominate later ones outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .kb.model import KnowledgeBase

EXACT_SEARCH_BOUND = 1_000_000
TIE_BREAK_POLICIES = ("declaration_order",)
FILTER_MODES = ("all", "any")
MINIMIZE_MODES = ("exact", "greedy", "auto")


@dataclass(frozen=True)
class CoverageVector:
    method: str
    activity: str
    satisfied: frozenset[str]


@dataclass(frozen=True)
class ScenarioClass:
    value: str  # "ideal" | "normal" | "worst"
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class SelectionRequest:
    activities: tuple[str, ...]
    priority: tuple[str, ...]
    pinned: Mapping[str, str] = field(default_factory=dict)
    tie_break: str = "declaration_order"


@dataclass(frozen=True)
class PathChoice:
    activity: str
    method: str
    coverage: CoverageVector
    tied_alternatives: tuple[str, ...]


@dataclass(frozen=True)
class PathResult:
    choices: tuple[PathChoice, ...]
    distinct_method_count: int


@dataclass(frozen=True)
class MinimizeResult:
    assignment: Mapping[str, str]  # request order preserved
    distinct_methods: frozenset[str]
    optimal: bool
    criterion: str


@dataclass(frozen=True)
class RejectedAlternative:
    method: str
    satisfied: tuple[str, ...]


@dataclass(frozen=True)
class ExplanationEntry:
    activity: str
    method: str
    satisfied: tuple[str, ...]
    strengths: tuple[str, ...]
    weaknesses: tuple[str, ...]
    tie_break_applied: bool
    rejected: tuple[RejectedAlternative, ...]


def coverage_vector(kb: KnowledgeBase, activity_id: str, method_id: str) -> CoverageVector:
    """Which criteria the catalog says this method satisfies for this activity.

    A criterion is satisfied exactly when the method is a member of the
    (activity, criterion) group. Criteria with no group contribute nothing.
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
    satisfied = frozenset(
        c.id
        for c in kb.criteria
        if (group := kb.group(activity_id, c.id)) is not None and method_id in group.member_set
    )
    return CoverageVector(method=method_id, activity=activity_id, satisfied=satisfied)


def _ordered_criteria(kb: KnowledgeBase, criteria: Iterable[str]) -> tuple[str, ...]:
    wanted = set(criteria)
    return tuple(c.id for c in kb.criteria if c.id in wanted)


def filter_methods(
    kb: KnowledgeBase, activity_id: str, criteria: Iterable[str], mode: str = "all"
) -> tuple[str, ...]:
    """Applicable methods whose coverage matches the given criteria.

    mode="all" keeps methods satisfying every named criterion, mode="any"
    keeps those satisfying at least one. The empty criterion set is the
    neutral element of each mode: all -> every applicable method, any -> none.
    Results keep the activity's declaration order.
    """
    activity = kb.activity(activity_id)
    if mode not in FILTER_MODES:
        raise DomainError("invalid_mode", f"filter mode must be one of {FILTER_MODES}, got '{mode}'")
    wanted = set(criteria)
    for cid in wanted:
        kb.criterion(cid)
    out = []
    for mid in activity.applicable_methods:
        satisfied = coverage_vector(kb, activity_id, mid).satisfied
        keep = wanted <= satisfied if mode == "all" else bool(wanted & satisfied)
        if keep:
            out.append(mid)
    return tuple(out)


def classify_scenario(kb: KnowledgeBase, activity_id: str) -> ScenarioClass:
    """Classify how much freedom the criteria leave for this activity.

    Over the non-empty criterion groups G of the activity:
      ideal  -- some method sits in every group AND every catalog criterion
                has a group here (one method can satisfy everything);
      worst  -- the groups are pairwise disjoint and there are at least two
                (every criterion demands a different method);
      normal -- anything in between.

    Criteria with a missing or empty group are reported as warnings. An
    activity with no criterion data at all cannot be classified.
    """
    kb.activity(activity_id)
    warnings = []
    member_sets: list[frozenset[str]] = []
    for c in kb.criteria:
        group = kb.group(activity_id, c.id)
        if group is None or not group.members:
            warnings.append(f"no method group for criterion '{c.id}'")
        else:
            member_sets.append(group.member_set)
    if not member_sets:
        raise DomainError(
            "no_criteria_data",
            f"activity '{activity_id}' has no criterion groups to classify against",
            activity=activity_id,
        )
    if len(member_sets) == len(kb.criteria) and frozenset.intersection(*member_sets):
        value = "ideal"
    elif len(member_sets) >= 2 and all(
        a.isdisjoint(b) for i, a in enumerate(member_sets) for b in member_sets[i + 1 :]
    ):
        value = "worst"
    else:
        value = "normal"
    return ScenarioClass(value=value, warnings=tuple(warnings))


def _score(kb: KnowledgeBase, activity_id: str, method_id: str, priority: Sequence[str]) -> tuple[int, ...]:
    return tuple(
        1
        if (group := kb.group(activity_id, cid)) is not None and method_id in group.member_set
        else 0
        for cid in priority
    )


def _validate_request(kb: KnowledgeBase, request: SelectionRequest) -> None:
    if request.tie_break not in TIE_BREAK_POLICIES:
        raise DomainError(
            "invalid_tie_break",
            f"tie_break must be one of {TIE_BREAK_POLICIES}, got '{request.tie_break}'",
        )
    seen = set()
    for cid in request.priority:
        kb.criterion(cid)
        if cid in seen:
            raise DomainError("duplicate_priority", f"criterion '{cid}' appears twice in the priority list")
        seen.add(cid)
    for aid in request.activities:
        kb.activity(aid)
    for aid, mid in request.pinned.items():
        activity = kb.activity(aid)
        kb.method(mid)
        if mid not in activity.applicable_methods:
            raise DomainError(
                "pinned_not_applicable",
                f"pinned method '{mid}' is not applicable to activity '{aid}'",
                activity=aid,
                method=mid,
            )


def recommend_path(kb: KnowledgeBase, request: SelectionRequest) -> PathResult:
    """Choose one method per requested activity.

    A pinned method wins outright. Otherwise each applicable method is scored
    by the binary vector (satisfies priority[0], satisfies priority[1], ...)
    and the lexicographic maximum is chosen; ties go to the method declared
    first, with the remaining maximal methods reported as tied_alternatives.
    """
    _validate_request(kb, request)
    choices = []
    for aid in request.activities:
        activity = kb.activity(aid)
        pinned = request.pinned.get(aid)
        if pinned is not None:
            choices.append(
                PathChoice(
                    activity=aid,
                    method=pinned,
                    coverage=coverage_vector(kb, aid, pinned),
                    tied_alternatives=(),
                )
            )
            continue
        if not activity.applicable_methods:
            raise DomainError(
                "uncoverable_activity",
                f"activity '{aid}' has no applicable methods and no pinned method",
                activity=aid,
            )
        scored = [(_score(kb, aid, mid, request.priority), mid) for mid in activity.applicable_methods]
        best = max(score for score, _ in scored)
        winners = [mid for score, mid in scored if score == best]
        choices.append(
            PathChoice(
                activity=aid,
                method=winners[0],
                coverage=coverage_vector(kb, aid, winners[0]),
                tied_alternatives=tuple(winners[1:]),
            )
        )
    return PathResult(
        choices=tuple(choices),
        distinct_method_count=len({c.method for c in choices}),
    )


def _exact_assignment(groups: Sequence[tuple[str, ...]]) -> list[str]:
    """Exhaustive minimum-distinct assignment, first optimum in candidate order.

    Depth-first over the candidate product with a monotonicity prune: the
    distinct count never shrinks as an assignment grows, so any branch already
    at the incumbent's count cannot strictly improve on it.
    """
    n = len(groups)
    best: list[str] | None = None
    best_count = math.inf
    current: list[str] = []
    counts: dict[str, int] = {}

    def walk(depth: int) -> None:
        nonlocal best, best_count
        if len(counts) >= best_count:
            return
        if depth == n:
            best = list(current)
            best_count = len(counts)
            return
        for mid in groups[depth]:
            current.append(mid)
            counts[mid] = counts.get(mid, 0) + 1
            walk(depth + 1)
            current.pop()
            if counts[mid] == 1:
                del counts[mid]
            else:
                counts[mid] -= 1

    walk(0)
    assert best is not None  # every group is non-empty, so a leaf is reached
    return best


def _greedy_assignment(kb: KnowledgeBase, groups: Sequence[tuple[str, ...]]) -> list[str]:
    """Cover activities by repeatedly taking the most-covering method.

    Ties on cover count go to the method declared first in the catalog's
    methods list. Always terminates: every group is non-empty, so the best
    candidate covers at least one remaining activity per round.
    """
    candidates = sorted({mid for g in groups for mid in g}, key=kb.method_rank)
    remaining = set(range(len(groups)))
    assignment: list[str | None] = [None] * len(groups)
    while remaining:
        best_mid, best_cover = None, 0
        for mid in candidates:
            cover = sum(1 for i in remaining if mid in groups[i])
            if cover > best_cover:
                best_mid, best_cover = mid, cover
        assert best_mid is not None
        for i in sorted(remaining):
            if best_mid in groups[i]:
                assignment[i] = best_mid
                remaining.discard(i)
    return assignment  # type: ignore[return-value]


def minimize_distinct(
    kb: KnowledgeBase, activities: Sequence[str], criterion: str, mode: str = "auto"
) -> MinimizeResult:
    """Assign one group member per activity, minimizing distinct methods used.

    mode="exact" searches the whole candidate product (feasible while the
    product of group sizes stays within EXACT_SEARCH_BOUND) and is optimal;
    mode="greedy" is a most-coverage-first heuristic that is always feasible
    but makes no optimality claim; mode="auto" picks exact within the bound
    and falls back to greedy beyond it.
    """
    if mode not in MINIMIZE_MODES:
        raise DomainError("invalid_mode", f"minimize mode must be one of {MINIMIZE_MODES}, got '{mode}'")
    kb.criterion(criterion)
    groups: list[tuple[str, ...]] = []
    for aid in activities:
        kb.activity(aid)
        group = kb.group(aid, criterion)
        if group is None or not group.members:
            raise DomainError(
                "uncoverable_activity",
                f"activity '{aid}' has no method group for criterion '{criterion}'",
                activity=aid,
                criterion=criterion,
            )
        groups.append(group.members)

    product = math.prod(len(g) for g in groups)
    if mode == "exact" and product > EXACT_SEARCH_BOUND:
        raise DomainError(
            "search_bound_exceeded",
            f"exact search over {product} assignments exceeds the bound of {EXACT_SEARCH_BOUND}",
            product=product,
            bound=EXACT_SEARCH_BOUND,
        )
    exact = mode == "exact" or (mode == "auto" and product <= EXACT_SEARCH_BOUND)
    chosen = _exact_assignment(groups) if exact else _greedy_assignment(kb, groups)
    assignment = {aid: mid for aid, mid in zip(activities, chosen)}
    return MinimizeResult(
        assignment=assignment,
        distinct_methods=frozenset(chosen),
        optimal=exact,
        criterion=criterion,
    )


def _entry(
    kb: KnowledgeBase,
    activity_id: str,
    method_id: str,
    alternatives: Iterable[str],
    tie_break_applied: bool,
) -> ExplanationEntry:
    method = kb.method(method_id)
    satisfied = _ordered_criteria(kb, coverage_vector(kb, activity_id, method_id).satisfied)
    rejected = tuple(
        RejectedAlternative(
            method=mid,
            satisfied=_ordered_criteria(kb, coverage_vector(kb, activity_id, mid).satisfied),
        )
        for mid in alternatives
        if mid != method_id
    )
    return ExplanationEntry(
        activity=activity_id,
        method=method_id,
        satisfied=satisfied,
        strengths=method.strengths,
        weaknesses=method.weaknesses,
        tie_break_applied=tie_break_applied,
        rejected=rejected,
    )


def explain(kb: KnowledgeBase, result: PathResult | MinimizeResult) -> tuple[ExplanationEntry, ...]:
    """Human-auditable record of why each method was chosen.

    For a path result the rejected alternatives are the activity's other
    applicable methods; for a minimize result they are the other members of
    the criterion group. Deterministic for a fixed (kb, result).
    """
    entries = []
    if isinstance(result, PathResult):
        for choice in result.choices:
            activity = kb.activity(choice.activity)
            entries.append(
                _entry(
                    kb,
                    choice.activity,
                    choice.method,
                    activity.applicable_methods,
                    tie_break_applied=bool(choice.tied_alternatives),
                )
            )
    elif isinstance(result, MinimizeResult):
        kb.criterion(result.criterion)
        for aid, mid in result.assignment.items():
            group = kb.group(aid, result.criterion)
            members = group.members if group is not None else ()
            entries.append(_entry(kb, aid, mid, members, tie_break_applied=False))
    else:
        raise DomainError(
            "unexplainable_result", f"cannot explain a {type(result).__name__}"
        )
    return tuple(entries)
