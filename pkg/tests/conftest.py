"""Shared fixtures and builders for the test suite."""

from __future__ import annotations

import random

import pytest

from reqpath.errors import ReqPathError
from reqpath.kb.model import (
    Activity,
    Criterion,
    KnowledgeBase,
    Method,
    MethodGroup,
    PhaseTag,
)
from reqpath.kb.seed import seed_kb
from reqpath.workflow import engine as wf
from reqpath.workflow.model import (
    DONE,
    GLOBAL_ONLY,
    LOCAL_ANALYSIS,
    LOCAL_ATTRIBUTES,
    PHASE_ORDER,
    QUALITY_ATTRIBUTES,
    VERIFICATION_STATUSES,
    WorkflowSession,
)

# Fixed timestamp injected everywhere determinism matters.
T = "2026-08-16T12:00:00+00:00"


@pytest.fixture(scope="session")
def seed() -> KnowledgeBase:
    return seed_kb()


def method(mid: str, **kwargs) -> Method:
    return Method(
        id=mid,
        name=kwargs.get("name", mid.replace("_", " ").title()),
        description=kwargs.get("description", ""),
        strengths=tuple(kwargs.get("strengths", ())),
        weaknesses=tuple(kwargs.get("weaknesses", ())),
        citations=tuple(kwargs.get("citations", ())),
    )


def activity(aid: str, methods: tuple[str, ...] = (), phase: str = "business_concerns", rank: int = 1, **kwargs) -> Activity:
    return Activity(
        id=aid,
        name=kwargs.get("name", aid.replace("_", " ").title()),
        objective=kwargs.get("objective", f"objective of {aid}"),
        phase=PhaseTag(phase=phase, rank=rank),
        applicable_methods=tuple(methods),
    )


def build_kb(
    criteria: tuple[str, ...],
    methods: tuple[Method, ...],
    activities: tuple[Activity, ...],
    groups: tuple[MethodGroup, ...] = (),
    version: str = "test",
) -> KnowledgeBase:
    return KnowledgeBase(
        version=version,
        criteria=tuple(Criterion(id=c, name=c.title(), description="") for c in criteria),
        methods=methods,
        activities=activities,
        groups=groups,
    )


def group(aid: str, cid: str, members: tuple[str, ...]) -> MethodGroup:
    return MethodGroup(activity=aid, criterion=cid, members=members)


def random_kb(rng: random.Random, max_criteria: int = 4, max_methods: int = 8, max_activities: int = 4) -> KnowledgeBase:
    """A small random catalog that always passes validation.

    Activities get random method subsets; each (activity, criterion) pair has
    a random chance of a group whose members are a subset of the applicable
    methods (possibly empty, which the engine treats as missing data).
    """
    criteria = tuple(f"c{i}" for i in range(1, rng.randint(1, max_criteria) + 1))
    methods = tuple(method(f"m{i}") for i in range(1, rng.randint(1, max_methods) + 1))
    activities = []
    groups = []
    for i in range(1, rng.randint(1, max_activities) + 1):
        applicable = tuple(m.id for m in methods if rng.random() < 0.7)
        activities.append(activity(f"a{i}", applicable, rank=i))
        for cid in criteria:
            if applicable and rng.random() < 0.7:
                members = tuple(m for m in applicable if rng.random() < 0.5)
                if members:
                    groups.append(group(f"a{i}", cid, members))
    return build_kb(criteria, methods, tuple(activities), tuple(groups))


# ---------------------------------------------------------------------------
# session drivers

def fresh_session(kb, session_id: str = "sess", needs: int = 2) -> WorkflowSession:
    return wf.create_session(
        kb,
        [{"id": f"n{i}", "statement": f"need {i}", "source": "workshop"} for i in range(1, needs + 1)],
        session_id=session_id,
        at=T,
    )


def satisfy_checklist(kb, session: WorkflowSession, requirements: int = 2) -> None:
    """Record requirements, link them, mark local verification, attest."""
    need_ids = [n.id for n in session.needs]
    for i in range(requirements):
        record = wf.record_requirement(session, "core", f"requirement {i + 1}", "functional", at=T)
        wf.attach_rationale(session, record.id, "keeps stakeholders happy", need_ids, at=T)
        for attr in LOCAL_ATTRIBUTES:
            wf.mark_verification(session, record.id, attr, "verified", at=T)
        for attr in sorted(GLOBAL_ONLY):
            wf.mark_verification(session, record.id, attr, "partial", at=T)
    wf.set_attestation(session, True, "all stakeholders signed", at=T)


def drive_to_global(kb, session: WorkflowSession, requirements: int = 2) -> WorkflowSession:
    satisfy_checklist(kb, session, requirements)
    wf.advance(session, kb, at=T)
    assert session.phase == "global_evaluation"
    return session


def drive_to_business(kb, session: WorkflowSession, requirements: int = 2) -> WorkflowSession:
    drive_to_global(kb, session, requirements)
    for record in session.requirements:
        for attr in sorted(GLOBAL_ONLY):
            wf.mark_verification(session, record.id, attr, "verified", at=T)
    wf.advance(session, kb, at=T)
    assert session.phase == "business_concerns"
    return session


def drive_to_done(kb, session: WorkflowSession, requirements: int = 2) -> WorkflowSession:
    drive_to_business(kb, session, requirements)
    while session.phase == "business_concerns":
        wf.advance(session, kb, at=T)
    assert session.phase == "done"
    return session


# ---------------------------------------------------------------------------
# randomized gating walk

def random_walk(kb, rng: random.Random, steps: int, deep_check_rate: float = 0.1):
    """Apply random operations, asserting the gating invariants after each.

    Invariants checked per step: rejected operations leave the session
    unlogged (and, on sampled steps, byte-identical); the phase index never
    decreases; only a passing exit checklist leaves local analysis; the local
    iteration counter never decreases and freezes once local analysis is
    over; no global-only attribute ever carries a verified mark made in
    local scope; a done session has no open conflicts and no unlinked need;
    event sequence numbers stay contiguous.
    Returns (session, attempted_count, applied_count).
    """
    session = wf.create_session(
        kb,
        [{"id": f"n{i}", "statement": f"need {i}"} for i in range(1, rng.randint(1, 3) + 1)],
        session_id=f"walk{rng.randrange(10**9)}",
        at=T,
    )
    activities = [a.id for a in kb.activities]
    methods = [m.id for m in kb.methods]
    attempted = 0
    applied = 0
    for _ in range(steps):
        prev_phase = PHASE_ORDER.index(session.phase)
        prev_iter = session.phase_state.local_iteration
        prev_version = session.version
        snapshot = session.to_dict() if rng.random() < deep_check_rate else None
        op = rng.randrange(11)
        checklist_passed = None
        if op == 6 and session.phase == LOCAL_ANALYSIS:
            checklist_passed = wf.evaluate_checklist(session).passed
        try:
            if op == 0 and len(session.requirements) < 60:
                wf.record_requirement(
                    session,
                    rng.choice(("core", "ui")),
                    f"req {session.version}",
                    rng.choice(("functional", "non_functional")),
                    at=T,
                )
            elif op == 1 and session.requirements:
                record = rng.choice(session.requirements)
                links = [n.id for n in session.needs if rng.random() < 0.7]
                wf.attach_rationale(session, record.id, "because", links, at=T)
            elif op == 2 and session.requirements:
                record = rng.choice(session.requirements)
                wf.mark_verification(
                    session,
                    record.id,
                    rng.choice(QUALITY_ATTRIBUTES),
                    rng.choice(VERIFICATION_STATUSES),
                    at=T,
                )
            elif op == 3 and session.requirements and len(session.conflicts) < 40:
                ids = [r.id for r in session.requirements if rng.random() < 0.3]
                wf.raise_conflict(session, ids or [session.requirements[0].id], "tension", at=T)
            elif op == 4 and session.conflicts:
                wf.resolve_conflict(session, rng.choice(session.conflicts).id, "settled", at=T)
            elif op == 5:
                wf.set_attestation(session, rng.random() < 0.7, "ok", at=T)
            elif op == 6:
                wf.advance(session, kb, at=T)
            elif op == 7:
                wf.assign_method(session, kb, rng.choice(activities), rng.choice(methods), at=T)
            elif op == 8 and session.requirements:
                record = rng.choice(session.requirements)
                kwargs = {}
                if rng.random() < 0.5:
                    kwargs["kind"] = rng.choice(("functional", "non_functional"))
                if rng.random() < 0.3:
                    kwargs["parent"] = rng.choice([None] + [x.id for x in session.requirements])
                if rng.random() < 0.3:
                    kwargs["attributes"] = {"customer_importance": rng.randint(0, 11)}
                wf.organize(session, record.id, at=T, **kwargs)
            elif op == 9 and session.requirements:
                # groom one requirement toward the local exit checklist
                record = rng.choice(session.requirements)
                wf.attach_rationale(session, record.id, None, [n.id for n in session.needs], at=T)
                for attr in LOCAL_ATTRIBUTES:
                    wf.mark_verification(session, record.id, attr, "verified", at=T)
                for attr in sorted(GLOBAL_ONLY):
                    wf.mark_verification(session, record.id, attr, "partial", at=T)
            elif op == 10 and session.requirements and session.phase != LOCAL_ANALYSIS:
                record = rng.choice(session.requirements)
                for attr in sorted(GLOBAL_ONLY):
                    wf.mark_verification(session, record.id, attr, "verified", at=T)
            else:
                continue
            attempted += 1
            applied += 1
        except ReqPathError:
            attempted += 1
            assert session.version == prev_version
            assert PHASE_ORDER.index(session.phase) == prev_phase
            if snapshot is not None:
                assert session.to_dict() == snapshot
        assert session.version == len(session.events)
        assert PHASE_ORDER.index(session.phase) >= prev_phase
        if checklist_passed is not None:
            # only a passing checklist leaves local analysis, and a passing
            # advance always leaves
            left_local = session.phase != LOCAL_ANALYSIS
            assert left_local == checklist_passed
        assert session.phase_state.local_iteration >= prev_iter
        if session.phase != LOCAL_ANALYSIS:
            assert session.phase_state.local_iteration == prev_iter
        for record in session.requirements:
            for attr in GLOBAL_ONLY:
                mark = record.verification[attr]
                assert not (mark.status == "verified" and mark.scope == "local")
        if session.phase == DONE:
            assert not session.open_conflicts()
            linked = {nid for r in session.requirements for nid in r.need_links}
            assert all(n.id in linked for n in session.needs)
        assert [e["seq"] for e in session.events] == list(range(1, len(session.events) + 1))
    return session, attempted, applied
