"""Command-line front door.

Mirrors the HTTP service over the same engine and the same data directory:
``reqpath select path --format json`` prints exactly the body the service
would return for the equivalent POST. Human-readable tables are the default;
``--format json`` switches to machine output.

Exit codes: 0 success, 1 domain/validation error, 2 usage error.
Environment: REQPATH_KB and REQPATH_DATA_DIR supply defaults for --kb and
--data-dir; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import payloads
from .errors import ReqPathError
from .kb.loader import load_kb_path, parse_kb, validate_kb
from .kb.model import KnowledgeBase, query_activity
from .kb.seed import seed_kb
from .report import export_report, render_markdown
from .selection import SelectionRequest, classify_scenario, minimize_distinct
from .store import load_session, save_session
from .workflow import engine


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells: Sequence[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)


def _emit(args: argparse.Namespace, payload: dict | list, table: str | None = None) -> None:
    if args.format == "json" or table is None:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(table)


def _kb(args: argparse.Namespace) -> KnowledgeBase:
    return load_kb_path(args.kb) if args.kb else seed_kb()


def _csv(value: str) -> list[str]:
    return [item for item in value.split(",") if item]


# ---------------------------------------------------------------------------
# kb commands

def _cmd_kb_validate(args: argparse.Namespace) -> int:
    report = validate_kb(parse_kb(open(args.path, encoding="utf-8").read()))
    payload = {
        "errors": len(report.errors),
        "warnings": len(report.warnings),
        "findings": [f.to_payload() for f in report.findings],
    }
    rows = [[f.severity, f.code, f.subject, f.message] for f in report.findings]
    table = f"{len(report.errors)} errors, {len(report.warnings)} warnings"
    if rows:
        table += "\n" + _table(["severity", "code", "subject", "message"], rows)
    _emit(args, payload, table)
    return 0 if report.ok() else 1


def _cmd_kb_list(args: argparse.Namespace) -> int:
    kb = _kb(args)
    if args.what == "methods":
        payload = [payloads.method_payload(m) for m in kb.methods]
        table = _table(["id", "name"], [[m.id, m.name] for m in kb.methods])
    elif args.what == "criteria":
        payload = [{"id": c.id, "name": c.name, "description": c.description} for c in kb.criteria]
        table = _table(["id", "name"], [[c.id, c.name] for c in kb.criteria])
    else:
        payload = [payloads.activity_payload(a) for a in kb.activities]
        table = _table(
            ["id", "phase", "rank", "methods"],
            [[a.id, a.phase.phase, str(a.phase.rank), str(len(a.applicable_methods))] for a in kb.activities],
        )
    _emit(args, payload, table)
    return 0


def _cmd_kb_show(args: argparse.Namespace) -> int:
    kb = _kb(args)
    view = query_activity(kb, args.activity)
    payload = payloads.activity_view_payload(view)
    lines = [
        f"{view.activity.name} ({view.activity.id})",
        f"  phase: {view.activity.phase.phase} rank {view.activity.phase.rank}",
        f"  objective: {view.activity.objective}",
        f"  methods: {', '.join(m.name for m in view.methods) or 'none'}",
    ]
    for g in view.groups:
        lines.append(f"  {g.criterion}: {', '.join(g.members)}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_scenario(args: argparse.Namespace) -> int:
    kb = _kb(args)
    scenario = classify_scenario(kb, args.activity)
    payload = payloads.scenario_payload(args.activity, scenario)
    table = f"{args.activity}: {scenario.value}"
    if scenario.warnings:
        table += "\n" + "\n".join(f"  warning: {w}" for w in scenario.warnings)
    _emit(args, payload, table)
    return 0


# ---------------------------------------------------------------------------
# selection commands

def _cmd_select_path(args: argparse.Namespace) -> int:
    kb = _kb(args)
    pinned = {}
    for pin in args.pin or []:
        if "=" not in pin:
            raise ReqPathError("invalid_pin", f"--pin expects activity=method, got '{pin}'")
        activity, method = pin.split("=", 1)
        pinned[activity] = method
    request = SelectionRequest(
        activities=tuple(_csv(args.activities)),
        priority=tuple(_csv(args.criteria)),
        pinned=pinned,
    )
    response = payloads.select_path_response(kb, request)
    rows = [
        [
            c["activity_name"],
            c["method_name"],
            ", ".join(c["coverage"]["satisfied"]) or "-",
            ", ".join(c["tied_alternatives"]) or "-",
        ]
        for c in response["path"]["choices"]
    ]
    table = _table(["activity", "method", "satisfies", "tied"], rows)
    table += f"\ndistinct methods: {response['path']['distinct_method_count']}"
    _emit(args, response, table)
    return 0


def _cmd_select_minimize(args: argparse.Namespace) -> int:
    kb = _kb(args)
    result = minimize_distinct(kb, _csv(args.activities), args.criterion, args.mode)
    payload = payloads.minimize_payload(result)
    rows = [[a, m] for a, m in result.assignment.items()]
    table = _table(["activity", "method"], rows)
    table += f"\ndistinct: {len(result.distinct_methods)} optimal: {str(result.optimal).lower()}"
    _emit(args, payload, table)
    return 0


# ---------------------------------------------------------------------------
# session commands

def _session_table(snapshot: dict) -> str:
    state = snapshot["phase_state"]
    lines = [
        f"session {snapshot['id']} (version {snapshot['version']})",
        f"  phase: {state['phase']}"
        + (f" (iteration {state['local_iteration']})" if state["phase"] == "local_analysis" else "")
        + (f" at {state['business_cursor']}" if state.get("business_cursor") else ""),
        f"  needs: {len(snapshot['needs'])}  requirements: {len(snapshot['requirements'])}"
        f"  open conflicts: {sum(1 for c in snapshot['conflicts'] if c['status'] == 'open')}",
        f"  attested: {str(snapshot['attested']).lower()}",
    ]
    return "\n".join(lines)


def _load_for(args: argparse.Namespace):
    kb = _kb(args)
    return kb, load_session(args.session, args.data_dir, kb)


def _finish_mutation(args: argparse.Namespace, kb, session, payload: dict, table: str | None = None) -> int:
    save_session(session, args.data_dir)
    _emit(args, payload, table or _session_table(session.to_dict()))
    return 0


def _parse_need(raw: str) -> dict:
    parts = raw.split(":", 2)
    if len(parts) < 2:
        raise ReqPathError("invalid_need", f"--need expects id:statement[:source], got '{raw}'")
    need = {"id": parts[0], "statement": parts[1]}
    if len(parts) == 3:
        need["source"] = parts[2]
    return need


def _cmd_session_new(args: argparse.Namespace) -> int:
    kb = _kb(args)
    needs: list[dict] = []
    if args.needs_file:
        with open(args.needs_file, encoding="utf-8") as fh:
            needs.extend(json.load(fh))
    needs.extend(_parse_need(raw) for raw in args.need or [])
    session = engine.create_session(kb, needs, session_id=args.id)
    return _finish_mutation(args, kb, session, payloads.session_payload(session))


def _cmd_session_show(args: argparse.Namespace) -> int:
    _, session = _load_for(args)
    snapshot = payloads.session_payload(session)
    _emit(args, snapshot, _session_table(snapshot))
    return 0


def _cmd_session_advance(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    engine.advance(session, kb)
    return _finish_mutation(args, kb, session, payloads.session_payload(session))


def _cmd_session_checklist(args: argparse.Namespace) -> int:
    _, session = _load_for(args)
    result = engine.evaluate_checklist(session)
    payload = payloads.checklist_payload(session, result)
    rows = [
        [name, "pass" if item["passed"] else "FAIL", item["evidence"]]
        for name, item in payload["items"].items()
    ]
    table = _table(["item", "status", "evidence"], rows)
    table += f"\noverall: {'pass' if result.passed else 'FAIL'}"
    _emit(args, payload, table)
    return 0


def _cmd_session_record(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    record = engine.record_requirement(session, args.increment, args.text, args.kind, args.parent)
    return _finish_mutation(args, kb, session, record.to_dict(), f"recorded {record.id}")


def _cmd_session_link(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    record = engine.attach_rationale(session, args.requirement, args.rationale, _csv(args.needs))
    return _finish_mutation(
        args, kb, session, record.to_dict(),
        f"{record.id} linked to: {', '.join(record.need_links) or 'none'}",
    )


def _cmd_session_verify(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    record = engine.mark_verification(session, args.requirement, args.attribute, args.status, args.note)
    mark = record.verification[args.attribute]
    return _finish_mutation(
        args, kb, session, record.to_dict(),
        f"{record.id}.{args.attribute} = {mark.status} (scope {mark.scope})",
    )


def _cmd_session_conflict(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    conflict = engine.raise_conflict(session, _csv(args.requirements), args.description)
    return _finish_mutation(args, kb, session, conflict.to_dict(), f"raised {conflict.id}")


def _cmd_session_resolve(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    conflict = engine.resolve_conflict(session, args.conflict, args.resolution)
    return _finish_mutation(args, kb, session, conflict.to_dict(), f"resolved {conflict.id}")


def _cmd_session_attest(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    engine.set_attestation(session, not args.revoke, args.note)
    return _finish_mutation(args, kb, session, payloads.session_payload(session))


def _cmd_session_assign(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    entry = engine.assign_method(session, kb, args.activity, args.method)
    return _finish_mutation(
        args, kb, session, entry.to_dict(), f"{entry.activity} -> {entry.method}"
    )


def _cmd_session_report(args: argparse.Namespace) -> int:
    kb, session = _load_for(args)
    report = export_report(kb, session=session)
    markdown = render_markdown(report)
    if args.format == "json":
        _emit(args, {"title": report.title, "generated_at": report.generated_at, "markdown": markdown})
    else:
        print(markdown)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .http import ServiceConfig, serve

    handle = serve(
        ServiceConfig(
            host=args.host,
            port=args.port,
            kb_path=args.kb,
            data_dir=args.data_dir,
            read_only=args.read_only,
        )
    )
    handle.run()
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reqpath",
        description="Decision support for requirements generation.",
    )
    parser.add_argument("--kb", default=os.environ.get("REQPATH_KB") or None,
                        help="path to a knowledge-base document (default: packaged seed)")
    parser.add_argument("--data-dir", default=os.environ.get("REQPATH_DATA_DIR", "./reqpath_data"),
                        help="directory holding session data")
    parser.add_argument("--format", choices=("json", "table"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    kb = sub.add_parser("kb", help="inspect or validate a knowledge base")
    kb_sub = kb.add_subparsers(dest="kb_command", required=True)
    p = kb_sub.add_parser("validate", help="validate a knowledge-base document")
    p.add_argument("path")
    p.set_defaults(fn=_cmd_kb_validate)
    p = kb_sub.add_parser("list", help="list catalog records")
    p.add_argument("what", nargs="?", choices=("activities", "methods", "criteria"), default="activities")
    p.set_defaults(fn=_cmd_kb_list)
    p = kb_sub.add_parser("show", help="show one activity with methods and groups")
    p.add_argument("activity")
    p.set_defaults(fn=_cmd_kb_show)

    p = sub.add_parser("scenario", help="classify the selection scenario for an activity")
    p.add_argument("activity")
    p.set_defaults(fn=_cmd_scenario)

    select = sub.add_parser("select", help="method selection")
    select_sub = select.add_subparsers(dest="select_command", required=True)
    p = select_sub.add_parser("path", help="recommend one method per activity")
    p.add_argument("--activities", required=True, help="comma-separated activity ids")
    p.add_argument("--criteria", default="", help="comma-separated criterion ids, highest priority first")
    p.add_argument("--pin", action="append", help="activity=method, may repeat")
    p.set_defaults(fn=_cmd_select_path)
    p = select_sub.add_parser("minimize", help="minimize distinct methods across activities")
    p.add_argument("--activities", required=True)
    p.add_argument("--criterion", required=True)
    p.add_argument("--mode", choices=("exact", "greedy", "auto"), default="auto")
    p.set_defaults(fn=_cmd_select_minimize)

    session = sub.add_parser("session", help="workflow sessions")
    session_sub = session.add_subparsers(dest="session_command", required=True)
    p = session_sub.add_parser("new", help="create a session from stakeholder needs")
    p.add_argument("--id", default=None)
    p.add_argument("--need", action="append", help="id:statement[:source], may repeat")
    p.add_argument("--needs-file", default=None, help="JSON file with a list of needs")
    p.set_defaults(fn=_cmd_session_new)

    def with_session(name: str, help_text: str) -> argparse.ArgumentParser:
        q = session_sub.add_parser(name, help=help_text)
        q.add_argument("session")
        return q

    with_session("show", "print a session snapshot").set_defaults(fn=_cmd_session_show)
    with_session("advance", "advance the session one step").set_defaults(fn=_cmd_session_advance)
    with_session("checklist", "evaluate the local exit checklist").set_defaults(fn=_cmd_session_checklist)

    p = with_session("record", "record a requirement")
    p.add_argument("--increment", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("--kind", required=True, choices=("functional", "non_functional"))
    p.add_argument("--parent", default=None)
    p.set_defaults(fn=_cmd_session_record)

    p = with_session("link", "attach rationale and need links to a requirement")
    p.add_argument("--requirement", required=True)
    p.add_argument("--needs", default="", help="comma-separated need ids")
    p.add_argument("--rationale", default=None)
    p.set_defaults(fn=_cmd_session_link)

    p = with_session("verify", "mark a verification judgement")
    p.add_argument("--requirement", required=True)
    p.add_argument("--attribute", required=True)
    p.add_argument("--status", required=True)
    p.add_argument("--note", default="")
    p.set_defaults(fn=_cmd_session_verify)

    p = with_session("conflict", "raise a conflict")
    p.add_argument("--requirements", required=True, help="comma-separated requirement ids")
    p.add_argument("--description", required=True)
    p.set_defaults(fn=_cmd_session_conflict)

    p = with_session("resolve", "resolve a conflict")
    p.add_argument("--conflict", required=True)
    p.add_argument("--resolution", required=True)
    p.set_defaults(fn=_cmd_session_resolve)

    p = with_session("attest", "set or revoke stakeholder attestation")
    p.add_argument("--revoke", action="store_true")
    p.add_argument("--note", default="")
    p.set_defaults(fn=_cmd_session_attest)

    p = with_session("assign", "log a method assignment for an activity")
    p.add_argument("--activity", required=True)
    p.add_argument("--method", required=True)
    p.set_defaults(fn=_cmd_session_assign)

    with_session("report", "render the session report").set_defaults(fn=_cmd_session_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--read-only", action="store_true")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ReqPathError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error [not_found]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
