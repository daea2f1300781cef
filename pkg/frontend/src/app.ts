// Demo wiring: a what-if selection panel and a session board against a live
// service. All state changes flow through the HTTP API; this file only moves
// payloads between the client, the view-model builders, and the DOM.

import { ApiError, ReqPathClient, poll } from "./client.js";
import {
  applyInteraction,
  applySolveResponse,
  initialState,
  kbFacts,
  type Interaction,
  type KbFacts,
  type SolveRequest,
  type WhatIfState,
} from "./interactions.js";
import { buildPathView, type PathViewModel } from "./pathView.js";
import { buildScenarioMatrix } from "./scenarioView.js";
import { buildSessionBoard } from "./sessionBoard.js";
import type { ChecklistResult, SessionSnapshot } from "./types.js";

const BASE_URL =
  new URLSearchParams(location.search).get("base") ?? "http://127.0.0.1:8077";
const SESSION_ID = new URLSearchParams(location.search).get("session");

const client = new ReqPathClient(BASE_URL);

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function clear(node: HTMLElement): HTMLElement {
  node.replaceChildren();
  return node;
}

// ---------------------------------------------------------------------------
// what-if selection panel

const DEFAULT_ACTIVITIES = [
  "risk_analysis",
  "cost_estimation",
  "schedule_estimation",
  "price_analysis",
  "tradeoff_analysis",
];

let whatIf: WhatIfState = initialState(DEFAULT_ACTIVITIES, ["completeness"]);
let facts: KbFacts = { criteria: [], applicable: {} };
let lastView: PathViewModel = { kind: "error", message: "no solve yet" };

function renderPath(host: HTMLElement): void {
  clear(host);
  if (whatIf.notice) host.appendChild(el("p", "notice", whatIf.notice));
  if (whatIf.stale) host.appendChild(el("p", "stale", "solving..."));
  if (lastView.kind === "error") {
    host.appendChild(el("p", "banner-error", lastView.message));
    return;
  }
  const table = el("table", "path");
  const head = el("tr");
  for (const title of ["Activity", "Method", "Satisfies", "Tied", "Pin"]) {
    head.appendChild(el("th", undefined, title));
  }
  table.appendChild(head);
  for (const row of lastView.rows) {
    const tr = el("tr", row.pinned ? "pinned" : undefined);
    tr.appendChild(el("td", undefined, row.activityName));
    tr.appendChild(el("td", "method", row.methodName));
    const badges = el("td", "badges");
    for (const badge of row.badges) badges.appendChild(el("span", "badge", badge));
    tr.appendChild(badges);
    tr.appendChild(el("td", "tied", row.tied.join(", ")));
    const pinCell = el("td");
    const button = el("button", undefined, row.pinned ? "unpin" : "pin");
    button.addEventListener("click", () => {
      void interact(
        row.pinned
          ? { kind: "unpin", activity: row.activity }
          : { kind: "pin", activity: row.activity, method: row.method },
      );
    });
    pinCell.appendChild(button);
    tr.appendChild(pinCell);
    table.appendChild(tr);
  }
  host.appendChild(table);
  host.appendChild(el("p", undefined, `distinct methods: ${lastView.distinctCount}`));
}

function renderPriority(host: HTMLElement): void {
  clear(host);
  host.appendChild(el("span", undefined, "priority: "));
  whatIf.priority.forEach((criterion, index) => {
    const chip = el("button", "criterion", criterion);
    chip.title = "move to front";
    chip.addEventListener("click", () => {
      const next = [criterion, ...whatIf.priority.filter((c) => c !== criterion)];
      void interact({ kind: "reorder_priority", priority: next });
    });
    if (index === 0) chip.classList.add("top");
    host.appendChild(chip);
  });
  for (const criterion of facts.criteria.filter((c) => !whatIf.priority.includes(c))) {
    const chip = el("button", "criterion off", criterion);
    chip.title = "add as top priority";
    chip.addEventListener("click", () => {
      void interact({ kind: "reorder_priority", priority: [criterion, ...whatIf.priority] });
    });
    host.appendChild(chip);
  }
  const mode = el("button", "mode", `mode: ${whatIf.mode}`);
  mode.addEventListener("click", () => void interact({ kind: "toggle_mode" }));
  host.appendChild(mode);
}

async function runSolve(solve: SolveRequest): Promise<void> {
  try {
    const payload =
      solve.endpoint === "path"
        ? await client.selectPath(solve.body)
        : await client.selectMinimize(solve.body);
    const { state, accepted } = applySolveResponse(whatIf, solve.requestId);
    whatIf = state;
    if (!accepted) return; // superseded by a newer interaction
    lastView =
      solve.endpoint === "path"
        ? buildPathView(payload)
        : { kind: "error", message: `economize result: ${JSON.stringify(payload)}` };
  } catch (error) {
    const { state } = applySolveResponse(whatIf, solve.requestId);
    whatIf = state;
    const message = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    lastView = { kind: "error", message };
  }
  repaintSelection();
}

async function interact(event: Interaction): Promise<void> {
  const { state, solve } = applyInteraction(whatIf, event, facts);
  whatIf = state;
  repaintSelection();
  if (solve) await runSolve(solve);
}

function repaintSelection(): void {
  const priorityHost = document.getElementById("priority");
  const pathHost = document.getElementById("path");
  if (priorityHost) renderPriority(priorityHost);
  if (pathHost) renderPath(pathHost);
}

// ---------------------------------------------------------------------------
// scenario matrix

async function renderScenario(host: HTMLElement, activityId: string): Promise<void> {
  const detail = await client.activityDetail(activityId);
  let scenario = null;
  try {
    scenario = await client.scenario(activityId);
  } catch {
    scenario = null; // zero-group activities have no classification
  }
  const matrix = buildScenarioMatrix(detail, scenario);
  clear(host);
  host.appendChild(
    el("h3", undefined, `${detail.activity.name} scenario: ${matrix.scenario ?? "no criteria data"}`),
  );
  const table = el("table", "matrix");
  const head = el("tr");
  head.appendChild(el("th", undefined, "method"));
  for (const column of matrix.columns) head.appendChild(el("th", undefined, column));
  table.appendChild(head);
  for (const row of matrix.rows) {
    const tr = el("tr");
    tr.appendChild(el("td", undefined, row.methodName));
    for (const mark of row.marks) tr.appendChild(el("td", "mark", mark ? "x" : ""));
    table.appendChild(tr);
  }
  host.appendChild(table);
}

// ---------------------------------------------------------------------------
// session board

async function refreshBoard(host: HTMLElement): Promise<void> {
  if (!SESSION_ID) {
    clear(host).appendChild(el("p", undefined, "no session selected (add ?session=<id>)"));
    return;
  }
  let snapshot: SessionSnapshot;
  try {
    snapshot = await client.session(SESSION_ID);
  } catch (error) {
    const message = error instanceof ApiError ? error.message : String(error);
    clear(host).appendChild(el("p", "banner-error", message));
    return;
  }
  let checklist: ChecklistResult | null = null;
  if (snapshot.phase_state.phase === "local_analysis") {
    checklist = await client.checklist(SESSION_ID);
  }
  const board = buildSessionBoard(snapshot, checklist);
  if (board.kind === "refetch") return refreshBoard(host); // versions moved between the two reads
  clear(host);
  host.appendChild(el("h3", undefined, board.banner));
  if (board.checklist.length) {
    const list = el("ul", "checklist");
    for (const item of board.checklist) {
      const li = el("li", item.passed ? "pass" : "fail", `${item.label}: ${item.evidence}`);
      list.appendChild(li);
    }
    host.appendChild(list);
  }
  for (const increment of board.increments) {
    const section = el("div", "increment");
    section.appendChild(
      el("h4", undefined, `${increment.label} (iteration ${increment.iteration})`),
    );
    for (const card of increment.cards) {
      const div = el("div", "card");
      div.appendChild(el("p", undefined, `${card.id}: ${card.text} [${card.kind}]`));
      const chips = el("p", "chips");
      for (const chip of card.chips) {
        chips.appendChild(el("span", `chip ${chip.status}`, `${chip.attribute}:${chip.status}`));
      }
      div.appendChild(chips);
      section.appendChild(div);
    }
    host.appendChild(section);
  }
  host.appendChild(el("p", undefined, `open conflicts: ${board.openConflicts}`));
  const advance = el("button", undefined, "advance");
  advance.disabled = !board.advanceEnabled;
  advance.addEventListener("click", async () => {
    try {
      await client.advance(SESSION_ID);
    } catch (error) {
      if (error instanceof ApiError) alert(`${error.code}: ${error.message}`);
    }
    await refreshBoard(host);
  });
  host.appendChild(advance);
}

// ---------------------------------------------------------------------------
// boot

async function boot(): Promise<void> {
  const summary = await client.kbSummary();
  const activities = await client.activities();
  facts = kbFacts(summary.criteria.map((c) => c.id), activities);
  const header = document.getElementById("kb-summary");
  if (header) {
    header.textContent = `catalog ${summary.version}: ${activities.length} activities`;
  }
  repaintSelection();
  await interact({ kind: "reorder_priority", priority: [...whatIf.priority] });
  const scenarioHost = document.getElementById("scenario");
  if (scenarioHost) await renderScenario(scenarioHost, "risk_analysis");
  const boardHost = document.getElementById("board");
  if (boardHost) {
    await refreshBoard(boardHost);
    poll(() => refreshBoard(boardHost));
  }
}

void boot();
