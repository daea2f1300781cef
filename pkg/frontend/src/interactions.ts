// What-if state for the selection panel. Every input change emits the next
// solve request; responses are matched back by request id, latest wins.

import type {
  ActivitySummary,
  MinimizeRequestPayload,
  SelectionRequestPayload,
} from "./types.js";

export type SolveMode = "recommend" | "economize";

export interface WhatIfState {
  activities: string[];
  priority: string[]; // highest priority first
  pinned: Record<string, string>;
  mode: SolveMode;
  stale: boolean;
  inflightRequestId: number | null;
  nextRequestId: number;
  notice: string | null; // local rejection message, cleared on the next accepted event
}

export type Interaction =
  | { kind: "reorder_priority"; priority: string[] }
  | { kind: "pin"; activity: string; method: string }
  | { kind: "unpin"; activity: string }
  | { kind: "toggle_mode" };

export type SolveRequest =
  | { endpoint: "path"; requestId: number; body: SelectionRequestPayload }
  | { endpoint: "minimize"; requestId: number; body: MinimizeRequestPayload };

export interface InteractionResult {
  state: WhatIfState;
  solve: SolveRequest | null;
}

/** Applicability facts the pin pre-check needs, taken from the fetched KB. */
export interface KbFacts {
  criteria: string[];
  applicable: Record<string, string[]>;
}

export function kbFacts(criteria: string[], activities: ActivitySummary[]): KbFacts {
  const applicable: Record<string, string[]> = {};
  for (const a of activities) applicable[a.id] = [...a.applicable_methods];
  return { criteria: [...criteria], applicable };
}

export function initialState(activities: string[], priority: string[]): WhatIfState {
  return {
    activities: [...activities],
    priority: [...priority],
    pinned: {},
    mode: "recommend",
    stale: false,
    inflightRequestId: null,
    nextRequestId: 1,
    notice: null,
  };
}

function reject(state: WhatIfState, message: string): InteractionResult {
  return { state: { ...state, notice: message }, solve: null };
}

function solveBody(state: WhatIfState): SelectionRequestPayload | MinimizeRequestPayload {
  if (state.mode === "recommend") {
    return {
      activities: [...state.activities],
      priority: [...state.priority],
      pinned: { ...state.pinned },
      tie_break: "declaration_order",
    };
  }
  // economize: one shared criterion, the current top priority
  return { activities: [...state.activities], criterion: state.priority[0]!, mode: "auto" };
}

function emit(state: WhatIfState): InteractionResult {
  const requestId = state.nextRequestId;
  const next: WhatIfState = {
    ...state,
    stale: true,
    inflightRequestId: requestId,
    nextRequestId: requestId + 1,
    notice: null,
  };
  const body = solveBody(next);
  const solve: SolveRequest =
    next.mode === "recommend"
      ? { endpoint: "path", requestId, body: body as SelectionRequestPayload }
      : { endpoint: "minimize", requestId, body: body as MinimizeRequestPayload };
  return { state: next, solve };
}

/**
 * Fold one user interaction into the state. Accepted input changes return the
 * solve request to send; locally rejected ones return the unchanged inputs
 * with a notice and no request. The pre-checks mirror server rules, they
 * never replace them.
 */
export function applyInteraction(
  state: WhatIfState,
  event: Interaction,
  kb: KbFacts,
): InteractionResult {
  switch (event.kind) {
    case "reorder_priority": {
      const unknown = event.priority.filter((c) => !kb.criteria.includes(c));
      if (unknown.length) return reject(state, `unknown criteria: ${unknown.join(", ")}`);
      if (new Set(event.priority).size !== event.priority.length) {
        return reject(state, "duplicate criteria in priority order");
      }
      return emit({ ...state, priority: [...event.priority] });
    }
    case "pin": {
      if (!state.activities.includes(event.activity)) {
        return reject(state, `activity ${event.activity} is not part of the path`);
      }
      const applicable = kb.applicable[event.activity] ?? [];
      if (!applicable.includes(event.method)) {
        return reject(state, `${event.method} is not applicable to ${event.activity}`);
      }
      return emit({ ...state, pinned: { ...state.pinned, [event.activity]: event.method } });
    }
    case "unpin": {
      if (!(event.activity in state.pinned)) return { state, solve: null };
      const pinned = { ...state.pinned };
      delete pinned[event.activity];
      return emit({ ...state, pinned });
    }
    case "toggle_mode": {
      const mode: SolveMode = state.mode === "recommend" ? "economize" : "recommend";
      if (mode === "economize" && state.priority.length === 0) {
        return reject(state, "economize needs a top-priority criterion; reorder first");
      }
      return emit({ ...state, mode });
    }
  }
}

/**
 * Note the arrival of a solve response. Only the response matching the
 * in-flight request id clears the stale flag; anything older is superseded
 * and must be dropped by the caller.
 */
export function applySolveResponse(
  state: WhatIfState,
  requestId: number,
): { state: WhatIfState; accepted: boolean } {
  if (state.inflightRequestId !== requestId) return { state, accepted: false };
  return { state: { ...state, stale: false, inflightRequestId: null }, accepted: true };
}
