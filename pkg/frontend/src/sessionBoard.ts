// View model for the workflow session board: phase banner, exit checklist,
// requirement cards grouped by increment.

import type { ChecklistResult, SessionSnapshot } from "./types.js";

export interface ChecklistRow {
  id: string;
  label: string;
  passed: boolean;
  evidence: string;
}

export interface VerificationChip {
  attribute: string;
  status: string;
  scope: string;
}

export interface RequirementCard {
  id: string;
  text: string;
  kind: string;
  needLinks: string[];
  chips: VerificationChip[];
}

export interface IncrementGroup {
  id: string;
  label: string;
  iteration: number;
  cards: RequirementCard[];
}

export type SessionBoardModel =
  | { kind: "refetch"; reason: string }
  | {
      kind: "ready";
      banner: string;
      phase: string;
      iteration: number;
      businessCursor: string | null;
      checklist: ChecklistRow[];
      advanceEnabled: boolean;
      increments: IncrementGroup[];
      openConflicts: number;
      attested: boolean;
    };

const CHECKLIST_LABELS: Record<string, string> = {
  quality_inspected: "Quality attributes inspected",
  traced_to_needs: "Requirements traced to needs",
  stakeholder_agreement: "Stakeholder agreement",
};

function banner(snapshot: SessionSnapshot): string {
  const state = snapshot.phase_state;
  if (state.phase === "done") return "done";
  if (state.phase === "local_analysis") {
    return `local analysis, iteration ${state.local_iteration}`;
  }
  if (state.phase === "business_concerns" && state.business_cursor) {
    return `business concerns: ${state.business_cursor.replace(/_/g, " ")}`;
  }
  return state.phase.replace(/_/g, " ");
}

/**
 * Build the board from a session snapshot plus, during local analysis, the
 * matching checklist evaluation. The pair must describe the same session
 * version; a mismatch means one of the two reads is outdated, so the caller
 * gets a refetch signal instead of a render.
 */
export function buildSessionBoard(
  snapshot: SessionSnapshot,
  checklist: ChecklistResult | null,
): SessionBoardModel {
  if (checklist && checklist.session_version !== snapshot.version) {
    return {
      kind: "refetch",
      reason: `checklist is for version ${checklist.session_version}, snapshot is ${snapshot.version}`,
    };
  }
  const phase = snapshot.phase_state.phase;
  if (phase === "local_analysis" && !checklist) {
    return { kind: "refetch", reason: "local analysis needs a checklist evaluation" };
  }

  const rows: ChecklistRow[] = checklist
    ? Object.entries(checklist.items).map(([id, item]) => ({
        id,
        label: CHECKLIST_LABELS[id] ?? id.replace(/_/g, " "),
        passed: item.passed,
        evidence: item.evidence,
      }))
    : [];

  const openConflicts = snapshot.conflicts.filter((c) => c.status === "open").length;
  // In local analysis the checklist verdict decides; later phases leave the
  // decision to the server's own gates, so the button stays live until done.
  const advanceEnabled =
    phase === "done" ? false : phase === "local_analysis" ? (checklist?.passed ?? false) : true;

  const increments: IncrementGroup[] = snapshot.increments.map((inc) => ({
    id: inc.id,
    label: inc.label,
    iteration: inc.iteration,
    cards: inc.requirement_ids.flatMap((rid) => {
      const req = snapshot.requirements.find((r) => r.id === rid);
      if (!req) return [];
      return [
        {
          id: req.id,
          text: req.text,
          kind: req.kind,
          needLinks: [...req.need_links],
          chips: Object.entries(req.verification).map(([attribute, mark]) => ({
            attribute,
            status: mark.status,
            scope: mark.scope,
          })),
        },
      ];
    }),
  }));

  return {
    kind: "ready",
    banner: banner(snapshot),
    phase,
    iteration: snapshot.phase_state.local_iteration,
    businessCursor: snapshot.phase_state.business_cursor,
    checklist: rows,
    advanceEnabled,
    increments,
    openConflicts,
    attested: snapshot.attested,
  };
}
