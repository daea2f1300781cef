import { describe, expect, it } from "vitest";

import { buildSessionBoard } from "../src/sessionBoard.js";
import { buildScenarioMatrix } from "../src/scenarioView.js";
import {
  checklistFail,
  riskActivityDetail,
  riskScenario,
  sessionSnapshot,
} from "./fixtures.js";

describe("buildSessionBoard", () => {
  it("mirrors the checklist fixture as exactly three items", () => {
    const board = buildSessionBoard(sessionSnapshot, checklistFail);
    if (board.kind !== "ready") throw new Error("expected ready board");
    expect(board.checklist).toHaveLength(3);
    expect(board.checklist).toEqual([
      {
        id: "quality_inspected",
        label: "Quality attributes inspected",
        passed: false,
        evidence: checklistFail.items["quality_inspected"]!.evidence,
      },
      {
        id: "traced_to_needs",
        label: "Requirements traced to needs",
        passed: false,
        evidence: "requirements without needs: r2; needs without requirements: n2",
      },
      {
        id: "stakeholder_agreement",
        label: "Stakeholder agreement",
        passed: false,
        evidence: "no stakeholder attestation",
      },
    ]);
  });

  it("renders the failing trace item with the offending ids in its evidence", () => {
    const board = buildSessionBoard(sessionSnapshot, checklistFail);
    if (board.kind !== "ready") throw new Error("expected ready board");
    const trace = board.checklist.find((item) => item.id === "traced_to_needs");
    expect(trace?.passed).toBe(false);
    expect(trace?.evidence).toContain("r2");
    expect(trace?.evidence).toContain("n2");
  });

  it("keeps the advance button disabled while the local checklist fails", () => {
    const board = buildSessionBoard(sessionSnapshot, checklistFail);
    if (board.kind !== "ready") throw new Error("expected ready board");
    expect(board.advanceEnabled).toBe(false);
    expect(board.banner).toBe("local analysis, iteration 1");
  });

  it("enables advance once the checklist passes", () => {
    const passing = structuredClone(checklistFail);
    passing.passed = true;
    for (const item of Object.values(passing.items)) item.passed = true;
    const board = buildSessionBoard(sessionSnapshot, passing);
    if (board.kind !== "ready") throw new Error("expected ready board");
    expect(board.advanceEnabled).toBe(true);
  });

  it("groups requirement cards by increment with verification chips", () => {
    const board = buildSessionBoard(sessionSnapshot, checklistFail);
    if (board.kind !== "ready") throw new Error("expected ready board");
    expect(board.increments).toHaveLength(1);
    const increment = board.increments[0]!;
    expect(increment.label).toBe("core");
    expect(increment.cards.map((c) => c.id)).toEqual(["r1", "r2"]);
    const first = increment.cards[0]!;
    expect(first.needLinks).toEqual(["n1"]);
    expect(first.chips).toHaveLength(6);
    expect(first.chips[0]).toEqual({
      attribute: "non_ambiguity",
      status: "unverified",
      scope: "local",
    });
  });

  it("signals refetch on a checklist/snapshot version mismatch, with no render", () => {
    const staleChecklist = structuredClone(checklistFail);
    staleChecklist.session_version = sessionSnapshot.version - 1;
    const board = buildSessionBoard(sessionSnapshot, staleChecklist);
    expect(board).toEqual({
      kind: "refetch",
      reason: `checklist is for version ${sessionSnapshot.version - 1}, snapshot is ${sessionSnapshot.version}`,
    });
  });

  it("requires a checklist while the session is in local analysis", () => {
    const board = buildSessionBoard(sessionSnapshot, null);
    expect(board.kind).toBe("refetch");
  });

  it("shows the done banner with advance disabled and no checklist", () => {
    const done = structuredClone(sessionSnapshot);
    done.phase_state = { phase: "done", local_iteration: 2, business_cursor: null };
    const board = buildSessionBoard(done, null);
    if (board.kind !== "ready") throw new Error("expected ready board");
    expect(board.banner).toBe("done");
    expect(board.advanceEnabled).toBe(false);
    expect(board.checklist).toEqual([]);
  });

  it("names the business cursor in the banner and leaves advance to the server", () => {
    const business = structuredClone(sessionSnapshot);
    business.phase_state = {
      phase: "business_concerns",
      local_iteration: 2,
      business_cursor: "market_analysis",
    };
    const board = buildSessionBoard(business, null);
    if (board.kind !== "ready") throw new Error("expected ready board");
    expect(board.banner).toBe("business concerns: market analysis");
    expect(board.advanceEnabled).toBe(true);
  });

  it("counts only open conflicts", () => {
    const withConflicts = structuredClone(sessionSnapshot);
    withConflicts.conflicts = [
      { id: "c1", requirement_ids: ["r1"], description: "x", status: "open", resolution: null },
      {
        id: "c2",
        requirement_ids: ["r2"],
        description: "y",
        status: "resolved",
        resolution: "settled",
      },
    ];
    const board = buildSessionBoard(withConflicts, checklistFail);
    if (board.kind !== "ready") throw new Error("expected ready board");
    expect(board.openConflicts).toBe(1);
  });

  it("is pure: same inputs build deep-equal boards", () => {
    expect(buildSessionBoard(sessionSnapshot, checklistFail)).toEqual(
      buildSessionBoard(sessionSnapshot, checklistFail),
    );
  });
});

describe("buildScenarioMatrix", () => {
  it("marks group membership per criterion column", () => {
    const matrix = buildScenarioMatrix(riskActivityDetail, riskScenario);
    expect(matrix.columns).toEqual(["personnel", "time", "cost", "completeness"]);
    expect(matrix.scenario).toBe("normal");
    const byId = new Map(matrix.rows.map((r) => [r.methodId, r.marks]));
    expect(byId.get("monte_carlo_simulation")).toEqual([true, true, false, true]);
    expect(byId.get("fmeca")).toEqual([true, false, true, false]);
    expect(byId.get("criticality_analysis")).toEqual([false, true, true, false]);
    expect(byId.get("fault_tree_analysis")).toEqual([false, false, false, true]);
    expect(byId.get("event_tree_analysis")).toEqual([false, false, false, true]);
    expect(byId.get("risk_reduction_leverage")).toEqual([false, false, false, false]);
  });

  it("renders every applicable method as a row in roster order", () => {
    const matrix = buildScenarioMatrix(riskActivityDetail, null);
    expect(matrix.rows.map((r) => r.methodId)).toEqual(
      riskActivityDetail.activity.applicable_methods,
    );
    expect(matrix.scenario).toBeNull();
  });
});
