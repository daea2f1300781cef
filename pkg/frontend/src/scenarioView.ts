// Criteria membership matrix for one activity: methods down, criteria across,
// a mark where the method belongs to that criterion's group.

import type { ActivityDetail, ScenarioPayload } from "./types.js";

export interface MatrixRow {
  methodId: string;
  methodName: string;
  marks: boolean[];
}

export interface ScenarioMatrix {
  activity: string;
  columns: string[];
  rows: MatrixRow[];
  scenario: ScenarioPayload["value"] | null;
  warnings: string[];
}

export function buildScenarioMatrix(
  detail: ActivityDetail,
  scenario: ScenarioPayload | null,
): ScenarioMatrix {
  const columns = detail.groups.map((g) => g.criterion);
  const memberSets = detail.groups.map((g) => new Set(g.members));
  const names = new Map(detail.methods.map((m) => [m.id, m.name]));
  const rows = detail.activity.applicable_methods.map((mid) => ({
    methodId: mid,
    methodName: names.get(mid) ?? mid,
    marks: memberSets.map((members) => members.has(mid)),
  }));
  return {
    activity: detail.activity.id,
    columns,
    rows,
    scenario: scenario?.value ?? null,
    warnings: scenario ? [...scenario.warnings] : [],
  };
}
