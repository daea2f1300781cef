// View model for the recommended-path table. Pure: same payload, same model.

export interface PathRow {
  activity: string;
  activityName: string;
  method: string;
  methodName: string;
  badges: string[];
  tied: string[];
  pinned: boolean;
}

export type PathViewModel =
  | { kind: "ready"; rows: PathRow[]; distinctCount: number; stale: false }
  | { kind: "error"; message: string };

function isStringArray(value: unknown): value is string[] {
  return Array.isArray(value) && value.every((v) => typeof v === "string");
}

function asRecord(value: unknown): Record<string, unknown> | null {
  return typeof value === "object" && value !== null && !Array.isArray(value)
    ? (value as Record<string, unknown>)
    : null;
}

/**
 * Build the path table from a solve response. A malformed payload yields the
 * error banner state and nothing else; there is no partial render.
 */
export function buildPathView(payload: unknown): PathViewModel {
  const body = asRecord(payload);
  const path = body ? asRecord(body["path"]) : null;
  const request = body ? asRecord(body["request"]) : null;
  if (!body || !path || !request) {
    return { kind: "error", message: "malformed solve response" };
  }
  const pinned = asRecord(request["pinned"]) ?? {};
  const choices = path["choices"];
  const distinct = path["distinct_method_count"];
  if (!Array.isArray(choices) || typeof distinct !== "number") {
    return { kind: "error", message: "malformed solve response" };
  }

  const rows: PathRow[] = [];
  for (const raw of choices) {
    const choice = asRecord(raw);
    const coverage = choice ? asRecord(choice["coverage"]) : null;
    if (
      !choice ||
      !coverage ||
      typeof choice["activity"] !== "string" ||
      typeof choice["activity_name"] !== "string" ||
      typeof choice["method"] !== "string" ||
      typeof choice["method_name"] !== "string" ||
      !isStringArray(coverage["satisfied"]) ||
      !isStringArray(choice["tied_alternatives"])
    ) {
      return { kind: "error", message: "malformed solve response" };
    }
    rows.push({
      activity: choice["activity"],
      activityName: choice["activity_name"],
      method: choice["method"],
      methodName: choice["method_name"],
      badges: [...coverage["satisfied"]],
      tied: [...choice["tied_alternatives"]],
      pinned: choice["activity"] in pinned,
    });
  }
  return { kind: "ready", rows, distinctCount: distinct, stale: false };
}

export function describeRow(row: PathRow): string {
  const badges = row.badges.length ? row.badges.join(", ") : "none";
  const tied = row.tied.length ? ` (tied: ${row.tied.join(", ")})` : "";
  const pin = row.pinned ? " [pinned]" : "";
  return `${row.activityName}: ${row.methodName}${pin} satisfies ${badges}${tied}`;
}
