// Thin fetch wrapper over the service API. One base-URL setting, the error
// envelope surfaced as a typed exception, no business rules.

import type {
  ActivityDetail,
  ActivitySummary,
  ChecklistResult,
  ErrorEnvelope,
  MinimizeRequestPayload,
  PathResponse,
  ScenarioPayload,
  SelectionRequestPayload,
  SessionSnapshot,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly details: Record<string, unknown>;

  constructor(status: number, envelope: ErrorEnvelope) {
    super(envelope.message);
    this.name = "ApiError";
    this.status = status;
    this.code = envelope.code;
    this.details = envelope.details ?? {};
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(`${base}${path}`, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = (await response.json()) as unknown;
  if (!response.ok) {
    const envelope = body as ErrorEnvelope;
    throw new ApiError(response.status, {
      code: envelope?.code ?? "unknown",
      message: envelope?.message ?? `request failed with ${response.status}`,
      details: envelope?.details ?? {},
    });
  }
  return body as T;
}

export class ReqPathClient {
  constructor(private readonly base: string) {}

  kbSummary(): Promise<{
    version: string;
    criteria: { id: string; name: string; description: string }[];
    counts: Record<string, number>;
  }> {
    return request(this.base, "/kb");
  }

  activities(): Promise<ActivitySummary[]> {
    return request(this.base, "/kb/activities");
  }

  activityDetail(id: string): Promise<ActivityDetail> {
    return request(this.base, `/kb/activities/${id}`);
  }

  scenario(id: string): Promise<ScenarioPayload> {
    return request(this.base, `/kb/activities/${id}/scenario`);
  }

  selectPath(body: SelectionRequestPayload): Promise<PathResponse> {
    return request(this.base, "/select/path", { method: "POST", body: JSON.stringify(body) });
  }

  selectMinimize(body: MinimizeRequestPayload): Promise<unknown> {
    return request(this.base, "/select/minimize", { method: "POST", body: JSON.stringify(body) });
  }

  createSession(id: string, needs: { id: string; statement: string }[]): Promise<SessionSnapshot> {
    return request(this.base, "/sessions", {
      method: "POST",
      body: JSON.stringify({ id, needs }),
    });
  }

  session(id: string): Promise<SessionSnapshot> {
    return request(this.base, `/sessions/${id}`);
  }

  checklist(id: string): Promise<ChecklistResult> {
    return request(this.base, `/sessions/${id}/checklist`);
  }

  advance(id: string): Promise<unknown> {
    return request(this.base, `/sessions/${id}/advance`, { method: "POST", body: "{}" });
  }

  recordRequirement(
    id: string,
    body: { increment: string; text: string; kind: string },
  ): Promise<unknown> {
    return request(this.base, `/sessions/${id}/requirements`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  linkRationale(
    id: string,
    body: { requirement: string; needs: string[]; rationale?: string },
  ): Promise<unknown> {
    return request(this.base, `/sessions/${id}/rationale`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  verify(
    id: string,
    body: { requirement: string; attribute: string; status: string; scope?: string },
  ): Promise<unknown> {
    return request(this.base, `/sessions/${id}/verification`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  attest(id: string, attested: boolean): Promise<unknown> {
    return request(this.base, `/sessions/${id}/attestation`, {
      method: "POST",
      body: JSON.stringify({ attested }),
    });
  }
}

/** Run `tick` every `intervalMs` until the returned stop function is called. */
export function poll(tick: () => Promise<void>, intervalMs = 2000): () => void {
  let stopped = false;
  let timer: ReturnType<typeof setTimeout> | null = null;
  const loop = async () => {
    if (stopped) return;
    try {
      await tick();
    } finally {
      if (!stopped) timer = setTimeout(loop, intervalMs);
    }
  };
  void loop();
  return () => {
    stopped = true;
    if (timer) clearTimeout(timer);
  };
}
