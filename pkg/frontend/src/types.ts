// Payload shapes of the HTTP service, limited to the fields the UI consumes.

export interface PhaseTag {
  phase: string;
  rank: number;
}

export interface ActivitySummary {
  id: string;
  name: string;
  objective: string;
  phase: PhaseTag;
  applicable_methods: string[];
}

export interface MethodSummary {
  id: string;
  name: string;
  description: string;
  strengths: string[];
  weaknesses: string[];
  citations: string[];
}

export interface CriteriaGroup {
  activity: string;
  criterion: string;
  members: string[];
}

export interface ActivityDetail {
  activity: ActivitySummary;
  methods: MethodSummary[];
  groups: CriteriaGroup[];
}

export interface ScenarioPayload {
  activity: string;
  value: "ideal" | "normal" | "worst";
  warnings: string[];
}

// Exact body of POST /select/path; also echoed back as `request`.
export interface SelectionRequestPayload {
  activities: string[];
  priority: string[];
  pinned: Record<string, string>;
  tie_break: "declaration_order";
}

export interface MinimizeRequestPayload {
  activities: string[];
  criterion: string;
  mode: "exact" | "greedy" | "auto";
}

export interface PathChoice {
  activity: string;
  activity_name: string;
  method: string;
  method_name: string;
  coverage: { satisfied: string[] };
  tied_alternatives: string[];
}

export interface PathResponse {
  request: SelectionRequestPayload;
  path: {
    choices: PathChoice[];
    distinct_method_count: number;
  };
  explanation: unknown[];
}

export interface VerificationMark {
  status: "unverified" | "partial" | "verified" | "failed";
  scope: "local" | "global";
  note: string;
}

export interface RequirementAttributes {
  risk: { level: string; category: string } | null;
  customer_importance: number | null;
  effort: number | null;
}

export interface RequirementPayload {
  id: string;
  text: string;
  kind: "functional" | "non_functional";
  parent: string | null;
  attributes: RequirementAttributes;
  rationale: string | null;
  need_links: string[];
  models: string[];
  verification: Record<string, VerificationMark>;
}

export interface IncrementPayload {
  id: string;
  label: string;
  iteration: number;
  requirement_ids: string[];
}

export interface ConflictPayload {
  id: string;
  requirement_ids: string[];
  description: string;
  status: "open" | "resolved";
  resolution: string | null;
}

export interface NeedPayload {
  id: string;
  statement: string;
  source: string;
}

export interface ModelArtifactPayload {
  id: string;
  kind: string;
  uri_or_blob: string;
}

export interface MethodAssignmentPayload {
  activity: string;
  method: string;
  at: string;
}

export interface SessionSnapshot {
  id: string;
  kb_version: string;
  version: number;
  phase_state: {
    phase: string;
    local_iteration: number;
    business_cursor: string | null;
  };
  needs: NeedPayload[];
  increments: IncrementPayload[];
  requirements: RequirementPayload[];
  conflicts: ConflictPayload[];
  artifacts: ModelArtifactPayload[];
  method_log: MethodAssignmentPayload[];
  attested: boolean;
  attestation_note: string;
  global_validation_requested: boolean;
}

export interface ChecklistItemPayload {
  passed: boolean;
  evidence: string;
}

export interface ChecklistResult {
  items: Record<string, ChecklistItemPayload>;
  passed: boolean;
  session_version: number;
  phase: string;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  details: Record<string, unknown>;
}
