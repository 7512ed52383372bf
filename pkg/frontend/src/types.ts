// Envelope shapes mirroring the service's JSON schema (schema_version 1).

export interface CodeBlockData {
  framework_tag: string;
  source_text: string;
  template_id: string;
}

export interface ComputeOffer {
  available: boolean;
  compute_token: string | null;
  reason: string | null;
}

export interface Provenance {
  intent: string;
  params: Record<string, unknown>;
  engine_version: string;
  seed: number | null;
}

export interface AnswerEnvelope {
  schema_version: string;
  kind: "answer";
  session_id: string;
  intent: string;
  text: string;
  diagram: string | null;
  final_state: string | null;
  code: CodeBlockData | null;
  compute: ComputeOffer | null;
  provenance: Provenance | null;
}

export interface ConfirmationEnvelope {
  schema_version: string;
  kind: "confirmation";
  session_id: string;
  intent: string;
  gate: string | null;
  restatement: string;
  params: Record<string, unknown>;
  missing_fields: string[];
  assumed_fields: string[];
  options: string[];
}

export interface SolveEnvelope {
  schema_version: string;
  kind: "solve";
  session_id: string;
  intent: string;
  text: string;
  solution: Record<string, unknown>;
  result: { seed: number; evaluations: number; objective: number };
  provenance: Provenance;
}

export interface AckEnvelope {
  schema_version: string;
  kind: "ack";
  receipt_id?: string;
  retained_questions?: number;
}

export type ChatReply = AnswerEnvelope | ConfirmationEnvelope;

export interface ApiError {
  status: number;
  detail: unknown;
}
