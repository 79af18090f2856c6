/** Wire types mirroring the service's HTTP/JSON v1 contract. */

export type ConstraintKind = "hard" | "soft";
export type ConstraintStatus = "pending" | "confirmed" | "rejected";

export interface ConstraintDoc {
  id: string;
  kind: ConstraintKind;
  nl_text: string;
  ltl: string | null;
  property: string | null;
  back_translation: string | null;
  status: ConstraintStatus;
}

export interface PlanStepDoc {
  index: number;
  description: string;
  assignments: Record<string, boolean>;
}

export interface PlanDoc {
  id: string;
  title: string;
  raw_text: string;
  steps: PlanStepDoc[];
  model: string | null;
}

export interface ViolationDoc {
  constraint_id: string;
  nl_text: string;
  witness_index: number | null;
}

export interface SoftDoc {
  rating: number;
  explanation: string;
}

export interface ReportDoc {
  plan_id: string;
  valid: boolean;
  violations: ViolationDoc[];
  satisfied: string[];
  soft: SoftDoc | null;
}

export interface SessionDoc {
  version: number;
  constraints: ConstraintDoc[];
  plans: PlanDoc[];
  verifications: unknown[];
  feedback: unknown[];
  events: unknown[];
}

export interface JobDoc {
  status: "pending" | "done" | "error";
  result?: ReportDoc[];
  error?: string;
}
