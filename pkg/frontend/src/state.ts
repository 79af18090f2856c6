/** View state and its pure update functions.
 *
 * The UI is a function of server state plus local drafts: replaying the
 * same API responses yields the same state, and plan cards always keep
 * the server's ranking order (the client never re-sorts).
 */

import type { ConstraintDoc, PlanDoc, ReportDoc, SessionDoc } from "./types.js";

export interface ConstraintNode {
  constraint: ConstraintDoc;
  /** inline API error shown as a badge on the node */
  error: string | null;
  /** optimistic node not yet acknowledged by the server */
  optimistic: boolean;
}

export interface ViewState {
  sessionId: string | null;
  hardNodes: ConstraintNode[];
  softNodes: ConstraintNode[];
  /** ranked verification reports, exactly as the server returned them */
  cards: ReportDoc[];
  plansById: Record<string, PlanDoc>;
  /** constraint whose translation awaits user confirmation */
  dialog: ConstraintDoc | null;
  feedbackDrafts: Record<string, string>;
  taskDraft: string;
  /** a verification job is running; the UI shows a spinner */
  busy: boolean;
  /** last failed job, offering a retry affordance */
  jobError: string | null;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    hardNodes: [],
    softNodes: [],
    cards: [],
    plansById: {},
    dialog: null,
    feedbackDrafts: {},
    taskDraft: "",
    busy: false,
    jobError: null,
  };
}

function node(constraint: ConstraintDoc): ConstraintNode {
  return { constraint, error: null, optimistic: false };
}

/** Rebuild constraint bins and the plan index from a session document. */
export function applySession(state: ViewState, doc: SessionDoc): ViewState {
  const plansById: Record<string, PlanDoc> = {};
  for (const plan of doc.plans) plansById[plan.id] = plan;
  return {
    ...state,
    hardNodes: doc.constraints.filter((c) => c.kind === "hard").map(node),
    softNodes: doc.constraints.filter((c) => c.kind === "soft").map(node),
    plansById,
  };
}

/** Adopt a ranked report list verbatim; order is the server's ranking. */
export function applyReports(state: ViewState, reports: ReportDoc[]): ViewState {
  return { ...state, cards: [...reports], busy: false, jobError: null };
}

export function addOptimisticNode(state: ViewState, constraint: ConstraintDoc): ViewState {
  const entry: ConstraintNode = { constraint, error: null, optimistic: true };
  if (constraint.kind === "hard") return { ...state, hardNodes: [...state.hardNodes, entry] };
  return { ...state, softNodes: [...state.softNodes, entry] };
}

export function markNodeError(state: ViewState, constraintId: string, message: string): ViewState {
  const mark = (nodes: ConstraintNode[]) =>
    nodes.map((n) => (n.constraint.id === constraintId ? { ...n, error: message } : n));
  return { ...state, hardNodes: mark(state.hardNodes), softNodes: mark(state.softNodes) };
}

export function openDialog(state: ViewState, constraint: ConstraintDoc): ViewState {
  return { ...state, dialog: constraint };
}

export function closeDialog(state: ViewState): ViewState {
  return { ...state, dialog: null };
}

export function setBusy(state: ViewState, busy: boolean): ViewState {
  return { ...state, busy, jobError: busy ? null : state.jobError };
}

export function setJobError(state: ViewState, message: string): ViewState {
  return { ...state, busy: false, jobError: message };
}

export function setFeedbackDraft(state: ViewState, planId: string, text: string): ViewState {
  return { ...state, feedbackDrafts: { ...state.feedbackDrafts, [planId]: text } };
}

export function setTaskDraft(state: ViewState, text: string): ViewState {
  return { ...state, taskDraft: text };
}
